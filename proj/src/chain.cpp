#include "thermochain/chain.hpp"

#include "thermochain/spin_ops.hpp"

namespace thermochain {

namespace {

void validate_geometry(int groups, int group_size) {
  if (groups < 1 || group_size < 1)
    throw std::invalid_argument("chain: N_G and n must be >= 1");
}

}  // namespace

ChainSpec build_chain(Model model, const HarmonicParams& p, int groups, int group_size) {
  if (model != Model::harmonic)
    throw std::invalid_argument("build_chain: harmonic parameters require the harmonic model");
  validate_geometry(groups, group_size);
  if (p.mass <= 0 || p.omega0 <= 0 || p.spacing <= 0 || p.debye < 0)
    throw std::invalid_argument("build_chain: harmonic parameters must be positive");
  ChainSpec spec;
  spec.model = model;
  spec.harmonic = p;
  spec.groups = groups;
  spec.group_size = group_size;
  return spec;
}

ChainSpec build_chain(Model model, const IsingParams& p, int groups, int group_size) {
  if (model != Model::ising)
    throw std::invalid_argument("build_chain: Ising parameters require the Ising model");
  validate_geometry(groups, group_size);
  if (p.field <= 0)
    throw std::invalid_argument("build_chain: transverse field B must be positive");
  ChainSpec spec;
  spec.model = model;
  spec.ising = p;
  spec.groups = groups;
  spec.group_size = group_size;
  return spec;
}

Eigen::MatrixXd stiffness_matrix(const ChainSpec& spec) {
  if (spec.model != Model::harmonic)
    throw std::invalid_argument("stiffness_matrix: harmonic chains only");
  const int n = spec.sites();
  if (n > dense_oscillator_cap)
    throw capability_error("stiffness_matrix: chain exceeds the oscillator cap");
  const double w2 = spec.harmonic.omega0 * spec.harmonic.omega0;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    k(i, i) = 2.0 * w2;
    const int j = (i + 1) % n;
    if (j != i) {
      k(i, j) -= w2;
      k(j, i) -= w2;
    }
  }
  return k;
}

namespace {

Eigen::MatrixXd spin_hamiltonian(const IsingParams& p, int sites, bool periodic) {
  const int d = spin::dimension(sites);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    double diag = 0.0;
    for (int s = 0; s < sites; ++s) diag -= p.field * spin::sz_value(i, s);
    h(i, i) = diag;
  }
  const int nb = periodic ? sites : sites - 1;
  for (int b = 0; b < nb; ++b)
    h += -p.coupling * spin::pair_flip(b, (b + 1) % sites, sites);
  return h;
}

}  // namespace

Eigen::MatrixXd dense_hamiltonian(const ChainSpec& spec) {
  if (spec.model == Model::harmonic) return stiffness_matrix(spec);
  const int n = spec.sites();
  if (n > dense_spin_cap)
    throw capability_error("dense_hamiltonian: chain exceeds the spin cap");
  const bool periodic = n > 1;
  return spin_hamiltonian(spec.ising, n, periodic);
}

PartitionedHamiltonian partition(const ChainSpec& spec) {
  PartitionedHamiltonian part;
  part.spec = spec;
  const int n = spec.group_size;
  const int sites = spec.sites();
  part.bonds.reserve(spec.groups);
  for (int mu = 0; mu < spec.groups; ++mu) {
    Bond b;
    b.left_site = (mu + 1) * n - 1;
    b.right_site = ((mu + 1) * n) % sites;
    part.bonds.push_back(b);
  }
  return part;
}

Eigen::MatrixXd PartitionedHamiltonian::dense_group(int mu) const {
  const int n = spec.group_size;
  if (spec.model == Model::ising) {
    if (n > dense_spin_cap) throw capability_error("dense_group: group too large");
    return spin_hamiltonian(spec.ising, n, /*periodic=*/false);
  }
  if (n > dense_oscillator_cap) throw capability_error("dense_group: group too large");
  const double w2 = spec.harmonic.omega0 * spec.harmonic.omega0;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    k(i, i) = 2.0 * w2;
    if (i + 1 < n) {
      k(i, i + 1) = -w2;
      k(i + 1, i) = -w2;
    }
  }
  (void)mu;  // groups are identical; mu kept for interface symmetry
  return k;
}

Eigen::MatrixXd PartitionedHamiltonian::dense_bond(int mu) const {
  const Bond& b = bonds.at(mu);
  if (spec.model == Model::ising) {
    const int sites = spec.sites();
    if (sites > dense_spin_cap) throw capability_error("dense_bond: chain too large");
    if (b.left_site == b.right_site)
      return Eigen::MatrixXd::Zero(spin::dimension(sites), spin::dimension(sites));
    return -spec.ising.coupling * spin::pair_flip(b.left_site, b.right_site, sites);
  }
  const int sites = spec.sites();
  if (sites > dense_oscillator_cap) throw capability_error("dense_bond: chain too large");
  const double w2 = spec.harmonic.omega0 * spec.harmonic.omega0;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(sites, sites);
  if (b.left_site != b.right_site) {
    k(b.left_site, b.right_site) -= w2;
    k(b.right_site, b.left_site) -= w2;
  }
  return k;
}

Eigen::MatrixXd PartitionedHamiltonian::dense_interaction() const {
  Eigen::MatrixXd sum = dense_bond(0);
  for (int mu = 1; mu < spec.groups; ++mu) sum += dense_bond(mu);
  return sum;
}

Eigen::MatrixXd PartitionedHamiltonian::dense_isolated_groups() const {
  return dense_hamiltonian(spec) - dense_interaction();
}

}  // namespace thermochain
