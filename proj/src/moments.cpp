#include "thermochain/moments.hpp"

#include <cmath>
#include <limits>

namespace thermochain {

namespace {

double bose(double x) {  // 1 / (e^x - 1), x > 0
  return 1.0 / std::expm1(x);
}

double fermi(double x) {  // 1 / (e^x + 1)
  if (x > 0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

}  // namespace

double boundary_q2(const GroupSpectrum& s, const ProductState& st, int mu, bool last) {
  if (s.model != Model::harmonic)
    throw std::invalid_argument("boundary_q2: harmonic groups only");
  const Eigen::VectorXd& occ = st.occupations.at(mu);
  return last ? s.mean_q2_last(occ) : s.mean_q2_first(occ);
}

double boundary_sz(const GroupSpectrum& s, const ProductState& st, int mu, bool last) {
  if (s.model != Model::ising)
    throw std::invalid_argument("boundary_sz: spin groups only");
  if (st.dense_index.at(mu) >= 0) {
    const int site = last ? s.sites - 1 : 0;
    return s.dense_sz(st.dense_index[mu], site);
  }
  const Eigen::VectorXd& occ = st.occupations.at(mu);
  return last ? s.mean_sz_last(occ) : s.mean_sz_first(occ);
}

namespace {

// Mean and variance of one inter-group bond in a product state.  The bond
// mean vanishes for products of group eigenstates (oscillator parity <q> = 0;
// fermion parity <sigma^+-> = 0).
void bond_moments(const ProductState& st, const std::vector<GroupSpectrum>& spectra,
                  const PartitionedHamiltonian& part, int mu, double& mean, double& var) {
  const int ng = part.spec.groups;
  const int left = mu;
  const int right = (mu + 1) % ng;
  mean = 0.0;
  if (part.spec.model == Model::harmonic) {
    const double w2 = part.spec.harmonic.omega0 * part.spec.harmonic.omega0;
    const double q2l = boundary_q2(spectra[left], st, left, /*last=*/true);
    const double q2r = boundary_q2(spectra[right], st, right, /*last=*/false);
    var = w2 * w2 * q2l * q2r;
    return;
  }
  const double j = part.spec.ising.coupling;
  if (part.bonds[mu].left_site == part.bonds[mu].right_site) {  // single-site chain
    var = 0.0;
    return;
  }
  const double zl = boundary_sz(spectra[left], st, left, /*last=*/true);
  const double zr = boundary_sz(spectra[right], st, right, /*last=*/false);
  var = 0.5 * j * j * (1.0 + zl * zr);
}

}  // namespace

MomentSet interaction_moments(const ProductState& state,
                              const std::vector<GroupSpectrum>& spectra,
                              const PartitionedHamiltonian& part) {
  const int ng = part.spec.groups;
  if (static_cast<int>(spectra.size()) != ng || state.groups() != ng)
    throw std::invalid_argument("interaction_moments: group count mismatch");
  // With fewer than three groups the two bonds touch the same group pair and
  // parity no longer cancels the cross-bond covariances the per-bond
  // decomposition drops.
  if (ng < 3)
    throw std::invalid_argument("interaction_moments: at least three groups required");
  MomentSet ms;
  ms.bond_mean.resize(ng);
  ms.bond_variance.resize(ng);
  for (int mu = 0; mu < ng; ++mu) {
    bond_moments(state, spectra, part, mu, ms.bond_mean[mu], ms.bond_variance[mu]);
    ms.interaction_mean += ms.bond_mean[mu];
    ms.interaction_variance += ms.bond_variance[mu];
  }
  return ms;
}

GroupMoments group_moments(const ProductState& state,
                           const std::vector<GroupSpectrum>& spectra,
                           const PartitionedHamiltonian& part, int mu) {
  if (mu < 0 || mu >= part.spec.groups)
    throw std::invalid_argument("group_moments: group index out of range");
  GroupMoments gm;
  double mean = 0.0, var = 0.0;
  bond_moments(state, spectra, part, mu, mean, var);
  gm.eps = mean;
  // H_mu = (isolated group mu) + bond mu.  In a product of group eigenstates
  // the group term is sharp and its covariance with the bond carries a lone
  // <q> or <sigma^+-> factor, so the variance reduces to the bond variance.
  gm.delta2 = var;
  // Every term of the neighbour-covariance sum factorises with at least one
  // lone boundary operator; it vanishes identically in eigenstate products.
  gm.delta2_tilde = 0.0;
  return gm;
}

double group_thermal_energy(const GroupSpectrum& spectrum, double beta_eff) {
  double e = 0.0;
  if (spectrum.model == Model::harmonic) {
    if (beta_eff <= 0)
      throw std::domain_error("group_thermal_energy: oscillator groups need beta > 0");
    for (int j = 0; j < spectrum.modes.size(); ++j)
      e += spectrum.modes(j) * bose(beta_eff * spectrum.modes(j));
    return e;
  }
  for (int k = 0; k < spectrum.modes.size(); ++k)
    e += spectrum.modes(k) * fermi(beta_eff * spectrum.modes(k));
  return e;
}

double beta_for_group_energy(const GroupSpectrum& spectrum, double e_target) {
  const double scale = spectrum.modes.size() > 0 ? spectrum.modes(0) : 1.0;
  if (e_target < 0) throw std::domain_error("beta_for_group_energy: negative target");
  if (spectrum.model == Model::harmonic) {
    if (e_target == 0) return std::numeric_limits<double>::infinity();
    // e(beta) is strictly decreasing; bisect on ln(beta).
    double lo = std::log(1e-26 / scale), hi = std::log(1e6 / scale);
    if (group_thermal_energy(spectrum, std::exp(lo)) < e_target)
      throw std::domain_error("beta_for_group_energy: target beyond bracket");
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (group_thermal_energy(spectrum, std::exp(mid)) > e_target)
        lo = mid;
      else
        hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
  }
  const double top = spectrum.modes.sum();
  if (e_target > top) throw std::domain_error("beta_for_group_energy: target above spectrum");
  if (e_target == 0) return std::numeric_limits<double>::infinity();
  if (e_target == top) return -std::numeric_limits<double>::infinity();
  double lo = -1.0 / scale, hi = 1.0 / scale;  // e decreasing in beta
  while (group_thermal_energy(spectrum, lo) < e_target) lo *= 2.0;
  while (group_thermal_energy(spectrum, hi) > e_target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (group_thermal_energy(spectrum, mid) > e_target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd typical_state(const GroupSpectrum& spectrum, double e_target) {
  const int nm = static_cast<int>(spectrum.modes.size());
  Eigen::VectorXd occ = Eigen::VectorXd::Zero(nm);
  if (e_target == 0) return occ;
  const double beta_eff = beta_for_group_energy(spectrum, e_target);
  if (spectrum.model == Model::harmonic) {
    for (int j = 0; j < nm; ++j) occ(j) = bose(beta_eff * spectrum.modes(j));
    return occ;
  }
  if (std::isinf(beta_eff)) {
    if (beta_eff < 0) occ.setOnes();
    return occ;
  }
  for (int k = 0; k < nm; ++k) occ(k) = fermi(beta_eff * spectrum.modes(k));
  return occ;
}

BoundednessReport boundedness_diagnostics(const std::vector<GroupSpectrum>& spectra,
                                          const std::vector<ProductState>& sample,
                                          const PartitionedHamiltonian& part,
                                          std::optional<double> window_top) {
  if (sample.empty())
    throw std::invalid_argument("boundedness_diagnostics: empty sample");
  BoundednessReport rep;
  rep.min_variance_per_group = std::numeric_limits<double>::infinity();
  for (const ProductState& st : sample) {
    for (int mu = 0; mu < st.groups(); ++mu) {
      const double e_mu = st.group_energy[mu] - spectra[mu].ground_energy;
      rep.max_group_energy = std::max(rep.max_group_energy, e_mu);
      if (window_top && e_mu > *window_top + 1e-12) rep.energy_bound_violated = true;
    }
    const MomentSet ms = interaction_moments(st, spectra, part);
    rep.min_variance_per_group =
        std::min(rep.min_variance_per_group, ms.interaction_variance / part.spec.groups);
  }
  rep.variance_growth_violated = rep.min_variance_per_group < 1e-12;
  return rep;
}

}  // namespace thermochain
