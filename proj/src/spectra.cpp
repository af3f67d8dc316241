#include "thermochain/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "thermochain/spin_ops.hpp"

namespace thermochain {

double GroupSpectrum::occupation_energy(const Eigen::VectorXd& occ) const {
  return ground_energy + modes.dot(occ);
}

double GroupSpectrum::mean_q2_first(const Eigen::VectorXd& occ) const {
  // <q_s^2> = sum_j |u_j(s)|^2 (2 nu_j + 1) / (2 omega_j),  m = hbar = 1
  double q2 = 0.0;
  for (int j = 0; j < modes.size(); ++j)
    q2 += weight_first(j) * (2.0 * occ(j) + 1.0) / (2.0 * modes(j));
  return q2;
}

double GroupSpectrum::mean_q2_last(const Eigen::VectorXd& occ) const {
  double q2 = 0.0;
  for (int j = 0; j < modes.size(); ++j)
    q2 += weight_last(j) * (2.0 * occ(j) + 1.0) / (2.0 * modes(j));
  return q2;
}

double GroupSpectrum::mean_sz_first(const Eigen::VectorXd& occ) const {
  double n_f = 0.0;
  for (int k = 0; k < modes.size(); ++k)
    n_f += gg_first(k) * occ(k) + hh_first(k) * (1.0 - occ(k));
  return 1.0 - 2.0 * n_f;
}

double GroupSpectrum::mean_sz_last(const Eigen::VectorXd& occ) const {
  double n_f = 0.0;
  for (int k = 0; k < modes.size(); ++k)
    n_f += gg_last(k) * occ(k) + hh_last(k) * (1.0 - occ(k));
  return 1.0 - 2.0 * n_f;
}

GroupSpectrum harmonic_group_modes(int n, double omega0) {
  if (n < 1 || omega0 <= 0)
    throw std::invalid_argument("harmonic_group_modes: need n >= 1, omega0 > 0");
  GroupSpectrum s;
  s.model = Model::harmonic;
  s.sites = n;
  s.modes.resize(n);
  s.weight_first.resize(n);
  s.weight_last.resize(n);
  const double pi = M_PI;
  for (int j = 1; j <= n; ++j) {
    const double theta = j * pi / (n + 1);
    s.modes(j - 1) = 2.0 * omega0 * std::sin(0.5 * theta);
    const double w = 2.0 / (n + 1) * std::sin(theta) * std::sin(theta);
    s.weight_first(j - 1) = w;
    s.weight_last(j - 1) = w;  // mirror symmetry of the open group
  }
  s.ground_energy = 0.5 * s.modes.sum();
  return s;
}

GroupSpectrum ising_group_free_fermion(int n, double field, double coupling) {
  if (n < 1) throw std::invalid_argument("ising_group_free_fermion: need n >= 1");
  if (field <= 0) throw std::invalid_argument("ising_group_free_fermion: need B > 0");
  GroupSpectrum s;
  s.model = Model::ising;
  s.sites = n;

  // Quadratic form A = 2B 1, pairing P with P_{j,j+1} = -J.  Quasiparticle
  // energies are sqrt of the eigenvalues of M = (A - P)(A + P) = 4B^2 - P^2;
  // the eigenvector pair (phi, psi = (A + P) phi / Lambda) gives the
  // Bogoliubov coefficients g = (phi + psi)/2, h = (phi - psi)/2.
  //
  // M only couples sites two apart, so it splits into one tridiagonal block
  // per sublattice, solved directly in tridiagonal form.
  const double b2 = 4.0 * field * field;
  const double j2 = coupling * coupling;

  s.modes.resize(n);
  s.gg_first.resize(n);
  s.hh_first.resize(n);
  s.gg_last.resize(n);
  s.hh_last.resize(n);

  int k_out = 0;
  Eigen::VectorXd phi_full = Eigen::VectorXd::Zero(n);
  for (int p = 0; p < 2; ++p) {
    const int np = (n - p + 1) / 2;  // sites p, p+2, ...
    if (np == 0) continue;
    Eigen::VectorXd diag(np), sub(std::max(np - 1, 0));
    for (int a = 0; a < np; ++a) {
      const int site = p + 2 * a;
      double d = b2 + 2.0 * j2;
      if (site == 0) d -= j2;
      if (site == n - 1) d -= j2;
      diag(a) = d;
      if (a + 1 < np) sub(a) = -j2;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

    for (int k = 0; k < np; ++k) {
      const double lam = std::sqrt(std::max(es.eigenvalues()(k), 0.0));
      phi_full.setZero();
      for (int a = 0; a < np; ++a) phi_full(p + 2 * a) = es.eigenvectors()(a, k);
      auto psi_at = [&](int i) {
        double v = 2.0 * field * phi_full(i);
        if (i + 1 < n) v += -coupling * phi_full(i + 1);  // P_{i,i+1} = -J
        if (i - 1 >= 0) v += coupling * phi_full(i - 1);  // P_{i,i-1} = +J
        return v / lam;
      };
      const double phi_f = phi_full(0), psi_f = psi_at(0);
      const double phi_l = phi_full(n - 1), psi_l = psi_at(n - 1);
      const double g_f = 0.5 * (phi_f + psi_f), h_f = 0.5 * (phi_f - psi_f);
      const double g_l = 0.5 * (phi_l + psi_l), h_l = 0.5 * (phi_l - psi_l);
      s.modes(k_out) = lam;
      s.gg_first(k_out) = g_f * g_f;
      s.hh_first(k_out) = h_f * h_f;
      s.gg_last(k_out) = g_l * g_l;
      s.hh_last(k_out) = h_l * h_l;
      ++k_out;
    }
  }
  // ascending mode order, carrying the boundary weights along
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return s.modes(a) < s.modes(b); });
  GroupSpectrum out = s;
  for (int i = 0; i < n; ++i) {
    out.modes(i) = s.modes(order[i]);
    out.gg_first(i) = s.gg_first(order[i]);
    out.hh_first(i) = s.hh_first(order[i]);
    out.gg_last(i) = s.gg_last(order[i]);
    out.hh_last(i) = s.hh_last(order[i]);
  }
  out.ground_energy = -0.5 * out.modes.sum();
  return out;
}

GroupSpectrum dense_group_eigensystem(const Eigen::MatrixXd& h, Model model, int sites) {
  GroupSpectrum s;
  s.model = model;
  s.sites = sites;
  s.dense = true;
  if (model == Model::ising) {
    if (sites > dense_spin_cap)
      throw capability_error("dense_group_eigensystem: spin group too large");
    if (h.rows() != spin::dimension(sites))
      throw std::invalid_argument("dense_group_eigensystem: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    s.dense_energies = es.eigenvalues();
    s.dense_vectors = es.eigenvectors();
    s.ground_energy = s.dense_energies(0);
    const int d = static_cast<int>(s.dense_energies.size());
    s.dense_sz.resize(d, sites);
    for (int v = 0; v < d; ++v)
      for (int site = 0; site < sites; ++site) {
        double acc = 0.0;
        for (int i = 0; i < d; ++i)
          acc += s.dense_vectors(i, v) * s.dense_vectors(i, v) * spin::sz_value(i, site);
        s.dense_sz(v, site) = acc;
      }
    return s;
  }
  // Harmonic: h is the group stiffness form; mode data from its eigensystem.
  if (sites > dense_oscillator_cap)
    throw capability_error("dense_group_eigensystem: oscillator group too large");
  if (h.rows() != sites)
    throw std::invalid_argument("dense_group_eigensystem: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  s.dense = false;  // the harmonic dense route still yields mode data
  s.modes.resize(sites);
  s.weight_first.resize(sites);
  s.weight_last.resize(sites);
  for (int j = 0; j < sites; ++j) {
    const double w2 = es.eigenvalues()(j);
    if (w2 <= 0) throw std::domain_error("dense_group_eigensystem: stiffness not positive");
    s.modes(j) = std::sqrt(w2);
    s.weight_first(j) = es.eigenvectors()(0, j) * es.eigenvectors()(0, j);
    s.weight_last(j) = es.eigenvectors()(sites - 1, j) * es.eigenvectors()(sites - 1, j);
  }
  s.ground_energy = 0.5 * s.modes.sum();
  return s;
}

double ProductState::total_energy() const {
  double e = 0.0;
  for (double g : group_energy) e += g;
  return e;
}

ProductState product_from_occupations(const std::vector<GroupSpectrum>& spectra,
                                      const std::vector<Eigen::VectorXd>& occ) {
  if (spectra.size() != occ.size())
    throw std::invalid_argument("product_from_occupations: size mismatch");
  ProductState st;
  st.occupations = occ;
  st.dense_index.assign(occ.size(), -1);
  st.group_energy.resize(occ.size());
  for (size_t mu = 0; mu < occ.size(); ++mu) {
    if (occ[mu].size() != spectra[mu].modes.size())
      throw std::invalid_argument("product_from_occupations: occupation length mismatch");
    st.group_energy[mu] = spectra[mu].occupation_energy(occ[mu]);
  }
  return st;
}

ProductState product_from_dense(const std::vector<GroupSpectrum>& spectra,
                                const std::vector<int>& index) {
  if (spectra.size() != index.size())
    throw std::invalid_argument("product_from_dense: size mismatch");
  ProductState st;
  st.occupations.resize(index.size());
  st.dense_index = index;
  st.group_energy.resize(index.size());
  for (size_t mu = 0; mu < index.size(); ++mu) {
    if (!spectra[mu].dense)
      throw std::invalid_argument("product_from_dense: spectrum is not dense");
    if (index[mu] < 0 || index[mu] >= spectra[mu].state_count())
      throw std::invalid_argument("product_from_dense: state index out of range");
    st.group_energy[mu] = spectra[mu].dense_energies(index[mu]);
  }
  return st;
}

Eigen::VectorXd product_state_vector(const std::vector<GroupSpectrum>& spectra,
                                     const ProductState& state) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(1);
  for (size_t mu = 0; mu < spectra.size(); ++mu) {
    const GroupSpectrum& s = spectra[mu];
    if (!s.dense) throw std::invalid_argument("product_state_vector: dense spectra required");
    const Eigen::VectorXd g = s.dense_vectors.col(state.dense_index[mu]);
    // group mu occupies the next-higher bits: v_new = g (x) v
    Eigen::VectorXd out(v.size() * g.size());
    for (int i = 0; i < g.size(); ++i) out.segment(i * v.size(), v.size()) = g(i) * v;
    v.swap(out);
  }
  return v;
}

}  // namespace thermochain
