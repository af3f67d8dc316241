#include "thermochain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermochain/spin_ops.hpp"

namespace thermochain {

namespace {

// Product-basis transform: columns of U are the product states, group 0 in
// the least significant bits.  Returns the identity cheaply for n = 1 groups
// up to eigenvector sign, which squares away everywhere it is used.
Eigen::MatrixXd product_basis(const std::vector<GroupSpectrum>& spectra) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(1, 1);
  for (const GroupSpectrum& s : spectra) {
    if (!s.dense) throw std::invalid_argument("product_basis: dense spectra required");
    const Eigen::MatrixXd& g = s.dense_vectors;
    Eigen::MatrixXd out(u.rows() * g.rows(), u.cols() * g.cols());
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j)
        out.block(i * u.rows(), j * u.cols(), u.rows(), u.cols()) = g(i, j) * u;
    u.swap(out);
  }
  return u;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Eigen::MatrixXd GibbsState::dense_rho() const {
  Eigen::MatrixXd vw = vectors;
  for (int k = 0; k < weights.size(); ++k) vw.col(k) *= weights(k);
  return vw * vectors.transpose();
}

GibbsState exact_gibbs(const Eigen::MatrixXd& h, double beta) {
  if (h.rows() != h.cols()) throw std::invalid_argument("exact_gibbs: square matrix required");
  if (h.rows() > (1 << dense_spin_cap))
    throw capability_error("exact_gibbs: dimension exceeds the dense cap");
  if (beta < 0) throw std::invalid_argument("exact_gibbs: beta must be >= 0");
  GibbsState g;
  g.beta = beta;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  g.energies = es.eigenvalues();
  g.vectors = es.eigenvectors();
  g.ground_energy = g.energies(0);
  g.top_energy = g.energies(g.energies.size() - 1);
  // weights via the max-shift, never raw exponentials
  Eigen::VectorXd w = (-beta * (g.energies.array() - g.ground_energy)).exp();
  const double z = w.sum();
  g.weights = w / z;
  g.log_partition_shifted = std::log(z);
  return g;
}

double log_erfc(double x) {
  if (x <= 25.0) return std::log(std::erfc(x));
  // asymptotic expansion erfc(x) ~ e^{-x^2}/(x sqrt(pi)) (1 - 1/(2x^2) + ...)
  const double ix2 = 1.0 / (x * x);
  const double series = 1.0 - 0.5 * ix2 + 0.75 * ix2 * ix2 - 1.875 * ix2 * ix2 * ix2;
  return -x * x - std::log(x * std::sqrt(M_PI)) + std::log(series);
}

namespace {

// ln[ erfc(x0) - erfc(x1) ] for x0 < x1 (the difference is positive).
double log_erfc_bracket(double x0, double x1) {
  const double l0 = log_erfc(x0);
  const double l1 = log_erfc(x1);
  return l0 + std::log1p(-std::exp(std::min(l1 - l0, 0.0)));
}

// erfc-formula estimate of ln <a|rho|a>; `without_upper` drops the E_1 term.
double erfc_estimate(double beta, double log_z_shifted, double e0, double e1,
                     double ebar, double delta2, bool without_upper) {
  const double base = -std::log(2.0) - log_z_shifted - beta * (ebar - e0) +
                      0.5 * beta * beta * delta2;
  if (delta2 < 1e-24) {
    const bool inside = ebar >= e0 - 1e-9 && ebar <= e1 + 1e-9;
    return base + (inside ? std::log(2.0) : -std::numeric_limits<double>::infinity());
  }
  const double d = std::sqrt(delta2);
  const double x0 = (e0 - ebar + beta * delta2) / (std::sqrt(2.0) * d);
  if (without_upper) return base + log_erfc(x0);
  const double x1 = (e1 - ebar + beta * delta2) / (std::sqrt(2.0) * d);
  return base + log_erfc_bracket(x0, x1);
}

}  // namespace

ErfcComparison diagonal_vs_erfc(const GibbsState& gibbs,
                                const std::vector<GroupSpectrum>& spectra,
                                const PartitionedHamiltonian& part) {
  const int ng = part.spec.groups;
  const int d = static_cast<int>(gibbs.energies.size());

  // amplitudes <a|v_k>^2: identity basis shortcut for single-site groups
  const bool unit_basis = part.spec.group_size == 1 && part.spec.model == Model::ising;
  Eigen::MatrixXd amp;
  if (unit_basis) {
    amp = gibbs.vectors.array().square();
  } else {
    const Eigen::MatrixXd u = product_basis(spectra);
    amp = (u.transpose() * gibbs.vectors).array().square();
  }
  const Eigen::VectorXd diag = amp * gibbs.weights;  // exact <a|rho|a>

  ErfcComparison cmp;
  cmp.product_energy.resize(d);
  cmp.exact_log.resize(d);
  cmp.estimate_log.resize(d);
  std::vector<double> rel_err(d), edge_shift(d);

  // per-group state labels of product index a (group 0 = least significant)
  std::vector<int> dims(ng);
  for (int mu = 0; mu < ng; ++mu) dims[mu] = spectra[mu].state_count();

  std::vector<int> label(ng);
  for (int a = 0; a < d; ++a) {
    int rest = a;
    double e_a = 0.0;
    for (int mu = 0; mu < ng; ++mu) {
      label[mu] = rest % dims[mu];
      rest /= dims[mu];
      e_a += spectra[mu].dense_energies(label[mu]);
    }
    const ProductState st = product_from_dense(spectra, label);
    const MomentSet ms = interaction_moments(st, spectra, part);
    const double ebar = e_a + ms.interaction_mean;

    cmp.product_energy[a] = e_a;
    cmp.exact_log[a] = std::log(diag(a));
    cmp.estimate_log[a] =
        erfc_estimate(gibbs.beta, gibbs.log_partition_shifted, gibbs.ground_energy,
                      gibbs.top_energy, ebar, ms.interaction_variance, false);
    const double no_upper =
        erfc_estimate(gibbs.beta, gibbs.log_partition_shifted, gibbs.ground_energy,
                      gibbs.top_energy, ebar, ms.interaction_variance, true);
    edge_shift[a] = std::abs(cmp.estimate_log[a] - no_upper);
    cmp.max_upper_edge_shift = std::max(cmp.max_upper_edge_shift, edge_shift[a]);
    rel_err[a] = std::abs(cmp.exact_log[a] - cmp.estimate_log[a]) /
                 std::max(std::abs(cmp.exact_log[a]), 1e-300);
  }
  cmp.median_rel_log_error = median(rel_err);
  cmp.median_upper_edge_shift = median(edge_shift);
  return cmp;
}

SpectralDistribution clt_moments(const Eigen::MatrixXd& h, double product_energy,
                                 const Eigen::VectorXd& state) {
  SpectralDistribution sd;
  const Eigen::VectorXd w1 = h * state;
  const Eigen::VectorXd w2 = h * w1;
  const double m1 = state.dot(w1);
  const double m2 = w1.dot(w1);
  const double m3 = w1.dot(w2);
  const double m4 = w2.dot(w2);
  sd.raw[0] = m1;
  sd.raw[1] = m2;
  sd.raw[2] = m3;
  sd.raw[3] = m4;
  sd.mean_offset = m1 - product_energy;
  const double mu2 = m2 - m1 * m1;
  const double mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
  const double mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * std::pow(m1, 4);
  sd.variance = mu2;
  if (mu2 > 1e-24) {
    sd.skewness = mu3 / std::pow(mu2, 1.5);
    sd.excess_kurtosis = mu4 / (mu2 * mu2) - 3.0;
  }
  return sd;
}

double OffDiagonalProfile::max_beyond(double ratio) const {
  double m = 0.0;
  for (size_t i = 0; i + 1 < bin_edges.size(); ++i)
    if (bin_edges[i] >= ratio) m = std::max(m, bin_max[i]);
  return m;
}

double OffDiagonalProfile::max_norm_beyond(double ratio) const {
  double m = 0.0;
  for (size_t i = 0; i + 1 < bin_edges.size(); ++i)
    if (bin_edges[i] >= ratio) m = std::max(m, bin_max_norm[i]);
  return m;
}

OffDiagonalProfile off_diagonal_profile(const GibbsState& gibbs,
                                        const std::vector<GroupSpectrum>& spectra,
                                        const PartitionedHamiltonian& part) {
  const int ng = part.spec.groups;
  const int d = static_cast<int>(gibbs.energies.size());

  const bool unit_basis = part.spec.group_size == 1 && part.spec.model == Model::ising;
  Eigen::MatrixXd rho = gibbs.dense_rho();
  if (!unit_basis) {
    const Eigen::MatrixXd u = product_basis(spectra);
    rho = (u.transpose() * rho * u).eval();
  }

  std::vector<int> dims(ng);
  for (int mu = 0; mu < ng; ++mu) dims[mu] = spectra[mu].state_count();
  Eigen::VectorXd e_a(d), width(d);
  std::vector<int> label(ng);
  for (int a = 0; a < d; ++a) {
    int rest = a;
    double e = 0.0;
    for (int mu = 0; mu < ng; ++mu) {
      label[mu] = rest % dims[mu];
      rest /= dims[mu];
      e += spectra[mu].dense_energies(label[mu]);
    }
    e_a(a) = e;
    const ProductState st = product_from_dense(spectra, label);
    width(a) = std::sqrt(interaction_moments(st, spectra, part).interaction_variance);
  }

  OffDiagonalProfile prof;
  prof.bin_edges = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0,
                    std::numeric_limits<double>::infinity()};
  prof.bin_max.assign(prof.bin_edges.size() - 1, 0.0);
  prof.bin_max_norm.assign(prof.bin_edges.size() - 1, 0.0);
  std::vector<double> diag(d);
  for (int a = 0; a < d; ++a) diag[a] = rho(a, a);
  prof.median_diagonal = median(diag);
  prof.max_diagonal = *std::max_element(diag.begin(), diag.end());

  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      const double denom = width(a) + width(b);
      const double num = std::abs(e_a(a) - e_a(b));
      double r;
      if (denom > 1e-14)
        r = num / denom;
      else
        r = num > 1e-10 ? std::numeric_limits<double>::infinity() : 0.0;
      const double v = std::abs(rho(a, b));
      const double norm = v / std::sqrt(std::max(diag[a] * diag[b], 1e-300));
      prof.max_offdiagonal = std::max(prof.max_offdiagonal, v);
      for (size_t i = 0; i + 1 < prof.bin_edges.size(); ++i)
        if (r >= prof.bin_edges[i] && r < prof.bin_edges[i + 1]) {
          prof.bin_max[i] = std::max(prof.bin_max[i], v);
          prof.bin_max_norm[i] = std::max(prof.bin_max_norm[i], norm);
          break;
        }
    }
  return prof;
}

Eigen::MatrixXd partial_trace_group(const Eigen::MatrixXd& rho, int total_sites,
                                    int first, int count) {
  const int d = 1 << total_sites;
  if (rho.rows() != d) throw std::invalid_argument("partial_trace_group: dimension mismatch");
  const int dm = 1 << count;
  const int dl = 1 << first;
  const int dh = d / (dm * dl);
  Eigen::MatrixXd red = Eigen::MatrixXd::Zero(dm, dm);
  for (int m = 0; m < dm; ++m)
    for (int mp = 0; mp < dm; ++mp) {
      double acc = 0.0;
      for (int h = 0; h < dh; ++h)
        for (int l = 0; l < dl; ++l) {
          const int i = (h * dm + m) * dl + l;
          const int j = (h * dm + mp) * dl + l;
          acc += rho(i, j);
        }
      red(m, mp) = acc;
    }
  return red;
}

double trace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a - b);
  return 0.5 * es.eigenvalues().array().abs().sum();
}

CanonicalComparison reduced_vs_canonical(const GibbsState& gibbs,
                                         const PartitionedHamiltonian& part, int mu,
                                         double beta_test) {
  const int n = part.spec.group_size;
  const int total = part.spec.sites();
  const Eigen::MatrixXd rho = gibbs.dense_rho();
  const Eigen::MatrixXd red = partial_trace_group(rho, total, mu * n, n);

  const Eigen::MatrixXd hg = part.dense_group(mu);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hg);
  auto canonical = [&](double bt) {
    Eigen::VectorXd w = (-bt * (es.eigenvalues().array() - es.eigenvalues()(0))).exp();
    w /= w.sum();
    Eigen::MatrixXd vw = es.eigenvectors();
    for (int k = 0; k < w.size(); ++k) vw.col(k) *= w(k);
    return (vw * es.eigenvectors().transpose()).eval();
  };
  auto dist = [&](double bt) { return trace_distance(red, canonical(bt)); };

  CanonicalComparison cc;
  cc.distance = dist(beta_test);

  // golden-section scan over ln(beta_test)
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = std::log(std::max(beta_test, 1e-8) / 1000.0);
  double hi = std::log(std::max(beta_test, 1e-8) * 1000.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = dist(std::exp(x1)), f2 = dist(std::exp(x2));
  for (int it = 0; it < 80; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = dist(std::exp(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = dist(std::exp(x2));
    }
  }
  cc.best_beta = std::exp(0.5 * (lo + hi));
  cc.best_distance = dist(cc.best_beta);
  return cc;
}

}  // namespace thermochain
