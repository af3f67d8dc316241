#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "thermochain/chain.hpp"
#include "thermochain/moments.hpp"
#include "thermochain/oracle.hpp"
#include "thermochain/spectra.hpp"
#include "thermochain/spin_ops.hpp"

using namespace thermochain;

namespace {

std::vector<GroupSpectrum> dense_spectra(const PartitionedHamiltonian& part) {
  std::vector<GroupSpectrum> out;
  for (int mu = 0; mu < part.spec.groups; ++mu)
    out.push_back(dense_group_eigensystem(part.dense_group(mu), part.spec.model,
                                          part.spec.group_size));
  return out;
}

}  // namespace

TEST_CASE("exact Gibbs states") {
  SUBCASE("beta = 0 is the maximally mixed state") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.2}, 3, 1);
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 0.0);
    const Eigen::MatrixXd rho = g.dense_rho();
    const int d = static_cast<int>(rho.rows());
    CHECK((rho - Eigen::MatrixXd::Identity(d, d) / d).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("single spin closed form") {
    Eigen::MatrixXd h(2, 2);
    h << -1.0, 0.0, 0.0, 1.0;
    const double beta = 1.0;
    const GibbsState g = exact_gibbs(h, beta);
    const Eigen::MatrixXd rho = g.dense_rho();
    const double z = std::exp(beta) + std::exp(-beta);
    CHECK(rho(0, 0) == doctest::Approx(std::exp(beta) / z).epsilon(1e-14));
    CHECK(rho(1, 1) == doctest::Approx(std::exp(-beta) / z).epsilon(1e-14));
  }
  SUBCASE("8-spin state: trace one, positive, consistent energy") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.1}, 8, 1);
    const Eigen::MatrixXd h = dense_hamiltonian(spec);
    const GibbsState g = exact_gibbs(h, 1.0);
    const Eigen::MatrixXd rho = g.dense_rho();
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues()(0) > -1e-12);
    CHECK((rho * h).trace() == doctest::Approx(g.mean_energy()).epsilon(1e-12));
  }
  SUBCASE("extreme beta stays finite via the max shift") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.1}, 6, 1);
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 500.0);
    CHECK(std::isfinite(g.log_partition_shifted));
    CHECK(std::abs(g.weights.sum() - 1.0) < 1e-12);
  }
}

TEST_CASE("erfc diagonal estimate") {
  SUBCASE("decoupled chain: exact in the degenerate-width limit") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.0}, 6, 1);
    const PartitionedHamiltonian part = partition(spec);
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 0.7);
    const ErfcComparison cmp = diagonal_vs_erfc(g, dense_spectra(part), part);
    for (size_t a = 0; a < cmp.exact_log.size(); ++a)
      CHECK(std::abs(cmp.exact_log[a] - cmp.estimate_log[a]) < 1e-10);
    CHECK(cmp.median_rel_log_error < 1e-12);
  }
  SUBCASE("beta = 0: uniform diagonal, estimate exact away from spectrum edges") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.1}, 8, 1);
    const PartitionedHamiltonian part = partition(spec);
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 0.0);
    const auto spectra = dense_spectra(part);
    const ErfcComparison cmp = diagonal_vs_erfc(g, spectra, part);
    const double log_d = std::log(256.0);
    for (size_t a = 0; a < cmp.exact_log.size(); ++a)
      CHECK(cmp.exact_log[a] == doctest::Approx(-log_d).epsilon(1e-12));
    // the one-sided Gaussian tail only matters for states pinned to the
    // spectrum edges; the bulk median is exact
    CHECK(cmp.median_rel_log_error < 1e-10);
  }
  SUBCASE("8 spins at moderate temperature: percent-level log accuracy") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.1}, 8, 1);
    const PartitionedHamiltonian part = partition(spec);
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 0.5);
    const ErfcComparison cmp = diagonal_vs_erfc(g, dense_spectra(part), part);
    CHECK(cmp.median_rel_log_error < 0.05);
    // the upper-edge erfc term is negligible for bulk states; only product
    // states pinned to the spectrum top feel it at all
    CHECK(cmp.median_upper_edge_shift < 1e-12);
    CHECK(cmp.max_upper_edge_shift < 1.0);
  }
}

TEST_CASE("log_erfc is accurate across the argument range") {
  for (double x : {-20.0, -3.0, 0.0, 1.0, 10.0, 24.9}) {
    CHECK(log_erfc(x) == doctest::Approx(std::log(std::erfc(x))).epsilon(1e-12));
  }
  // asymptotic branch: compare against the identity erfc(x) = e^{-x^2} erfcx(x)
  // via the ratio of adjacent evaluations
  const double a = log_erfc(26.0), b = log_erfc(26.5);
  CHECK(a > b);
  CHECK(std::isfinite(a));
  CHECK(a == doctest::Approx(-26.0 * 26.0 - std::log(26.0 * std::sqrt(M_PI)))
                 .epsilon(1e-3));
}

TEST_CASE("clt moments") {
  SUBCASE("decoupled chain: point mass") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.0}, 4, 1);
    const PartitionedHamiltonian part = partition(spec);
    const auto spectra = dense_spectra(part);
    const ProductState st = product_from_dense(spectra, {0, 0, 1, 1});
    const Eigen::VectorXd v = product_state_vector(spectra, st);
    const SpectralDistribution sd =
        clt_moments(dense_hamiltonian(spec), st.total_energy(), v);
    CHECK(sd.variance == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sd.mean_offset == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("all-up state shares the brute-force variance 4 J^2") {
    const double j = 0.3;
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, j}, 4, 1);
    const PartitionedHamiltonian part = partition(spec);
    const auto spectra = dense_spectra(part);
    const ProductState st = product_from_dense(spectra, {0, 0, 0, 0});
    const Eigen::VectorXd v = product_state_vector(spectra, st);
    const SpectralDistribution sd =
        clt_moments(dense_hamiltonian(spec), st.total_energy(), v);
    CHECK(sd.variance == doctest::Approx(4.0 * j * j).epsilon(1e-12));
    // identical to the interaction variance from the moments module
    const MomentSet ms = interaction_moments(st, spectra, part);
    CHECK(sd.variance == doctest::Approx(ms.interaction_variance).epsilon(1e-12));
  }
  SUBCASE("variance equals the interaction variance in any eigenstate product") {
    const double j = 0.2;
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, j}, 5, 2);
    const PartitionedHamiltonian part = partition(spec);
    const auto spectra = dense_spectra(part);
    const Eigen::MatrixXd h = dense_hamiltonian(spec);
    for (std::vector<int> label : {std::vector<int>{0, 0, 0, 0, 0},
                                   std::vector<int>{0, 3, 0, 3, 0},
                                   std::vector<int>{3, 3, 3, 3, 3}}) {
      const ProductState st = product_from_dense(spectra, label);
      const Eigen::VectorXd v = product_state_vector(spectra, st);
      const SpectralDistribution sd = clt_moments(h, st.total_energy(), v);
      const MomentSet ms = interaction_moments(st, spectra, part);
      CHECK(sd.variance == doctest::Approx(ms.interaction_variance).epsilon(1e-9));
    }
  }
}

TEST_CASE("off-diagonal suppression") {
  SUBCASE("beta = 0: strictly diagonal") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.2}, 6, 1);
    const PartitionedHamiltonian part = partition(spec);
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 0.0);
    const OffDiagonalProfile prof = off_diagonal_profile(g, dense_spectra(part), part);
    CHECK(prof.max_offdiagonal < 1e-14);
  }
  SUBCASE("decoupled chain: common eigenbasis") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.0}, 6, 1);
    const PartitionedHamiltonian part = partition(spec);
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 0.8);
    const OffDiagonalProfile prof = off_diagonal_profile(g, dense_spectra(part), part);
    CHECK(prof.max_offdiagonal < 1e-14);
  }
  SUBCASE("10 spins: suppression profile, thresholds pinned from the first run") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.1}, 10, 1);
    const PartitionedHamiltonian part = partition(spec);
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 1.0);
    const OffDiagonalProfile prof = off_diagonal_profile(g, dense_spectra(part), part);
    // coherences never exceed the geometric diagonal mean (positivity), and
    // at this instance they stay a factor five below it
    CHECK(prof.max_norm_beyond(0.0) < 0.2);
    // absolute far off-diagonals sit 10x below the largest diagonal
    CHECK(prof.max_beyond(2.0) < 0.1 * prof.max_diagonal);
    // the window between the near-degenerate and the bond-flip coherences is
    // exactly empty for single-site groups (level spacing 2B)
    CHECK(prof.max_norm_beyond(1.0) - prof.max_norm_beyond(4.0) < 1e-12);
  }
}

TEST_CASE("partial trace and trace distance") {
  const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.1}, 4, 2);
  const PartitionedHamiltonian part = partition(spec);
  const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 0.7);
  const Eigen::MatrixXd rho = g.dense_rho();

  SUBCASE("reduced states have unit trace") {
    for (int mu = 0; mu < 4; ++mu) {
      const Eigen::MatrixXd red = partial_trace_group(rho, 8, 2 * mu, 2);
      CHECK(std::abs(red.trace() - 1.0) < 1e-12);
    }
  }
  SUBCASE("local expectations agree between reduced and global states") {
    for (int site : {0, 3, 5}) {
      const double global = (rho * spin::sigma_z(site, 8)).trace();
      const int mu = site / 2;
      const Eigen::MatrixXd red = partial_trace_group(rho, 8, 2 * mu, 2);
      const double local = (red * spin::sigma_z(site - 2 * mu, 2)).trace();
      CHECK(global == doctest::Approx(local).epsilon(1e-10));
    }
  }
  SUBCASE("trace distance of identical states vanishes") {
    CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("reduced versus canonical group states") {
  SUBCASE("decoupled chain factorises exactly at the global temperature") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.0}, 4, 2);
    const PartitionedHamiltonian part = partition(spec);
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), 0.9);
    const CanonicalComparison cc = reduced_vs_canonical(g, part, 1, 0.9);
    CHECK(cc.distance < 1e-12);
    CHECK(cc.best_distance <= cc.distance + 1e-12);
  }
  SUBCASE("weak coupling: small distance, near-global best beta") {
    const ChainSpec spec = build_chain(Model::ising, IsingParams{1.0, 0.1}, 4, 2);
    const PartitionedHamiltonian part = partition(spec);
    const double beta = 0.5;
    const GibbsState g = exact_gibbs(dense_hamiltonian(spec), beta);
    const CanonicalComparison cc = reduced_vs_canonical(g, part, 0, beta);
    CHECK(cc.distance < 0.05);
    CHECK(cc.best_distance <= cc.distance + 1e-12);
    CHECK(cc.best_beta == doctest::Approx(beta).epsilon(0.5));
  }
}
