#pragma once

#include <Eigen/Dense>
#include <vector>

#include "thermochain/chain.hpp"
#include "thermochain/moments.hpp"
#include "thermochain/spectra.hpp"

// Brute-force verification path: exact Gibbs states of small spin chains in
// the product basis, the conjugate-error-function estimate of the diagonal
// elements, moments of the total-energy distribution in product states,
// off-diagonal suppression, and reduced-state vs canonical comparisons.
// Everything here is dense and deterministic; it defines ground truth for the
// closed forms used elsewhere.

namespace thermochain {

struct GibbsState {
  double beta = 0.0;
  Eigen::VectorXd energies;       // ascending eigenvalues of H
  Eigen::MatrixXd vectors;        // eigenvectors, columns
  Eigen::VectorXd weights;        // e^{-beta(E_k - E_0)} / Ztilde
  double log_partition_shifted = 0.0;  // ln sum_k e^{-beta(E_k - E_0)}
  double ground_energy = 0.0;          // E_0
  double top_energy = 0.0;             // E_1

  double log_partition() const {  // absolute ln Z
    return log_partition_shifted - beta * ground_energy;
  }
  Eigen::MatrixXd dense_rho() const;  // V diag(w) V^T
  double mean_energy() const { return energies.dot(weights); }
};

GibbsState exact_gibbs(const Eigen::MatrixXd& h, double beta);

// ln erfc(x), stable for large positive arguments.
double log_erfc(double x);

// Diagonal elements of a Gibbs state in the product basis versus the
// conjugate-error-function estimate built from (E_a, eps_a, Delta_a^2).
struct ErfcComparison {
  std::vector<double> product_energy;    // E_a
  std::vector<double> exact_log;         // ln <a|rho|a>
  std::vector<double> estimate_log;      // erfc-formula prediction
  double median_rel_log_error = 0.0;     // median |exact-est|/|exact|
  // effect of the E_1 erfc term: negligible for bulk states, order one only
  // for product states pinned to the very top of the spectrum
  double median_upper_edge_shift = 0.0;
  double max_upper_edge_shift = 0.0;
};

ErfcComparison diagonal_vs_erfc(const GibbsState& gibbs,
                                const std::vector<GroupSpectrum>& spectra,
                                const PartitionedHamiltonian& part);

// Moments of the total-energy measurement distribution w_a(E) in a product
// state: <a|H^k|a> for k <= 4 via repeated operator application.
struct SpectralDistribution {
  double raw[4] = {0, 0, 0, 0};  // <H>, <H^2>, <H^3>, <H^4>
  double mean_offset = 0.0;      // eps_a = <H> - E_a
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

SpectralDistribution clt_moments(const Eigen::MatrixXd& h, double product_energy,
                                 const Eigen::VectorXd& state);

struct OffDiagonalProfile {
  std::vector<double> bin_edges;      // ratio |E_a-E_b|/(Delta_a+Delta_b)
  std::vector<double> bin_max;        // max |<a|rho|b>| per bin
  std::vector<double> bin_max_norm;   // max |<a|rho|b>| / sqrt(rho_aa rho_bb)
  double median_diagonal = 0.0;
  double max_diagonal = 0.0;
  double max_offdiagonal = 0.0;

  double max_beyond(double ratio) const;
  double max_norm_beyond(double ratio) const;
};

OffDiagonalProfile off_diagonal_profile(const GibbsState& gibbs,
                                        const std::vector<GroupSpectrum>& spectra,
                                        const PartitionedHamiltonian& part);

// Partial trace of a density matrix over everything but `count` contiguous
// sites starting at `first` (site 0 = least significant bit).
Eigen::MatrixXd partial_trace_group(const Eigen::MatrixXd& rho, int total_sites,
                                    int first, int count);

double trace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct CanonicalComparison {
  double distance = 0.0;       // at the requested beta_test
  double best_beta = 0.0;      // golden-section minimiser over beta_test
  double best_distance = 0.0;
};

// Compares the reduced state of group mu with the canonical state of the
// isolated group Hamiltonian at beta_test.
CanonicalComparison reduced_vs_canonical(const GibbsState& gibbs,
                                         const PartitionedHamiltonian& part, int mu,
                                         double beta_test);

}  // namespace thermochain
