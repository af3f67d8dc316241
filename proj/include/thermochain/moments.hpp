#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "thermochain/chain.hpp"
#include "thermochain/spectra.hpp"

// Interaction moments in product states.  eps_a = <a|I|a> and
// Delta_a^2 = <a|I^2|a> - <a|I|a>^2 decompose over the inter-group bonds;
// cross-bond covariances vanish in products of group eigenstates because
// every cross term carries a lone boundary operator with zero expectation.
// Per-bond closed forms (validated against the dense oracle in the tests):
//   harmonic: Delta_bond^2 = m^2 omega0^4 <q_L^2><q_R^2>
//   ising:    Delta_bond^2 = (J^2/2)(1 + <sz_L><sz_R>)
// with the boundary expectations taken from the two adjacent group spectra.

namespace thermochain {

struct MomentSet {
  double interaction_mean = 0.0;       // eps_a
  double interaction_variance = 0.0;   // Delta_a^2
  std::vector<double> bond_mean;       // per bond mu
  std::vector<double> bond_variance;   // per bond mu
};

struct GroupMoments {
  double eps = 0.0;           // <a| I_{mu n, mu n+1} |a>
  double delta2 = 0.0;        // variance of the group Hamiltonian H_mu in |a>
  double delta2_tilde = 0.0;  // neighbour-covariance combination
};

MomentSet interaction_moments(const ProductState& state,
                              const std::vector<GroupSpectrum>& spectra,
                              const PartitionedHamiltonian& part);

GroupMoments group_moments(const ProductState& state,
                           const std::vector<GroupSpectrum>& spectra,
                           const PartitionedHamiltonian& part, int mu);

// Canonical-typical occupations at the inverse temperature beta' solving
// E(beta') = e_target (per-group thermal energy above the group ground
// state).  Bose factors for harmonic modes, Fermi factors for quasiparticles;
// fermionic targets above the spectrum midpoint correspond to beta' < 0.
Eigen::VectorXd typical_state(const GroupSpectrum& spectrum, double e_target);

// Thermal energy above ground of one group at effective inverse temperature.
double group_thermal_energy(const GroupSpectrum& spectrum, double beta_eff);

// Monotone inversion of group_thermal_energy; throws std::domain_error when
// e_target lies outside the attainable range.
double beta_for_group_energy(const GroupSpectrum& spectrum, double e_target);

struct BoundednessReport {
  double max_group_energy = 0.0;        // max_mu (E_mu - ground), over the sample
  double min_variance_per_group = 0.0;  // min_a Delta_a^2 / N_G
  bool energy_bound_violated = false;   // a sampled group exceeds the window top
  bool variance_growth_violated = false;
};

BoundednessReport boundedness_diagnostics(const std::vector<GroupSpectrum>& spectra,
                                          const std::vector<ProductState>& sample,
                                          const PartitionedHamiltonian& part,
                                          std::optional<double> window_top = std::nullopt);

// Boundary observables of one group of a product state (used by the moment
// formulas; exposed for tests).
double boundary_q2(const GroupSpectrum& s, const ProductState& st, int mu, bool last);
double boundary_sz(const GroupSpectrum& s, const ProductState& st, int mu, bool last);

}  // namespace thermochain
