#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

// Chain Hamiltonians for the two model families and their partition into
// N_G groups of n sites with the inter-group bonds split off:
//   H = H0 + I,  H0 = sum of isolated groups (n sites, n-1 internal bonds),
//   I  = one bond operator per group boundary (periodic chain).

namespace thermochain {

// Requested dense realization exceeds the configured size caps.
class capability_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { harmonic, ising };

struct HarmonicParams {
  double mass = 1.0;     // m
  double omega0 = 1.0;   // base frequency
  double spacing = 1.0;  // a0 (length unit; only used by material estimates)
  double debye = 0.0;    // Debye temperature in units of hbar*omega0/k_B; 0 = derived

  // k_B * Theta = hbar * omega_max with omega_max = 2 omega0 (band edge of
  // the dispersion 2 omega0 |sin(k/2)|), unless a value was supplied.
  double debye_temperature() const { return debye > 0.0 ? debye : 2.0 * omega0; }
};

struct IsingParams {
  double field = 1.0;     // B > 0
  double coupling = 0.0;  // J
};

struct ChainSpec {
  Model model = Model::ising;
  HarmonicParams harmonic;
  IsingParams ising;
  int groups = 1;      // N_G
  int group_size = 1;  // n
  int sites() const { return groups * group_size; }
};

ChainSpec build_chain(Model model, const HarmonicParams& p, int groups, int group_size);
ChainSpec build_chain(Model model, const IsingParams& p, int groups, int group_size);

inline constexpr int dense_spin_cap = 14;        // sites
inline constexpr int dense_oscillator_cap = 64;  // sites

// Full dense realization.  Spin chains: 2^N x 2^N Hamiltonian matrix.
// Harmonic chains: the N x N stiffness form K of V = (m/2) q^T K q with
// diagonal 2 omega0^2 and -omega0^2 per bond.
Eigen::MatrixXd dense_hamiltonian(const ChainSpec& spec);
Eigen::MatrixXd stiffness_matrix(const ChainSpec& spec);

// Inter-group bond I_{mu n, mu n + 1}: couples the last site of group mu to
// the first site of group mu+1 (0-based site labels, periodic wrap).
struct Bond {
  int left_site;
  int right_site;
};

struct PartitionedHamiltonian {
  ChainSpec spec;
  std::vector<Bond> bonds;  // bonds[mu] couples group mu to group mu+1

  // Dense realizations in the same representation as dense_hamiltonian().
  Eigen::MatrixXd dense_isolated_groups() const;  // H0
  Eigen::MatrixXd dense_interaction() const;      // I
  // Isolated group mu in its own space (2^n spin matrix / n x n stiffness).
  Eigen::MatrixXd dense_group(int mu) const;
  // Bond operator embedded in the full space.
  Eigen::MatrixXd dense_bond(int mu) const;
};

PartitionedHamiltonian partition(const ChainSpec& spec);

}  // namespace thermochain
