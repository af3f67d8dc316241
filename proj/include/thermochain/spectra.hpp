#pragma once

#include <Eigen/Dense>
#include <vector>

#include "thermochain/chain.hpp"

// Spectra of isolated groups.  Three routes produce a GroupSpectrum:
//   - dense diagonalization (oracle path, small groups, either model),
//   - normal modes of the tridiagonal stiffness form (harmonic, any n),
//   - free-fermion quasiparticles of the pairing form (Ising, any n).
// The spectrum also carries the boundary-site data the moment formulas need:
// |u_j(site)|^2 mode weights for oscillators, particle/hole weights for
// fermions, and <sigma^z> tables for dense spin eigenstates.

namespace thermochain {

struct GroupSpectrum {
  Model model = Model::ising;
  int sites = 0;
  bool dense = false;

  // Mode route: ascending mode energies (hbar omega_j, or quasiparticle
  // energies Lambda_k) and the isolated-group ground energy.
  Eigen::VectorXd modes;
  double ground_energy = 0.0;

  // Harmonic boundary weights |u_j(1)|^2, |u_j(n)|^2 per mode.
  Eigen::VectorXd weight_first, weight_last;

  // Free-fermion boundary weights g_{k,site}^2 and h_{k,site}^2 per mode.
  Eigen::VectorXd gg_first, hh_first, gg_last, hh_last;

  // Dense route: full many-body eigensystem; for spin groups also the
  // per-eigenstate <sigma^z_s> table (rows = eigenstates, cols = sites).
  Eigen::VectorXd dense_energies;
  Eigen::MatrixXd dense_vectors;
  Eigen::MatrixXd dense_sz;

  int state_count() const {
    return dense ? static_cast<int>(dense_energies.size()) : -1;
  }

  // Energy of an occupation vector (mode route).
  double occupation_energy(const Eigen::VectorXd& occ) const;

  // Boundary observables in a state given by mode occupations (fractional
  // occupations are allowed; all formulas below are linear in them).
  double mean_q2_first(const Eigen::VectorXd& occ) const;  // <q^2>, m = hbar = 1
  double mean_q2_last(const Eigen::VectorXd& occ) const;
  double mean_sz_first(const Eigen::VectorXd& occ) const;
  double mean_sz_last(const Eigen::VectorXd& occ) const;
};

// Normal modes of one isolated harmonic group: omega_j = 2 omega0
// sin(j pi / (2(n+1))), with boundary weights (2/(n+1)) sin^2(j pi/(n+1)).
GroupSpectrum harmonic_group_modes(int n, double omega0);

// Quasiparticles of one isolated Ising group.  The (xx - yy)/2 coupling maps
// to pure pairing terms under the Jordan-Wigner transformation; the resulting
// quadratic form is diagonalized numerically for any (B, J).
GroupSpectrum ising_group_free_fermion(int n, double field, double coupling);

// Dense oracle route.  For spin groups `h` is the 2^n x 2^n group matrix;
// for harmonic groups it is the n x n stiffness form.
GroupSpectrum dense_group_eigensystem(const Eigen::MatrixXd& h, Model model, int sites);

// Product of group eigenstates.  Each group is labelled either by mode
// occupations (mode route) or by a dense eigenstate index.
struct ProductState {
  std::vector<Eigen::VectorXd> occupations;  // empty when dense-labelled
  std::vector<int> dense_index;              // -1 when occupation-labelled
  std::vector<double> group_energy;          // E_mu, absolute

  int groups() const { return static_cast<int>(group_energy.size()); }
  double total_energy() const;
};

ProductState product_from_occupations(const std::vector<GroupSpectrum>& spectra,
                                      const std::vector<Eigen::VectorXd>& occ);
ProductState product_from_dense(const std::vector<GroupSpectrum>& spectra,
                                const std::vector<int>& index);

// Dense vector of a product state in the full chain space (spin chains; group
// 0 occupies the least significant bits).
Eigen::VectorXd product_state_vector(const std::vector<GroupSpectrum>& spectra,
                                     const ProductState& state);

}  // namespace thermochain
