#pragma once

#include <functional>
#include <memory>

#include "thermochain/chain.hpp"

// Homogeneous large-N_G evaluators used by the criteria scans.  An ensemble
// describes one group of n sites embedded in an infinite chain of identical
// groups: its thermal energy curve, the inverse map, the variance of one
// inter-group bond when the adjacent groups sit at given energies, and the
// ground-energy bookkeeping (isolated-group ground versus the per-group share
// of the full-chain ground).
//
// All quantities are in reduced units (hbar = k_B = 1, hbar*omega0 = 1 for
// oscillator chains, B = 1 for spin chains).
//
// Three implementations:
//  - harmonic, exact dispersion: mode sums for n <= 10^4, continuum integrals
//    beyond (the two agree to ~3 digits at the switchover);
//  - harmonic, Debye approximation: 1D Debye energy with cutoff k_B Theta and
//    a band-edge bond width (Theta/2) coth(Theta/(2T')); this is the form the
//    group-size estimates of the n_min curves are built on;
//  - Ising, free fermions: open-group quasiparticles for n <= 2048, bulk
//    dispersion integrals beyond.

namespace thermochain {

class GroupEnsemble {
 public:
  virtual ~GroupEnsemble() = default;

  virtual long long group_size() const = 0;

  // Thermal energy of one group above its isolated ground state.
  virtual double thermal_energy(double beta) const = 0;
  // Upper end of the attainable per-group thermal energy (inf if unbounded).
  virtual double max_thermal_energy() const = 0;
  // Inverse of thermal_energy; may return negative beta for fermion groups.
  virtual double beta_for_energy(double e) const = 0;

  // Mean / variance of one inter-group bond when the two adjacent groups are
  // in canonical-typical states with thermal energies e_left, e_right.
  virtual double bond_mean(double e_left, double e_right) const {
    (void)e_left;
    (void)e_right;
    return 0.0;
  }
  virtual double bond_variance(double e_left, double e_right) const = 0;

  // Isolated-group ground energy (absolute, reduced units).
  virtual double ground_energy() const = 0;
  // m0 = (isolated-group ground) - (full-chain ground energy per group).
  virtual double surface_offset() const = 0;
};

enum class HarmonicEval { debye, exact };

std::unique_ptr<GroupEnsemble> make_harmonic_ensemble(long long n, HarmonicEval eval,
                                                      double theta = 0.0);
std::unique_ptr<GroupEnsemble> make_ising_ensemble(long long n, double coupling,
                                                   double field = 1.0);

// Factory over n, with internal caching where construction is expensive.
using EnsembleFactory = std::function<std::shared_ptr<const GroupEnsemble>(long long)>;

EnsembleFactory harmonic_ensemble_factory(HarmonicEval eval, double theta = 0.0);
EnsembleFactory ising_ensemble_factory(double coupling, double field = 1.0);

}  // namespace thermochain
