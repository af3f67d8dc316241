#pragma once

#include <string>

#include "thermochain/ensemble.hpp"

// The two local-canonicity conditions, the per-group energy window they are
// checked on, and the search for the minimal group size on which both hold.
//
// Window: E_min = max([E_mu]_min, Emean/(alpha N_G) + E_0/N_G),
//         E_max = min([E_mu]_max, alpha Emean/N_G + E_0/N_G),
// stated here in per-group thermal energies (above the isolated-group ground),
// in the homogeneous N_G -> infinity limit.
//
// Condition A (constant part): E_a + eps_a - E_0 > beta Delta_a^2, evaluated
// per group at the window bottom where the left side is smallest.
//
// Condition B (linearity): -(eps_{mu-1}+eps_mu)/2 + (beta/4)(Delta_{mu-1}^2 +
// Delta_mu^2) + (beta/6) Dtilde_mu^2 must be approximately linear in E_mu
// across the window.  Pass rule: the local slope d(lhs)/dE_mu stays within
// +-delta/2 everywhere in the window, i.e. the state-dependent local inverse
// temperature beta_loc(E) = beta (1 - lhs'(E)) deviates from beta by at most
// delta/2 in relative terms.  The least-squares line (c1, c2), its maximal
// residual and the scale delta*max(max|c1 E|, k_B T) are reported alongside.

namespace thermochain {

struct AccuracyParams {
  double alpha = 10.0;  // > 1, energy-window width factor
  double delta = 0.01;  // in (0,1), tolerated relative deviation

  void validate() const;
};

struct EnergyWindow {
  double e_min = 0.0;          // per-group thermal energy, window bottom
  double e_max = 0.0;          // window top
  double mean_thermal = 0.0;   // Emean / N_G
  double group_ground = 0.0;   // isolated-group ground energy (absolute)
  double ground_share = 0.0;   // E_0 / N_G (absolute)
  bool degenerate = false;     // empty window (E_min > E_max)

  double absolute_min() const { return group_ground + e_min; }
  double absolute_max() const { return group_ground + e_max; }
  double width() const { return e_max - e_min; }
};

EnergyWindow energy_window(const GroupEnsemble& ens, double beta, double alpha);

struct Condition16 {
  double margin = 0.0;  // [(E_a + eps_a - E_0) - beta Delta_a^2]/(sqrt(N_G) Delta_a)
  double delta2 = 0.0;  // bond variance at the window bottom
  bool pass = false;
};

Condition16 check_condition_16(const GroupEnsemble& ens, double beta,
                               const EnergyWindow& window);

struct Condition18 {
  double c1 = 0.0, c2 = 0.0;          // least-squares line through (E_mu, lhs)
  double beta_loc = 0.0;              // beta (1 - c1)
  double max_residual = 0.0;          // max |lhs - c1 E - c2|
  double residual_scale = 0.0;        // delta * max(max|c1 E|, k_B T)
  bool residual_within_scale = false;
  double max_slope = 0.0;             // max |d lhs / dE| over the window
  bool pass = false;                  // max_slope <= delta / 2
  bool intensive = false;             // |c1| <= delta
  bool degenerate = false;            // window empty, fit skipped
};

Condition18 fit_condition_18(const GroupEnsemble& ens, double beta,
                             const EnergyWindow& window, const AccuracyParams& acc);

struct CriteriaReport {
  EnergyWindow window;
  Condition16 cond16;
  Condition18 cond18;
  bool pass = false;
};

CriteriaReport evaluate_criteria(const GroupEnsemble& ens, double beta,
                                 const AccuracyParams& acc);

inline constexpr long long default_nmin_cap = 1000000000000LL;  // 10^12

struct NminResult {
  long long n16 = -1;   // -1 = above cap
  long long n18 = -1;
  long long nmin = -1;
  bool above_cap = false;
  std::string binding;  // "cond16", "cond18", "both", "above_cap"
  bool monotone = true; // nmin*2 and nmin*4 re-checked
};

NminResult minimal_group_size(const EnsembleFactory& factory, double beta,
                              const AccuracyParams& acc,
                              long long cap = default_nmin_cap);

// Closed-form group-size estimate: 2 alpha/delta for T > Theta and
// (3 alpha / 2 pi^2) (Theta/T)^3 for T < Theta.  The two branches are not
// continuous at T = Theta.
double asymptotic_nmin(double t, double theta, double alpha, double delta);

}  // namespace thermochain
