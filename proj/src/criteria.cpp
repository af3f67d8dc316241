#include "thermochain/criteria.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace thermochain {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kFitSamples = 33;  // >= 20 per the operation contract
}  // namespace

void AccuracyParams::validate() const {
  if (!(alpha > 1.0)) throw std::invalid_argument("AccuracyParams: alpha must be > 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("AccuracyParams: delta must lie in (0,1)");
}

EnergyWindow energy_window(const GroupEnsemble& ens, double beta, double alpha) {
  if (!(alpha > 1.0)) throw std::invalid_argument("energy_window: alpha must be > 1");
  if (!(beta > 0.0)) throw std::invalid_argument("energy_window: beta must be positive");
  EnergyWindow w;
  w.mean_thermal = ens.thermal_energy(beta);
  w.group_ground = ens.ground_energy();
  const double m0 = ens.surface_offset();
  w.ground_share = w.group_ground - m0;
  w.e_min = std::max(0.0, w.mean_thermal / alpha - m0);
  w.e_max = std::min(ens.max_thermal_energy(), alpha * w.mean_thermal - m0);
  w.degenerate = w.e_max < w.e_min;
  return w;
}

Condition16 check_condition_16(const GroupEnsemble& ens, double beta,
                               const EnergyWindow& window) {
  Condition16 c;
  const double e_bot = window.e_min;
  const double m0 = ens.surface_offset();
  const double eps = ens.bond_mean(e_bot, e_bot);
  c.delta2 = ens.bond_variance(e_bot, e_bot);
  // per-group limit of [(E_a + eps_a - E_0) - beta Delta_a^2] / (sqrt(N_G) Delta_a)
  const double numerator = e_bot + m0 + eps - beta * c.delta2;
  if (c.delta2 <= 0.0) {
    c.margin = std::numeric_limits<double>::infinity();
    c.pass = true;  // decoupled chain: the condition holds trivially
    return c;
  }
  c.margin = numerator / std::sqrt(c.delta2);
  c.pass = numerator > 0.0;
  return c;
}

Condition18 fit_condition_18(const GroupEnsemble& ens, double beta,
                             const EnergyWindow& window, const AccuracyParams& acc) {
  acc.validate();
  Condition18 c;
  if (window.degenerate || !(window.width() > 0.0)) {
    c.degenerate = true;
    c.beta_loc = beta;
    return c;
  }

  // Homogeneous sampling: every group at per-group energy e, so both variance
  // terms coincide and the tilde term vanishes in eigenstate products:
  //   lhs(E_mu) = -eps(e) + (beta/2) Delta_bond^2(e)
  std::vector<double> energy(kFitSamples), lhs(kFitSamples);
  for (int i = 0; i < kFitSamples; ++i) {
    const double e = window.e_min + window.width() * i / (kFitSamples - 1);
    energy[i] = window.group_ground + e;
    const double eps = ens.bond_mean(e, e);
    const double d2 = ens.bond_variance(e, e);
    lhs[i] = -eps + 0.5 * beta * d2;
  }

  // least-squares line lhs ~ c1 E + c2
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < kFitSamples; ++i) {
    sx += energy[i];
    sy += lhs[i];
    sxx += energy[i] * energy[i];
    sxy += energy[i] * lhs[i];
  }
  const double denom = kFitSamples * sxx - sx * sx;
  c.c1 = denom != 0.0 ? (kFitSamples * sxy - sx * sy) / denom : 0.0;
  c.c2 = (sy - c.c1 * sx) / kFitSamples;
  c.beta_loc = beta * (1.0 - c.c1);

  double max_abs_c1e = 0.0;
  for (int i = 0; i < kFitSamples; ++i) {
    c.max_residual = std::max(c.max_residual, std::abs(lhs[i] - c.c1 * energy[i] - c.c2));
    max_abs_c1e = std::max(max_abs_c1e, std::abs(c.c1 * energy[i]));
  }
  c.residual_scale = acc.delta * std::max(max_abs_c1e, 1.0 / beta);
  c.residual_within_scale = c.max_residual <= c.residual_scale;

  for (int i = 0; i + 1 < kFitSamples; ++i) {
    const double de = energy[i + 1] - energy[i];
    if (de <= 0.0) continue;
    c.max_slope = std::max(c.max_slope, std::abs(lhs[i + 1] - lhs[i]) / de);
  }
  c.pass = c.max_slope <= 0.5 * acc.delta;
  c.intensive = std::abs(c.c1) <= acc.delta;
  return c;
}

CriteriaReport evaluate_criteria(const GroupEnsemble& ens, double beta,
                                 const AccuracyParams& acc) {
  acc.validate();
  CriteriaReport rep;
  rep.window = energy_window(ens, beta, acc.alpha);
  if (rep.window.degenerate) {
    rep.cond18.degenerate = true;
    rep.cond18.beta_loc = beta;
    return rep;
  }
  rep.cond16 = check_condition_16(ens, beta, rep.window);
  rep.cond18 = fit_condition_18(ens, beta, rep.window, acc);
  rep.pass = rep.cond16.pass && rep.cond18.pass;
  return rep;
}

namespace {

// Smallest n in [1, cap] satisfying `passes`, assuming eventual monotonicity:
// doubling scan followed by integer bisection.  Returns -1 if none found.
template <class Pred>
long long first_passing(Pred passes, long long cap) {
  long long prev = 0;  // last known failure (0 = virtual)
  long long n = 1;
  while (n <= cap) {
    if (passes(n)) break;
    prev = n;
    if (n == cap) return -1;
    n = std::min(cap, 2 * n);
  }
  if (n > cap) return -1;
  long long lo = prev, hi = n;  // (lo) fails, (hi) passes
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (passes(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

NminResult minimal_group_size(const EnsembleFactory& factory, double beta,
                              const AccuracyParams& acc, long long cap) {
  acc.validate();
  if (!(beta > 0.0))
    throw std::invalid_argument("minimal_group_size: beta must be positive");

  auto pass16 = [&](long long n) {
    const auto ens = factory(n);
    const EnergyWindow w = energy_window(*ens, beta, acc.alpha);
    if (w.degenerate) return false;
    return check_condition_16(*ens, beta, w).pass;
  };
  auto pass18 = [&](long long n) {
    const auto ens = factory(n);
    const EnergyWindow w = energy_window(*ens, beta, acc.alpha);
    if (w.degenerate) return false;
    return fit_condition_18(*ens, beta, w, acc).pass;
  };
  auto passBoth = [&](long long n) { return pass16(n) && pass18(n); };

  NminResult r;
  r.n16 = first_passing(pass16, cap);
  r.n18 = first_passing(pass18, cap);
  r.nmin = first_passing(passBoth, cap);
  r.above_cap = r.nmin < 0;
  if (r.above_cap) {
    r.binding = "above_cap";
    return r;
  }
  if (r.n16 > 0 && r.n18 > 0)
    r.binding = r.n16 > r.n18 ? "cond16" : (r.n18 > r.n16 ? "cond18" : "both");
  else
    r.binding = r.n16 > 0 ? "cond16" : "cond18";
  for (long long f : {2LL, 4LL}) {
    const long long probe = r.nmin * f;
    if (probe <= cap && !passBoth(probe)) r.monotone = false;
  }
  return r;
}

double asymptotic_nmin(double t, double theta, double alpha, double delta) {
  if (!(t > 0) || !(theta > 0) || !(alpha > 0) || !(delta > 0))
    throw std::invalid_argument("asymptotic_nmin: all arguments must be positive");
  if (t > theta) return 2.0 * alpha / delta;
  const double r = theta / t;
  return 3.0 * alpha / (2.0 * kPi * kPi) * r * r * r;
}

}  // namespace thermochain
