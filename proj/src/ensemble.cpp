#include "thermochain/ensemble.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "thermochain/moments.hpp"
#include "thermochain/spectra.hpp"

namespace thermochain {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long long kHarmonicSumCap = 10000;  // mode sums below, integrals above
constexpr long long kIsingSumCap = 2048;      // open-group solve below, bulk above

double bose(double x) { return 1.0 / std::expm1(x); }

// 128-point Gauss-Legendre nodes/weights on [0, 1], generated by Newton
// iteration on the Legendre polynomial once per process.
struct Gauss {
  double x[128];
  double w[128];
  Gauss() {
    const int n = 128;
    for (int i = 0; i < n; ++i) {
      double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double t0 = 0.0, dp = 0.0;
      for (int it = 0; it < 100 && std::abs(t - t0) > 1e-15; ++it) {
        t0 = t;
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        t -= p1 / dp;
      }
      x[i] = 0.5 * (1.0 - t);  // map [-1,1] -> [0,1], reversed order is fine
      w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const Gauss& gauss() {
  static const Gauss g;
  return g;
}

template <class F>
double integrate(F f, double a, double b) {
  if (b <= a) return 0.0;
  const Gauss& g = gauss();
  double s = 0.0;
  for (int i = 0; i < 128; ++i) s += g.w[i] * f(a + (b - a) * g.x[i]);
  return s * (b - a);
}

// ---------------------------------------------------------------------------
// Harmonic chain, exact dispersion omega(theta) = 2 sin(theta/2).

// Per-site thermal energy of the infinite chain: (1/pi) int_0^pi omega nu dtheta.
// Moderate beta integrates in theta; large beta substitutes x = beta*omega so
// the 128-point rule resolves the thermal peak.
double harmonic_u_site(double beta) {
  if (std::isinf(beta)) return 0.0;
  if (beta <= 25.0) {
    auto f = [&](double theta) {
      const double w = 2.0 * std::sin(0.5 * theta);
      const double x = beta * w;
      return x > 45.0 ? 0.0 : w * bose(std::max(x, 1e-300));
    };
    return integrate(f, 0.0, kPi) / kPi;
  }
  auto f = [&](double x) {
    const double son = x / (2.0 * beta);  // sin(theta/2)
    const double c = std::sqrt(1.0 - son * son);
    return x * bose(x) / c;
  };
  return integrate(f, 0.0, 45.0) / (kPi * beta * beta);
}

// Boundary-site fluctuation S = m omega0^2 <q_b^2> (reduced units), infinite-n
// limit of the open-group mode sum (2/pi) int sin(t/2) cos^2(t/2) (2nu+1) dt.
double harmonic_s_site(double beta) {
  const double s_zp = 4.0 / (3.0 * kPi);
  if (std::isinf(beta)) return s_zp;
  if (beta <= 25.0) {
    auto f = [&](double theta) {
      const double son = std::sin(0.5 * theta);
      const double c = std::cos(0.5 * theta);
      const double x = 2.0 * beta * son;
      const double nu = x > 45.0 ? 0.0 : bose(std::max(x, 1e-300));
      return son * c * c * 2.0 * nu;
    };
    return s_zp + (2.0 / kPi) * integrate(f, 0.0, kPi);
  }
  auto f = [&](double x) {
    const double son = x / (2.0 * beta);
    const double c2 = 1.0 - son * son;
    return x * std::sqrt(c2) * bose(x);
  };
  return s_zp + (2.0 / (kPi * beta * beta)) * integrate(f, 0.0, 45.0);
}

class HarmonicExactEnsemble final : public GroupEnsemble {
 public:
  explicit HarmonicExactEnsemble(long long n) : n_(n) {
    if (n <= kHarmonicSumCap) {
      spectrum_ = harmonic_group_modes(static_cast<int>(n), 1.0);
      ground_ = spectrum_.ground_energy;
      m0_ = ground_ - n * (2.0 / kPi);
    } else {
      m0_ = 2.0 / kPi - 0.5;  // large-n limit of E_g(n) - n * 2/pi
      ground_ = n * (2.0 / kPi) + m0_;
    }
  }

  long long group_size() const override { return n_; }

  double thermal_energy(double beta) const override {
    if (beta <= 0) throw std::domain_error("harmonic ensemble: beta must be positive");
    if (n_ <= kHarmonicSumCap) return group_thermal_energy(spectrum_, beta);
    return n_ * harmonic_u_site(beta);
  }

  double max_thermal_energy() const override {
    return std::numeric_limits<double>::infinity();
  }

  double beta_for_energy(double e) const override {
    if (e < 0) throw std::domain_error("harmonic ensemble: negative energy");
    if (e == 0) return std::numeric_limits<double>::infinity();
    if (n_ <= kHarmonicSumCap) return beta_for_group_energy(spectrum_, e);
    double lo = std::log(1e-20), hi = std::log(1e22);
    for (int it = 0; it < 120; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (n_ * harmonic_u_site(std::exp(mid)) > e)
        lo = mid;
      else
        hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
  }

  double bond_variance(double e_left, double e_right) const override {
    return boundary_s(e_left) * boundary_s(e_right);
  }

  double ground_energy() const override { return ground_; }
  double surface_offset() const override { return m0_; }

 private:
  double boundary_s(double e) const {
    const double beta = beta_for_energy(e);
    if (n_ <= kHarmonicSumCap) {
      const Eigen::VectorXd occ = typical_state(spectrum_, e);
      return spectrum_.mean_q2_last(occ);
    }
    return harmonic_s_site(beta);
  }

  long long n_;
  GroupSpectrum spectrum_;
  double ground_ = 0.0;
  double m0_ = 0.0;
};

// ---------------------------------------------------------------------------
// Harmonic chain in the Debye approximation: uniform mode density up to the
// cutoff k_B Theta, bond width (Theta/2) coth(Theta / (2 T')).

double debye1(double y) {  // int_0^y x/(e^x - 1) dx
  if (y <= 0) return 0.0;
  const double full = kPi * kPi / 6.0;
  if (y > 45.0) return full;
  return integrate([](double x) { return x < 1e-8 ? 1.0 - 0.5 * x : x / std::expm1(x); },
                   0.0, y);
}

class DebyeEnsemble final : public GroupEnsemble {
 public:
  DebyeEnsemble(long long n, double theta) : n_(n), theta_(theta) {
    if (theta_ <= 0) throw std::invalid_argument("DebyeEnsemble: Theta must be positive");
  }

  long long group_size() const override { return n_; }

  double u_site(double t) const {  // thermal energy per site at temperature t
    if (t <= 0) return 0.0;
    return t * t / theta_ * debye1(theta_ / t);
  }

  double thermal_energy(double beta) const override {
    if (beta <= 0) throw std::domain_error("Debye ensemble: beta must be positive");
    if (std::isinf(beta)) return 0.0;
    return n_ * u_site(1.0 / beta);
  }

  double max_thermal_energy() const override {
    return std::numeric_limits<double>::infinity();
  }

  double beta_for_energy(double e) const override {
    if (e < 0) throw std::domain_error("Debye ensemble: negative energy");
    if (e == 0) return std::numeric_limits<double>::infinity();
    double lo = std::log(1e-22), hi = std::log(1e24);  // ln T'
    for (int it = 0; it < 120; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (n_ * u_site(std::exp(mid)) > e)
        hi = mid;
      else
        lo = mid;
    }
    return std::exp(-0.5 * (lo + hi));
  }

  double bond_variance(double e_left, double e_right) const override {
    return width(e_left) * width(e_right);
  }

  double ground_energy() const override { return n_ * theta_ / 4.0; }
  double surface_offset() const override { return 0.0; }

 private:
  double width(double e) const {
    const double h = theta_ / 2.0;
    if (e == 0) return h;
    const double beta = beta_for_energy(e);
    return h / std::tanh(h * beta);
  }

  long long n_;
  double theta_;
};

// ---------------------------------------------------------------------------
// Ising chain: open-group quasiparticles for moderate n, bulk dispersion
// Lambda(k) = 2 sqrt(B^2 + J^2 sin^2 k) beyond.

class IsingEnsemble final : public GroupEnsemble {
 public:
  IsingEnsemble(long long n, double coupling, double field)
      : n_(n), j_(coupling), b_(field) {
    if (n <= kIsingSumCap) {
      spectrum_ = ising_group_free_fermion(static_cast<int>(n), b_, j_);
      ground_ = spectrum_.ground_energy;
      max_e_ = spectrum_.modes.sum();
      m0_ = ground_ - n_ * e0_site();
    } else {
      // surface constant from a converged reference group
      const GroupSpectrum ref = ising_group_free_fermion(1024, b_, j_);
      m0_ = ref.ground_energy - 1024.0 * e0_site();
      ground_ = n_ * e0_site() + m0_;
      max_e_ = n_ * mean_lambda();
    }
  }

  long long group_size() const override { return n_; }

  double thermal_energy(double beta) const override {
    if (n_ <= kIsingSumCap) return group_thermal_energy(spectrum_, beta);
    if (std::isinf(beta)) return beta > 0 ? 0.0 : max_e_;
    auto f = [&](double k) {
      const double lam = lambda(k);
      const double x = beta * lam;
      const double e = std::exp(-std::abs(x));
      const double occ = x >= 0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
      return lam * occ;
    };
    return n_ / kPi * integrate(f, 0.0, kPi);
  }

  double max_thermal_energy() const override { return max_e_; }

  double beta_for_energy(double e) const override {
    if (n_ <= kIsingSumCap) return beta_for_group_energy(spectrum_, e);
    if (e < 0 || e > max_e_) throw std::domain_error("ising ensemble: energy out of range");
    if (e == 0) return std::numeric_limits<double>::infinity();
    if (e == max_e_) return -std::numeric_limits<double>::infinity();
    double lo = -1.0, hi = 1.0;
    while (thermal_energy(lo) < e) lo *= 2.0;
    while (thermal_energy(hi) > e) hi *= 2.0;
    for (int it = 0; it < 160; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (thermal_energy(mid) > e)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  double bond_variance(double e_left, double e_right) const override {
    if (n_ == 1 && j_ == 0.0) return 0.0;
    return 0.5 * j_ * j_ * (1.0 + sz_last(e_left) * sz_first(e_right));
  }

  double ground_energy() const override { return ground_; }
  double surface_offset() const override { return m0_; }

 private:
  double lambda(double k) const {
    const double s = std::sin(k);
    return 2.0 * std::sqrt(b_ * b_ + j_ * j_ * s * s);
  }

  double e0_site() const {  // full-chain ground energy per site
    return -0.5 / kPi * integrate([&](double k) { return lambda(k); }, 0.0, kPi);
  }

  double mean_lambda() const {
    return 1.0 / kPi * integrate([&](double k) { return lambda(k); }, 0.0, kPi);
  }

  double sz_bulk(double beta) const {
    auto f = [&](double k) {
      const double lam = lambda(k);
      return std::tanh(0.5 * beta * lam) * (2.0 * b_ / lam);
    };
    return 1.0 / kPi * integrate(f, 0.0, kPi);
  }

  double sz_first(double e) const {
    if (n_ <= kIsingSumCap)
      return spectrum_.mean_sz_first(typical_state(spectrum_, e));
    return sz_bulk(beta_for_energy(e));
  }

  double sz_last(double e) const {
    if (n_ <= kIsingSumCap)
      return spectrum_.mean_sz_last(typical_state(spectrum_, e));
    return sz_bulk(beta_for_energy(e));
  }

  long long n_;
  double j_, b_;
  GroupSpectrum spectrum_;
  double ground_ = 0.0;
  double m0_ = 0.0;
  double max_e_ = 0.0;
};

}  // namespace

std::unique_ptr<GroupEnsemble> make_harmonic_ensemble(long long n, HarmonicEval eval,
                                                      double theta) {
  if (n < 1) throw std::invalid_argument("make_harmonic_ensemble: n >= 1 required");
  if (eval == HarmonicEval::debye)
    return std::make_unique<DebyeEnsemble>(n, theta > 0 ? theta : 2.0);
  return std::make_unique<HarmonicExactEnsemble>(n);
}

std::unique_ptr<GroupEnsemble> make_ising_ensemble(long long n, double coupling,
                                                   double field) {
  if (n < 1) throw std::invalid_argument("make_ising_ensemble: n >= 1 required");
  if (field <= 0) throw std::invalid_argument("make_ising_ensemble: B > 0 required");
  return std::make_unique<IsingEnsemble>(n, coupling, field);
}

namespace {

class CachingFactory {
 public:
  explicit CachingFactory(std::function<std::unique_ptr<GroupEnsemble>(long long)> make)
      : make_(std::move(make)) {}

  std::shared_ptr<const GroupEnsemble> operator()(long long n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    std::shared_ptr<const GroupEnsemble> e(make_(n));
    cache_.emplace(n, e);
    return e;
  }

 private:
  std::function<std::unique_ptr<GroupEnsemble>(long long)> make_;
  std::map<long long, std::shared_ptr<const GroupEnsemble>> cache_;
  std::mutex mutex_;
};

}  // namespace

EnsembleFactory harmonic_ensemble_factory(HarmonicEval eval, double theta) {
  auto cache = std::make_shared<CachingFactory>(
      [eval, theta](long long n) { return make_harmonic_ensemble(n, eval, theta); });
  return [cache](long long n) { return (*cache)(n); };
}

EnsembleFactory ising_ensemble_factory(double coupling, double field) {
  auto cache = std::make_shared<CachingFactory>(
      [coupling, field](long long n) { return make_ising_ensemble(n, coupling, field); });
  return [cache](long long n) { return (*cache)(n); };
}

}  // namespace thermochain
