#include "thermochain/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace thermochain {

void CurveConfig::validate() const {
  AccuracyParams{alpha, delta}.validate();
  if (!(tmin > 0) || !(tmax > tmin))
    throw std::invalid_argument("CurveConfig: need 0 < tmin < tmax");
  if (points < 2) throw std::invalid_argument("CurveConfig: need at least 2 grid points");
  if (ncap < 1) throw std::invalid_argument("CurveConfig: n cap must be >= 1");
  if (model == Model::ising && field <= 0)
    throw std::invalid_argument("CurveConfig: field must be positive");
}

std::vector<CurveRow> nmin_curve(const CurveConfig& cfg) {
  cfg.validate();
  const AccuracyParams acc{cfg.alpha, cfg.delta};

  EnsembleFactory factory;
  double scale;  // energy scale multiplying the reduced temperature grid
  if (cfg.model == Model::harmonic) {
    const double theta = cfg.theta > 0 ? cfg.theta : 2.0;
    factory = harmonic_ensemble_factory(cfg.harmonic_eval, theta);
    scale = theta;
  } else {
    factory = ising_ensemble_factory(cfg.coupling / cfg.field, 1.0);
    scale = 1.0;  // reduced units: B = 1
  }

  std::vector<CurveRow> rows(cfg.points);
  const double ratio = cfg.tmax / cfg.tmin;

  auto compute = [&](int i) {
    const double t = cfg.points == 1
                         ? cfg.tmin
                         : cfg.tmin * std::pow(ratio, double(i) / (cfg.points - 1));
    const double beta = 1.0 / (t * scale);
    const NminResult r = minimal_group_size(factory, beta, acc, cfg.ncap);
    CurveRow row;
    row.t = t;
    row.n16 = r.n16;
    row.n18 = r.n18;
    row.nmin = r.nmin;
    row.binding = r.binding;
    rows[i] = row;
  };

  int workers = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, cfg.points);
  if (workers == 1) {
    for (int i = 0; i < cfg.points; ++i) compute(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int i = w; i < cfg.points; i += workers) compute(i);
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

namespace {

std::string cell(long long n) {
  return n < 0 ? std::string("above_cap") : std::to_string(n);
}

}  // namespace

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::ostringstream out;
  out << "T_over_scale,nmin_cond16,nmin_cond18,nmin,binding_condition\n";
  for (const CurveRow& r : rows)
    out << format_sci(r.t) << ',' << cell(r.n16) << ',' << cell(r.n18) << ','
        << cell(r.nmin) << ',' << r.binding << '\n';
  return out.str();
}

std::string material_csv(const std::vector<MaterialEstimate>& rows) {
  std::ostringstream out;
  out << "name,debye_temperature_K,lattice_spacing_angstrom,temperature_K,"
         "nmin_asymptotic,lmin_m,nmin_full,lmin_full_m,reference_lmin_m,"
         "deviates_from_reference\n";
  for (const MaterialEstimate& e : rows) {
    out << e.material.name << ',' << format_sci(e.material.debye_temperature_k) << ','
        << format_sci(e.material.lattice_spacing_angstrom) << ','
        << format_sci(e.temperature_k) << ',' << format_sci(e.nmin_asymptotic) << ','
        << format_sci(e.lmin_m) << ',';
    if (e.nmin_full)
      out << format_sci(*e.nmin_full) << ',' << format_sci(*e.lmin_full_m) << ',';
    else
      out << "n/a,n/a,";
    if (e.reference_lmin_m)
      out << format_sci(*e.reference_lmin_m);
    else
      out << "n/a";
    out << ',' << (e.deviates_from_reference ? "yes" : "no") << '\n';
  }
  return out.str();
}

}  // namespace thermochain
