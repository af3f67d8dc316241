// thermochain: minimal length scales for local temperature in 1D chains.
//
// Subcommands:
//   nmin-curve  minimal group size across a temperature grid (CSV)
//   asymptotic  closed-form n_min estimate at one temperature
//   material    length-scale table for tabulated materials (CSV + JSON)
//   verify      dense verification run on a small spin chain (JSON)
//
// Exit codes: 0 success, 2 input error, 3 capability error.

#include <algorithm>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "thermochain/chain.hpp"
#include "thermochain/criteria.hpp"
#include "thermochain/materials.hpp"
#include "thermochain/oracle.hpp"
#include "thermochain/report.hpp"
#include "thermochain/spectra.hpp"

using nlohmann::json;
using namespace thermochain;

namespace {

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + path);
  f << text;
}

int run_nmin_curve(const CurveConfig& cfg, const std::string& out) {
  const std::vector<CurveRow> rows = nmin_curve(cfg);
  write_file(out, curve_csv(rows));
  return 0;
}

int run_asymptotic(double t, double theta, double alpha, double delta) {
  const double n = asymptotic_nmin(t, theta, alpha, delta);
  json j;
  j["temperature"] = t;
  j["debye_temperature"] = theta;
  j["alpha"] = alpha;
  j["delta"] = delta;
  j["branch"] = t > theta ? "high_temperature" : "low_temperature";
  j["nmin_estimate"] = n;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_material(const std::string& file, double t, double alpha, double delta,
                 const std::string& out_base) {
  const MaterialParseResult parsed = load_materials(file);
  for (const std::string& err : parsed.row_errors)
    std::cerr << "material file: " << err << "\n";
  std::vector<MaterialEstimate> rows;
  rows.reserve(parsed.records.size());
  for (const MaterialRecord& rec : parsed.records)
    rows.push_back(estimate_material(rec, t, alpha, delta, /*with_full_conditions=*/true));

  json j = json::array();
  for (const MaterialEstimate& e : rows) {
    json r;
    r["name"] = e.material.name;
    r["debye_temperature_K"] = e.material.debye_temperature_k;
    r["lattice_spacing_angstrom"] = e.material.lattice_spacing_angstrom;
    r["temperature_K"] = e.temperature_k;
    r["nmin_asymptotic"] = e.nmin_asymptotic;
    r["lmin_m"] = e.lmin_m;
    if (e.nmin_full) {
      r["nmin_full"] = *e.nmin_full;
      r["lmin_full_m"] = *e.lmin_full_m;
    }
    if (e.reference_lmin_m) {
      r["reference_lmin_m"] = *e.reference_lmin_m;
      r["deviates_from_reference"] = e.deviates_from_reference;
      if (!e.note.empty()) r["note"] = e.note;
    }
    j.push_back(r);
  }
  if (out_base.empty() || out_base == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    write_file(out_base + ".csv", material_csv(rows));
    write_file(out_base + ".json", j.dump(2) + "\n");
  }
  return 0;
}

int run_verify(int sites, int group_size, double field, double coupling, double beta,
               const std::string& out) {
  if (sites > dense_spin_cap)
    throw capability_error("verify: dense runs are limited to " +
                           std::to_string(dense_spin_cap) + " spins");
  if (sites % group_size != 0)
    throw std::invalid_argument("verify: group size must divide the number of spins");
  const int groups = sites / group_size;
  if (groups < 3)
    throw std::invalid_argument("verify: need at least three groups");
  const ChainSpec spec =
      build_chain(Model::ising, IsingParams{field, coupling}, groups, group_size);
  const PartitionedHamiltonian part = partition(spec);
  const Eigen::MatrixXd h = dense_hamiltonian(spec);
  const GibbsState gibbs = exact_gibbs(h, beta);

  std::vector<GroupSpectrum> spectra;
  spectra.reserve(groups);
  for (int mu = 0; mu < groups; ++mu)
    spectra.push_back(dense_group_eigensystem(part.dense_group(mu), Model::ising, group_size));

  json rep;
  rep["model"] = "ising";
  rep["spins"] = sites;
  rep["group_size"] = group_size;
  rep["field"] = field;
  rep["coupling"] = coupling;
  rep["beta"] = beta;

  {
    json g;
    const Eigen::MatrixXd rho = gibbs.dense_rho();
    const double trace = rho.trace();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
    g["trace"] = trace;
    g["min_eigenvalue"] = es.eigenvalues()(0);
    g["trace_ok"] = std::abs(trace - 1.0) < 1e-12;
    g["psd_ok"] = es.eigenvalues()(0) > -1e-12;
    rep["gibbs"] = g;
  }
  {
    const ErfcComparison cmp = diagonal_vs_erfc(gibbs, spectra, part);
    json e;
    e["median_rel_log_error"] = cmp.median_rel_log_error;
    e["median_upper_edge_shift"] = cmp.median_upper_edge_shift;
    e["max_upper_edge_shift"] = cmp.max_upper_edge_shift;
    e["pass"] = cmp.median_rel_log_error < 0.05;
    rep["diagonal_vs_erfc"] = e;
  }
  {
    // moments of the energy distribution in a fixed off-balance product state
    std::vector<int> label(groups, 0);
    for (int mu = 0; mu < groups; ++mu) label[mu] = mu % 4 == 3 ? 1 : 0;
    const ProductState st = product_from_dense(spectra, label);
    const Eigen::VectorXd v = product_state_vector(spectra, st);
    const SpectralDistribution sd = clt_moments(h, st.total_energy(), v);
    json c;
    c["variance"] = sd.variance;
    c["skewness"] = sd.skewness;
    c["excess_kurtosis"] = sd.excess_kurtosis;
    c["variance_nonnegative"] = sd.variance >= -1e-12;
    rep["clt_moments"] = c;
  }
  {
    const OffDiagonalProfile prof = off_diagonal_profile(gibbs, spectra, part);
    json o;
    o["median_diagonal"] = prof.median_diagonal;
    o["max_diagonal"] = prof.max_diagonal;
    o["max_offdiagonal"] = prof.max_offdiagonal;
    o["max_beyond_ratio_2"] = prof.max_beyond(2.0);
    o["max_normalized_coherence"] = prof.max_norm_beyond(0.0);
    o["suppressed_beyond_ratio_2"] = prof.max_beyond(2.0) <= 0.1 * prof.max_diagonal;
    rep["off_diagonal"] = o;
  }
  {
    json arr = json::array();
    for (int mu = 0; mu < std::min(groups, 1); ++mu) {
      const CanonicalComparison cc = reduced_vs_canonical(gibbs, part, mu, beta);
      json r;
      r["group"] = mu;
      r["distance_at_global_beta"] = cc.distance;
      r["best_beta"] = cc.best_beta;
      r["best_distance"] = cc.best_distance;
      arr.push_back(r);
    }
    rep["reduced_vs_canonical"] = arr;
  }

  write_file(out, rep.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal length scales for local temperature in 1D chains"};
  app.require_subcommand(1);
  app.set_config("--config");

  // nmin-curve
  auto* curve = app.add_subcommand("nmin-curve", "n_min over a temperature grid (CSV)");
  std::string model = "harmonic";
  CurveConfig cfg;
  std::string curve_out = "-";
  std::string harmonic_eval = "debye";
  curve->add_option("--model", model, "harmonic | ising")
      ->check(CLI::IsMember({"harmonic", "ising"}));
  curve->add_option("--alpha", cfg.alpha, "energy window factor (> 1)");
  curve->add_option("--delta", cfg.delta, "linearity tolerance in (0,1)");
  curve->add_option("--tmin", cfg.tmin, "grid start, units of Theta (harmonic) or B");
  curve->add_option("--tmax", cfg.tmax, "grid end");
  curve->add_option("--points", cfg.points, "number of grid points (>= 2)");
  curve->add_option("--j", cfg.coupling, "Ising coupling J");
  curve->add_option("--b", cfg.field, "Ising field B");
  curve->add_option("--theta", cfg.theta, "harmonic Debye temperature (reduced units)");
  curve->add_option("--ncap", cfg.ncap, "group-size search cap");
  curve->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
  curve->add_option("--harmonic-eval", harmonic_eval, "debye | exact")
      ->check(CLI::IsMember({"debye", "exact"}));
  curve->add_option("--out", curve_out, "output CSV path (- = stdout)");

  // asymptotic
  auto* asym = app.add_subcommand("asymptotic", "closed-form n_min estimate");
  double a_t = 1.0, a_theta = 1.0, a_alpha = 10.0, a_delta = 0.01;
  asym->add_option("--t", a_t, "temperature")->required();
  asym->add_option("--theta", a_theta, "Debye temperature (same units as --t)")->required();
  asym->add_option("--alpha", a_alpha, "energy window factor");
  asym->add_option("--delta", a_delta, "linearity tolerance");

  // material
  auto* mat = app.add_subcommand("material", "length-scale table for materials");
  std::string mat_file = "data/materials.csv";
  double m_t = 300.0, m_alpha = 10.0, m_delta = 0.01;
  std::string mat_out;
  mat->add_option("--file", mat_file, "materials CSV");
  mat->add_option("--t", m_t, "temperature in kelvin")->required();
  mat->add_option("--alpha", m_alpha, "energy window factor");
  mat->add_option("--delta", m_delta, "linearity tolerance");
  mat->add_option("--out", mat_out, "output base path (writes .csv and .json)");

  // verify
  auto* ver = app.add_subcommand("verify", "dense verification run (spin chains)");
  int v_sites = 10, v_group = 1;
  double v_field = 1.0, v_coupling = 0.1, v_beta = 0.5;
  std::string ver_out = "-";
  ver->add_option("--spins", v_sites, "number of spins (<= 14)");
  ver->add_option("--group-size", v_group, "sites per group");
  ver->add_option("--b", v_field, "field B");
  ver->add_option("--j", v_coupling, "coupling J");
  ver->add_option("--beta", v_beta, "inverse temperature");
  ver->add_option("--out", ver_out, "output JSON path (- = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (curve->parsed()) {
      cfg.model = model == "harmonic" ? Model::harmonic : Model::ising;
      cfg.harmonic_eval =
          harmonic_eval == "debye" ? HarmonicEval::debye : HarmonicEval::exact;
      return run_nmin_curve(cfg, curve_out);
    }
    if (asym->parsed()) return run_asymptotic(a_t, a_theta, a_alpha, a_delta);
    if (mat->parsed()) return run_material(mat_file, m_t, m_alpha, m_delta, mat_out);
    if (ver->parsed()) return run_verify(v_sites, v_group, v_field, v_coupling, v_beta, ver_out);
  } catch (const capability_error& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
