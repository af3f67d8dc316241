#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "thermochain/materials.hpp"
#include "thermochain/report.hpp"
#include "thermochain/units.hpp"

using namespace thermochain;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(bool(f));
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("curve CSV is byte-identical across runs") {
  CurveConfig cfg;
  cfg.model = Model::ising;
  cfg.coupling = 0.1;
  cfg.tmin = 0.5;
  cfg.tmax = 100.0;
  cfg.points = 6;
  cfg.threads = 2;
  const std::string a = curve_csv(nmin_curve(cfg));
  cfg.threads = 1;  // worker count must not affect the bytes
  const std::string b = curve_csv(nmin_curve(cfg));
  CHECK(a == b);
  CHECK(a.rfind("T_over_scale,nmin_cond16,nmin_cond18,nmin,binding_condition\n", 0) == 0);
  // high-temperature Ising rows report single-spin groups
  CHECK(a.find("1.00000000e+02,1,1,1,both") != std::string::npos);
}

TEST_CASE("curve rows carry the above_cap sentinel when the scan is capped") {
  CurveConfig cfg;
  cfg.model = Model::ising;
  cfg.coupling = 10.0;
  cfg.tmin = 0.001;
  cfg.tmax = 0.002;
  cfg.points = 2;
  cfg.ncap = 1 << 10;
  const std::string csv = curve_csv(nmin_curve(cfg));
  CHECK(csv.find("above_cap") != std::string::npos);
}

TEST_CASE("harmonic curve matches the closed-form estimates at the extremes") {
  CurveConfig cfg;
  cfg.model = Model::harmonic;
  cfg.tmin = 1e-2;
  cfg.tmax = 1e2;
  cfg.points = 5;
  const auto rows = nmin_curve(cfg);
  REQUIRE(rows.size() == 5);
  // top of the grid: plateau near 2 alpha / delta
  CHECK(std::abs(double(rows.back().nmin) - 2000.0) / 2000.0 < 0.30);
  // bottom of the grid: within a factor two of the low-temperature branch
  const double est = asymptotic_nmin(1e-2, 1.0, cfg.alpha, cfg.delta);
  CHECK(double(rows.front().nmin) > est / 2.0);
  CHECK(double(rows.front().nmin) < est * 2.0);
}

TEST_CASE("scientific formatting uses nine significant digits") {
  CHECK(format_sci(1.0) == "1.00000000e+00");
  CHECK(format_sci(12345.6789) == "1.23456789e+04");
  CHECK(format_sci(-0.000123456789) == "-1.23456789e-04");
}

TEST_CASE("materials parsing") {
  SUBCASE("shipped table") {
    const MaterialParseResult res =
        load_materials(std::string(THERMOCHAIN_SOURCE_DIR) + "/data/materials.csv");
    REQUIRE(res.records.size() == 3);
    CHECK(res.row_errors.empty());
    CHECK(res.records[0].name == "iron");
    CHECK(res.records[2].debye_temperature_k == doctest::Approx(645.0));
  }
  SUBCASE("malformed rows are reported with line numbers and skipped") {
    const std::string text =
        "name,debye_temperature_K,lattice_spacing_angstrom\n"
        "iron,470,2.5\n"
        "broken,not_a_number,2.0\n"
        "zeolite,0,1.0\n"
        "carbon,2230,1.5\n"
        "short_row,12\n";
    const MaterialParseResult res = parse_materials_csv(text);
    CHECK(res.records.size() == 2);
    REQUIRE(res.row_errors.size() == 3);
    CHECK(res.row_errors[0].find("line 3") != std::string::npos);
    CHECK(res.row_errors[1].find("line 4") != std::string::npos);
    CHECK(res.row_errors[2].find("line 6") != std::string::npos);
  }
  SUBCASE("zero lattice spacing is rejected") {
    const MaterialParseResult res =
        parse_materials_csv("name,debye_temperature_K,lattice_spacing_angstrom\nx,100,0\n");
    CHECK(res.records.empty());
    REQUIRE(res.row_errors.size() == 1);
    CHECK(res.row_errors[0].find("line 2") != std::string::npos);
  }
}

TEST_CASE("material estimates") {
  SUBCASE("silicon at 1 K lands near ten centimetres") {
    const MaterialRecord si{"silicon", 645.0, 2.4};
    const MaterialEstimate est = estimate_material(si, 1.0, 10.0, 0.01);
    CHECK(est.lmin_m == doctest::Approx(0.0979).epsilon(0.01));
    REQUIRE(est.reference_lmin_m.has_value());
    CHECK(*est.reference_lmin_m == doctest::Approx(0.10));
    CHECK_FALSE(est.deviates_from_reference);
  }
  SUBCASE("hot iron deviates from the quoted figure and is flagged") {
    const MaterialRecord fe{"iron", 470.0, 2.5};
    const MaterialEstimate est = estimate_material(fe, 4700.0, 10.0, 0.01);
    CHECK(est.nmin_asymptotic == doctest::Approx(2000.0));
    CHECK(est.lmin_m == doctest::Approx(2000.0 * 2.5e-10).epsilon(1e-12));
    REQUIRE(est.reference_lmin_m.has_value());
    CHECK(est.deviates_from_reference);
    CHECK_FALSE(est.note.empty());
  }
  SUBCASE("carbon at room temperature is flagged as well") {
    const MaterialRecord c{"carbon", 2230.0, 1.5};
    const MaterialEstimate est = estimate_material(c, 270.0, 10.0, 0.01);
    CHECK(est.deviates_from_reference);
  }
  SUBCASE("unit round trip: angstrom input to metre output") {
    const MaterialRecord rec{"custom", 400.0, 3.0};
    const MaterialEstimate est = estimate_material(rec, 800.0, 10.0, 0.01);
    const double expected_m = est.nmin_asymptotic * 3.0 * units::angstrom;
    CHECK(est.lmin_m == doctest::Approx(expected_m).epsilon(1e-12));
  }
}

TEST_CASE("material CSV rendering is deterministic") {
  const MaterialRecord si{"silicon", 645.0, 2.4};
  std::vector<MaterialEstimate> rows{estimate_material(si, 1.0, 10.0, 0.01)};
  const std::string a = material_csv(rows);
  const std::string b = material_csv(rows);
  CHECK(a == b);
  CHECK(a.find("silicon") != std::string::npos);
  CHECK(a.find("6.45000000e+02") != std::string::npos);
}

TEST_CASE("command-line binary end to end") {
  const std::string bin = THERMOCHAIN_BINARY;
  const std::string dir = std::string(THERMOCHAIN_SOURCE_DIR);

  SUBCASE("asymptotic subcommand") {
    const std::string cmd = bin + " asymptotic --t 2 --theta 1 > /tmp/tc_asym.json";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string out = slurp("/tmp/tc_asym.json");
    CHECK(out.find("2000.0") != std::string::npos);
  }
  SUBCASE("nmin-curve subcommand writes deterministic CSV") {
    const std::string args =
        " nmin-curve --model ising --j 0.1 --tmin 1 --tmax 100 --points 4";
    REQUIRE(std::system((bin + args + " --out /tmp/tc_c1.csv").c_str()) == 0);
    REQUIRE(std::system((bin + args + " --out /tmp/tc_c2.csv").c_str()) == 0);
    CHECK(slurp("/tmp/tc_c1.csv") == slurp("/tmp/tc_c2.csv"));
  }
  SUBCASE("material subcommand emits CSV and JSON") {
    const std::string cmd = bin + " material --file " + dir +
                            "/data/materials.csv --t 1 --out /tmp/tc_mat";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string csv = slurp("/tmp/tc_mat.csv");
    const std::string js = slurp("/tmp/tc_mat.json");
    CHECK(csv.find("silicon") != std::string::npos);
    CHECK(js.find("reference_lmin_m") != std::string::npos);
  }
  SUBCASE("input errors exit with code 2") {
    const int rc = std::system((bin + " material --file /nonexistent.csv --t 1"
                                      " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == 2);
  }
  SUBCASE("capability errors exit with code 3") {
    const int rc = std::system((bin + " verify --spins 16 --beta 0.5"
                                      " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == 3);
  }
  SUBCASE("options can come from a config file with flag overrides") {
    std::ofstream ini("/tmp/tc_cfg.ini");
    ini << "[asymptotic]\nt=2\ntheta=1\ndelta=0.01\n";
    ini.close();
    const std::string cmd =
        bin + " --config /tmp/tc_cfg.ini asymptotic --alpha 20 > /tmp/tc_cfg.json";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string out = slurp("/tmp/tc_cfg.json");
    CHECK(out.find("4000.0") != std::string::npos);  // 2 alpha/delta with alpha = 20
  }
  SUBCASE("exact harmonic evaluator is selectable") {
    const std::string cmd = bin +
        " nmin-curve --model harmonic --harmonic-eval exact --tmin 5 --tmax 10"
        " --points 2 --out /tmp/tc_exact.csv";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string csv = slurp("/tmp/tc_exact.csv");
    // high-temperature plateau also emerges from the exact mode sums
    CHECK(csv.find("cond18") != std::string::npos);
  }
  SUBCASE("verify subcommand reports the oracle properties") {
    const std::string cmd = bin + " verify --spins 8 --j 0.1 --beta 0.5"
                                  " --out /tmp/tc_verify.json";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string js = slurp("/tmp/tc_verify.json");
    CHECK(js.find("\"trace_ok\": true") != std::string::npos);
    CHECK(js.find("\"psd_ok\": true") != std::string::npos);
    CHECK(js.find("diagonal_vs_erfc") != std::string::npos);
    CHECK(js.find("reduced_vs_canonical") != std::string::npos);
  }
}
