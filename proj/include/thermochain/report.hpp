#pragma once

#include <string>
#include <vector>

#include "thermochain/criteria.hpp"
#include "thermochain/materials.hpp"

// Deterministic row generation and CSV rendering for the CLI front end.
// Floats are printed in scientific notation with 9 significant digits; rows
// are emitted in grid order regardless of which worker computed them.

namespace thermochain {

struct CurveConfig {
  Model model = Model::harmonic;
  double alpha = 10.0;
  double delta = 0.01;
  double tmin = 1e-4;  // temperature grid in units of Theta (harmonic) or B (Ising)
  double tmax = 1e4;
  int points = 25;
  double coupling = 0.1;  // J (Ising)
  double field = 1.0;     // B (Ising)
  double theta = 0.0;     // harmonic Theta in reduced units; 0 = band-edge default
  long long ncap = default_nmin_cap;
  HarmonicEval harmonic_eval = HarmonicEval::debye;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct CurveRow {
  double t = 0.0;  // T over the model scale
  long long n16 = -1;
  long long n18 = -1;
  long long nmin = -1;  // -1 = above cap
  std::string binding;
};

std::vector<CurveRow> nmin_curve(const CurveConfig& cfg);

std::string format_sci(double v);  // scientific, 9 significant digits
std::string curve_csv(const std::vector<CurveRow>& rows);
std::string material_csv(const std::vector<MaterialEstimate>& rows);

}  // namespace thermochain
