#pragma once

#include <optional>
#include <string>
#include <vector>

// Material records (Debye temperature, lattice spacing) and the minimal
// physical length l_min = n_min * a0 they imply at a given temperature.

namespace thermochain {

struct MaterialRecord {
  std::string name;
  double debye_temperature_k = 0.0;  // kelvin
  double lattice_spacing_angstrom = 0.0;
};

struct MaterialParseResult {
  std::vector<MaterialRecord> records;
  std::vector<std::string> row_errors;  // "line N: message", parsing continues
};

// CSV with header: name,debye_temperature_K,lattice_spacing_angstrom
MaterialParseResult load_materials(const std::string& path);
MaterialParseResult parse_materials_csv(const std::string& text);

struct MaterialEstimate {
  MaterialRecord material;
  double temperature_k = 0.0;
  double nmin_asymptotic = 0.0;
  double lmin_m = 0.0;
  // full-condition scan values, present unless the scan exceeded its cap
  std::optional<double> nmin_full;
  std::optional<double> lmin_full_m;
  // reference values quoted for this material in the literature table; the
  // flag marks computed estimates deviating from them by more than 2x
  std::optional<double> reference_lmin_m;
  std::optional<double> reference_temperature_k;
  bool deviates_from_reference = false;
  std::string note;
};

MaterialEstimate estimate_material(const MaterialRecord& rec, double temperature_k,
                                   double alpha, double delta,
                                   bool with_full_conditions = false);

}  // namespace thermochain
