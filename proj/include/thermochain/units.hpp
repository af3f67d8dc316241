#pragma once

// Internal computations use reduced units: hbar = k_B = 1 and the model energy
// scale (hbar*omega0 for oscillator chains, the field B for spin chains) set to
// one.  SI constants appear only where kelvin / metre quantities cross the
// library boundary (material estimates).

namespace thermochain::units {

inline constexpr double k_boltzmann = 1.380649e-23;          // J / K
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double angstrom = 1.0e-10;                  // m

inline double angstrom_to_metre(double a) { return a * angstrom; }

}  // namespace thermochain::units
