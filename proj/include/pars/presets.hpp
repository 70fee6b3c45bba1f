#pragma once

// Bundled scenarios and reusable blocks.

#include <string>
#include <string_view>
#include <vector>

#include "pars/quantities.hpp"

namespace pars {

struct Preset {
  std::string name;
  std::string summary;
  std::vector<std::string> notes;  // where each number comes from
  Scenario scenario;
};

/// Dry air at 1 atm and 300 K.
GasProperties air_stp();

/// Microphone-limited detector: w_1 = 4e4 rad/s, Gamma_n = 5e4 /s, Gamma_s = 100 /s.
DetectorNoiseSpec condenser_microphone();

/// Anthrax spores in air, benzene-like Raman response.
Scenario anthrax_stp();

const std::vector<Preset>& presets();

/// Throws InputError for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace pars
