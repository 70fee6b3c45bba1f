#include "pars/presets.hpp"

#include <cmath>

#include "pars/scenario_io.hpp"

namespace pars {

GasProperties air_stp() {
  GasProperties g;
  g.pressure_pa = 101325.0;
  g.temperature_k = 300.0;
  g.density_kg_m3 = 1.3;
  g.gamma = 1.4;
  g.molecule_mass_kg = 28.0 * kAtomicMassUnit;
  return g;
}

DetectorNoiseSpec condenser_microphone() {
  DetectorNoiseSpec d;
  d.omega_noise_mode_rad_s = 4.0e4;
  d.gamma_noise_per_s = 5.0e4;
  d.gamma_signal_per_s = 100.0;
  return d;
}

Scenario anthrax_stp() {
  Scenario s;
  s.gas = air_stp();

  s.cell.length_m = 0.1;
  s.cell.radius_m = std::sqrt(1.0e-8 / (kPi * s.cell.length_m));
  s.cell.detector_coverage = 1.0;

  s.laser.omega_stokes_rad_s = 2.0 * kPi * 4.0e14;
  s.laser.omega_pump_rad_s = s.laser.omega_stokes_rad_s + 1.0e14;
  s.laser.intensity_pump_w_m2 = 1.0e12;
  s.laser.intensity_stokes_w_m2 = 1.0e12;
  s.laser.refractive_index_stokes = 1.0;
  s.laser.modulation_omega_rad_s = 100.0;

  s.particle.volume_m3 = 2.0e-18;
  s.particle.molecule_count = 1.0e12;
  s.particle.raman_fraction = 0.1;
  s.particle.active_density_per_m3 = 4.0e26;
  s.particle.raman_cross_section_m2_sr = 32.5e-34;
  s.particle.linewidth_hz = 6.45e10;
  s.particle.gamma_collisional_per_s = 1.0e12;
  s.particle.gamma_radiative_per_s = 1.0e3;
  s.particle.molar_heat_j_mol_k = 4.2;

  s.detector = condenser_microphone();
  return s;
}

namespace {

std::vector<Preset> build() {
  std::vector<Preset> out;

  Preset anthrax{"anthrax_stp", "anthrax spores in air at STP, 1e12 W/m^2 pump and Stokes", {}, anthrax_stp()};
  anthrax.notes = {
      "spore 1 x 2 x 1 um^3, V_S = 2e-18 m^3, N_S = 1e12 molecules",
      "Raman-active dipicolinic acid, 17% by weight; f_R = 0.1",
      "benzene surrogate: dsigma/dOmega = 32.5e-34 m^2/sr, dnu = 6.45e10 Hz, N = 4e26 m^-3",
      "Raman shift w_p - w_s = 1e14 rad/s, Stokes at 4e14 Hz",
      "Gamma_c = 1e12 /s, Gamma_r = 1e3 /s (non-radiative decay dominates)",
      "c_v = 4.2 J/(mol K)",
      "cell l = 0.1 m, V = 1e-8 m^3; air_stp gas; condenser microphone detector",
      "modulation 100 rad/s",
  };
  out.push_back(anthrax);

  Preset high{"anthrax_high_intensity", "anthrax_stp at 1e16 W/m^2, the air breakdown limit", {},
              anthrax_stp()};
  high.scenario.laser.intensity_pump_w_m2 = 1.0e16;
  high.scenario.laser.intensity_stokes_w_m2 = 1.0e16;
  high.notes = {"as anthrax_stp with I_p = I_s = 1e16 W/m^2 (cascade breakdown of air)"};
  out.push_back(high);

  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  std::string names;
  for (const auto& p : presets()) names += (names.empty() ? "" : ", ") + p.name;
  throw InputError("unknown preset '" + std::string(name) + "' (available: " + names + ")");
}

}  // namespace pars
