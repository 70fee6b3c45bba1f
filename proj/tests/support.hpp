#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "pars/presets.hpp"
#include "pars/quantities.hpp"

namespace pars::testing {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Uniform draw on a log scale between lo and hi.
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

/// A valid scenario with every physical input perturbed around the anthrax preset.
inline Scenario random_scenario(std::mt19937_64& rng) {
  Scenario s = anthrax_stp();
  s.gas.pressure_pa = log_uniform(rng, 1e4, 1e6);
  s.gas.temperature_k = log_uniform(rng, 100.0, 1000.0);
  s.gas.density_kg_m3 = log_uniform(rng, 0.1, 10.0);
  s.gas.gamma = 1.0 + log_uniform(rng, 0.05, 0.7);
  s.cell.length_m = log_uniform(rng, 0.01, 1.0);
  s.cell.radius_m = log_uniform(rng, 1e-5, 1e-2);
  s.laser.omega_stokes_rad_s = log_uniform(rng, 1e14, 1e16);
  s.laser.omega_pump_rad_s = s.laser.omega_stokes_rad_s + log_uniform(rng, 1e12, 1e14);
  s.laser.intensity_pump_w_m2 = log_uniform(rng, 1e8, 1e15);
  s.laser.intensity_stokes_w_m2 = log_uniform(rng, 1e8, 1e15);
  s.laser.modulation_omega_rad_s = log_uniform(rng, 1.0, 1e3);
  s.particle.volume_m3 = log_uniform(rng, 1e-19, 1e-16);
  s.particle.molecule_count = log_uniform(rng, 1e10, 1e14);
  s.particle.raman_fraction = log_uniform(rng, 0.01, 1.0);
  s.particle.active_density_per_m3 = log_uniform(rng, 1e25, 1e28);
  s.particle.raman_cross_section_m2_sr = log_uniform(rng, 1e-35, 1e-32);
  s.particle.linewidth_hz = log_uniform(rng, 1e9, 1e12);
  s.particle.gamma_collisional_per_s = log_uniform(rng, 1e9, 1e13);
  s.particle.gamma_radiative_per_s = log_uniform(rng, 1.0, 1e9);
  s.particle.molar_heat_j_mol_k = log_uniform(rng, 1.0, 100.0);
  s.detector.omega_noise_mode_rad_s = log_uniform(rng, 1e4, 1e5);
  s.detector.gamma_noise_per_s = log_uniform(rng, 1e3, 1e5);
  s.detector.gamma_signal_per_s = log_uniform(rng, 10.0, 1e3);
  return s;
}

}  // namespace pars::testing
