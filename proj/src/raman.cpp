#include "pars/raman.hpp"

#include <cmath>

namespace pars {

RamanGainResult gain_coefficient(const Scenario& s) {
  return gain_coefficient(s, s.options.linewidth);
}

RamanGainResult gain_coefficient(const Scenario& s, LinewidthConvention linewidth) {
  const auto& k = s.constants;
  const auto& p = s.particle;
  const double omega_s = s.laser.omega_stokes_rad_s;
  const double v_s = k.speed_of_light_m_s / s.laser.refractive_index_stokes;
  const double dnu =
      linewidth == LinewidthConvention::angular ? 2.0 * kPi * p.linewidth_hz : p.linewidth_hz;

  RamanGainResult r;
  r.linewidth = linewidth;
  r.stokes_velocity_m_s = v_s;
  r.population_factor = -std::expm1(-k.hbar_j_s * s.laser.raman_shift_rad_s() /
                                     (k.boltzmann_j_k * s.gas.temperature_k));
  r.gain_factor_m_per_w = 8.0 * kPi * kPi * p.active_density_per_m3 * v_s * v_s /
                          (k.hbar_j_s * omega_s * omega_s * omega_s * dnu) *
                          p.raman_cross_section_m2_sr * r.population_factor;
  r.gain_per_m = r.gain_factor_m_per_w * s.laser.effective_pump_w_m2();
  return r;
}

StokesGrowth stokes_amplification(double gain_per_m, double path_m, double n0) {
  if (path_m < 0.0) throw ModelError("stokes_amplification: negative path length");
  const double gz = gain_per_m * path_m;
  return {n0 * std::exp(gz), n0 * (1.0 + gz), std::abs(gz) <= 0.01};
}

HeatSourceDensity heat_source_density(const Scenario& s, const RamanGainResult& gain) {
  const auto& p = s.particle;
  const double total = p.gamma_collisional_per_s + p.gamma_radiative_per_s;
  if (!(total > 0.0)) throw ModelError("BothDecayRatesZero: collisional and radiative rates are zero");

  HeatSourceDensity h;
  h.branching = p.gamma_collisional_per_s / total;
  h.shift_ratio = s.laser.raman_shift_rad_s() / s.laser.omega_stokes_rad_s;
  h.stokes_gain_rate_w_m3 =
      gain.gain_factor_m_per_w * s.laser.effective_pump_w_m2() * s.laser.effective_stokes_w_m2();
  h.absorbed_rate_w_m3 = h.shift_ratio * h.stokes_gain_rate_w_m3;
  h.h_r_w_m3 = h.branching * h.absorbed_rate_w_m3;
  return h;
}

StokesGrowth spore_scale_gain(const Scenario& s, const RamanGainResult& gain) {
  return stokes_amplification(gain.gain_per_m, 2.0 * s.particle.equivalent_radius_m(), 1.0);
}

}  // namespace pars
