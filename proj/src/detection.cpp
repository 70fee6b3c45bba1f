#include "pars/detection.hpp"

#include <algorithm>
#include <cmath>

namespace pars {

const char* to_string(Warning w) {
  switch (w) {
    case Warning::breakdown: return "Breakdown";
    case Warning::timescales_not_separated: return "TimescalesNotSeparated";
    case Warning::modulation_not_small: return "ModulationNotSmall";
    case Warning::sparse_regime: return "SparseRegime";
    case Warning::small_gain_invalid: return "SmallGainInvalid";
  }
  return "Unknown";
}

std::vector<Warning> decode_warnings(std::uint32_t bits) {
  std::vector<Warning> out;
  for (std::uint32_t bit = 1; bit <= static_cast<std::uint32_t>(Warning::small_gain_invalid); bit <<= 1)
    if (bits & bit) out.push_back(static_cast<Warning>(bit));
  return out;
}

double available_power_density(double rho_s, double eta, double h_r, double volume_vs) {
  return rho_s * eta * h_r * volume_vs;
}

BreakdownCheck breakdown_guard(const LaserDrive& laser, double threshold) {
  BreakdownCheck b;
  b.threshold_w_m2 = threshold;
  b.max_intensity_w_m2 = std::max(laser.effective_pump_w_m2(), laser.effective_stokes_w_m2());
  b.warning = b.max_intensity_w_m2 >= threshold;
  return b;
}

SparseCheck sparse_regime_flag(double rho, double volume) {
  SparseCheck s;
  s.expected_count = rho * volume;
  s.flagged = s.expected_count < 10.0;
  return s;
}

DetectionReport min_density(const Scenario& s) {
  DetectionReport r;
  r.intensity_product = s.laser.effective_pump_w_m2() * s.laser.effective_stokes_w_m2();
  if (!(r.intensity_product > 0.0))
    throw ModelError("ZeroIntensity: minimum density is undefined when I_p I_s = 0");

  r.gain = gain_coefficient(s);
  r.spore_gain = spore_scale_gain(s, r.gain);
  r.heat = heat_source_density(s, r.gain);
  r.thermal = analyze_thermal(s);
  r.noise = nep(s);

  r.h_r = r.heat.h_r_w_m3;
  r.eta = r.thermal.efficiency.eta;
  r.h_nep = r.noise.h_nep;
  r.bandwidth_root = std::sqrt(s.detector.gamma_signal_per_s);
  r.detector_coverage = s.cell.detector_coverage;
  r.snr = s.options.snr;
  r.rho_min = r.snr * r.h_nep * r.bandwidth_root /
              (r.detector_coverage * r.eta * r.h_r * s.particle.volume_m3);
  if (s.spore_density_per_m3)
    r.h_available =
        available_power_density(*s.spore_density_per_m3, r.eta, r.h_r, s.particle.volume_m3);

  r.breakdown = breakdown_guard(s.laser, s.options.breakdown_intensity_w_m2);
  r.sparse = sparse_regime_flag(r.rho_min, s.cell.volume_m3());

  auto set = [&](Warning w, bool on) {
    if (on) r.warning_bits |= static_cast<std::uint32_t>(w);
  };
  set(Warning::breakdown, r.breakdown.warning);
  set(Warning::timescales_not_separated, !r.thermal.efficiency.separated);
  set(Warning::modulation_not_small, !r.noise.assumptions.small_omega);
  set(Warning::sparse_regime, r.sparse.flagged);
  set(Warning::small_gain_invalid, !r.spore_gain.linearization_valid);
  return r;
}

}  // namespace pars
