#pragma once

// End-to-end detection limit: Raman heat -> transfer efficiency -> NEP ->
// minimum detectable particle number density.

#include <cstdint>
#include <string>
#include <vector>

#include "pars/noise.hpp"
#include "pars/quantities.hpp"
#include "pars/raman.hpp"
#include "pars/thermal.hpp"

namespace pars {

enum class Warning : std::uint32_t {
  breakdown = 1u << 0,
  timescales_not_separated = 1u << 1,
  modulation_not_small = 1u << 2,
  sparse_regime = 1u << 3,
  small_gain_invalid = 1u << 4,
};

const char* to_string(Warning warning);

/// Sorted list of the warnings set in `bits`.
std::vector<Warning> decode_warnings(std::uint32_t bits);

/// H = rho_S * eta * H_R * V_S, the acoustically available power per unit gas volume.
double available_power_density(double rho_s_per_m3, double eta, double h_r_w_m3,
                               double volume_vs_m3);

struct BreakdownCheck {
  bool warning = false;
  double max_intensity_w_m2 = 0.0;
  double threshold_w_m2 = 0.0;
};

/// Warns (never blocks) when either effective beam intensity reaches the threshold.
BreakdownCheck breakdown_guard(const LaserDrive& laser, double threshold_w_m2 = 1.0e16);

struct SparseCheck {
  bool flagged = false;
  double expected_count = 0.0;  // rho V
};

/// Flags expected particle counts below 10 in the cell.
SparseCheck sparse_regime_flag(double rho_per_m3, double cell_volume_m3);

struct DetectionReport {
  RamanGainResult gain;
  StokesGrowth spore_gain;
  HeatSourceDensity heat;
  ThermalReport thermal;
  NepResult noise;

  double h_r = 0.0;
  double eta = 0.0;
  double h_available = 0.0;      // for the scenario spore density, 0 if none given
  double h_nep = 0.0;
  double bandwidth_root = 0.0;   // sqrt(Gamma_s)
  double rho_min = 0.0;
  double intensity_product = 0.0;
  double detector_coverage = 1.0;
  double snr = 1.0;
  BreakdownCheck breakdown;
  SparseCheck sparse;
  std::uint32_t warning_bits = 0;

  bool has(Warning w) const { return warning_bits & static_cast<std::uint32_t>(w); }
};

/// rho_min = snr * H_NEP sqrt(Gamma_s) / (coverage * eta * H_R * V_S).
/// Throws ModelError ("ZeroIntensity") when I_p I_s = 0.
DetectionReport min_density(const Scenario& scenario);

}  // namespace pars
