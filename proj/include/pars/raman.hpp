#pragma once

// Stimulated Raman gain and the heat it deposits in the particle medium.

#include "pars/quantities.hpp"

namespace pars {

struct RamanGainResult {
  double gain_per_m = 0.0;            // g
  double gain_factor_m_per_w = 0.0;   // G = g / I_p
  double population_factor = 0.0;     // 1 - exp(-hbar (w_p - w_s) / kT)
  double stokes_velocity_m_s = 0.0;   // c0 / n(w_s)
  LinewidthConvention linewidth = LinewidthConvention::ordinary_hz;
};

/// Gain coefficient
///   g = 8 pi^2 N v_s^2 / (hbar w_s^3 dnu) * dsigma/dOmega * I_p * population_factor
/// with w_s angular and dnu taken in the convention selected by the scenario
/// options (or by `linewidth`, when given). The temperature is the gas
/// temperature.
RamanGainResult gain_coefficient(const Scenario& scenario);
RamanGainResult gain_coefficient(const Scenario& scenario, LinewidthConvention linewidth);

struct StokesGrowth {
  double exact = 0.0;       // n0 exp(g z)
  double linearized = 0.0;  // n0 (1 + g z)
  bool linearization_valid = true;  // |g z| <= 0.01
};

StokesGrowth stokes_amplification(double gain_per_m, double path_m, double n0);

struct HeatSourceDensity {
  double branching = 0.0;              // Gamma_c / (Gamma_c + Gamma_r)
  double shift_ratio = 0.0;            // (w_p - w_s) / w_s
  double stokes_gain_rate_w_m3 = 0.0;  // Delta I_s / L = G I_p I_s
  double absorbed_rate_w_m3 = 0.0;     // shift_ratio * G I_p I_s
  double h_r_w_m3 = 0.0;               // branching * absorbed_rate
};

/// Heat deposited per unit volume of particle medium. Uses the effective
/// (multi-pass) beam intensities. Throws ModelError when both decay rates are zero.
HeatSourceDensity heat_source_density(const Scenario& scenario, const RamanGainResult& gain);

/// Small-gain check over the default interaction length (the spore diameter).
StokesGrowth spore_scale_gain(const Scenario& scenario, const RamanGainResult& gain);

}  // namespace pars
