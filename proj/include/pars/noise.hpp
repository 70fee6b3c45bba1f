#pragma once

// Thermal (Langevin) noise of the pressure-mode amplitudes and the
// noise-equivalent heat input.
//
// Each displacement mode obeys
//   du/dt + Gamma_n u = (-rho0 V w_j^2 q + R(t)) / (rho0 V),   dq/dt = u,
// with <R(t) R(t')> = 2 D delta(t - t') and pressure amplitude A = rho0 c w_j q.

#include <span>
#include <string>
#include <vector>

#include "pars/acoustics.hpp"
#include "pars/quantities.hpp"
#include "pars/spectrum.hpp"

namespace pars {

/// D = rho0 V Gamma_n k T, fixed by equipartition rho0 V <u^2> = k T.
double diffusion_coefficient(const Scenario& scenario);

/// <u(t) u(t')> = D / ((rho0 V)^2 Gamma_n) exp(-Gamma_n (t - t')) for lag >= 0.
double velocity_correlation(const Scenario& scenario, double lag_s);

/// <|A_jn|^2>(w) = rho0 c^2 w_j^2 Gamma_n k T / (V [(w_j^2 - w^2)^2 + (w Gamma_n)^2]),
/// a two-sided angular density (see spectrum.hpp).
double noise_psd(double mode_omega, const Scenario& scenario, double omega);

/// Closed-form total variance rho0 c^2 k T / V of any mode with w_j > 0.
double noise_variance(const Scenario& scenario);

struct NoiseSpectrumResult {
  double diffusion = 0.0;
  SpectrumSeries spectrum;
  double variance_integrated = 0.0;  // over the grid, convention measure
  double mode_omega = 0.0;
};

NoiseSpectrumResult noise_spectrum(double mode_omega, const Scenario& scenario,
                                   std::span<const double> omega_grid);

struct NepAssumptions {
  double omega = 0.0;
  double omega_noise_mode = 0.0;
  double gamma_noise = 0.0;
  double gamma_signal = 0.0;
  bool small_omega = true;  // omega <= omega_1 / 10
};

struct NepResult {
  double h_nep = 0.0;   // W m^-3 s^1/2
  double vh_nep = 0.0;  // W s^1/2
  NepAssumptions assumptions;
  std::vector<std::string> warnings;
};

/// Heat input whose uniform-mode signal power equals the noise power of the
/// dominant noise mode at the same analysis frequency, for omega << omega_1:
///   |V H_NEP|^2 = V Gamma_n rho0 c^2 k T (w^2 + Gamma_s^2) / (w_1^2 (gamma - 1)^2).
NepResult nep(const Scenario& scenario, double modulation_omega);
NepResult nep(const Scenario& scenario);

/// Noise power summed over the first `count` non-uniform modes, relative to
/// the dominant-mode term alone, at the analysis frequency.
double higher_mode_noise_ratio(const Scenario& scenario, std::span<const AcousticMode> modes,
                               std::size_t count, double omega);

}  // namespace pars
