#include "pars/noise.hpp"

#include <cmath>

namespace pars {

double diffusion_coefficient(const Scenario& s) {
  return s.gas.density_kg_m3 * s.cell.volume_m3() * s.detector.gamma_noise_per_s *
         s.constants.boltzmann_j_k * s.gas.temperature_k;
}

double velocity_correlation(const Scenario& s, double lag_s) {
  if (lag_s < 0.0) throw ModelError("velocity_correlation: lag must be >= 0");
  const double mass = s.gas.density_kg_m3 * s.cell.volume_m3();
  const double gamma = s.detector.gamma_noise_per_s;
  return diffusion_coefficient(s) / (mass * mass * gamma) * std::exp(-gamma * lag_s);
}

double noise_psd(double mode_omega, const Scenario& s, double omega) {
  if (mode_omega == 0.0) return 0.0;  // the uniform mode carries no noise
  const double c2 = s.gas.pressure_pa * s.gas.gamma / s.gas.density_kg_m3;
  const double kt = s.constants.boltzmann_j_k * s.gas.temperature_k;
  const double gamma = s.detector.gamma_noise_per_s;
  const double wj2 = mode_omega * mode_omega;
  const double detune = wj2 - omega * omega;
  return s.gas.density_kg_m3 * c2 * wj2 * gamma * kt /
         (s.cell.volume_m3() * (detune * detune + omega * omega * gamma * gamma));
}

double noise_variance(const Scenario& s) {
  return s.gas.pressure_pa * s.gas.gamma * s.constants.boltzmann_j_k * s.gas.temperature_k /
         s.cell.volume_m3();
}

NoiseSpectrumResult noise_spectrum(double mode_omega, const Scenario& s,
                                   std::span<const double> grid) {
  if (!(s.detector.gamma_noise_per_s > 0.0)) throw ModelError("noise_spectrum: Gamma_n must be > 0");
  NoiseSpectrumResult r;
  r.diffusion = diffusion_coefficient(s);
  r.mode_omega = mode_omega;
  r.spectrum.kind = SpectrumKind::power_density;
  r.spectrum.convention = SpectralConvention::two_sided_angular;
  r.spectrum.mode_label = "omega_j=" + format_double(mode_omega);
  r.spectrum.omega_rad_s.assign(grid.begin(), grid.end());
  r.spectrum.power.reserve(grid.size());
  for (double w : grid) r.spectrum.power.push_back(noise_psd(mode_omega, s, w));
  check_series(r.spectrum);
  r.variance_integrated = integrated_variance(r.spectrum);
  return r;
}

NepResult nep(const Scenario& s) { return nep(s, s.laser.modulation_omega_rad_s); }

NepResult nep(const Scenario& s, double omega) {
  const double volume = s.cell.volume_m3();
  const double rho_c2 = s.gas.pressure_pa * s.gas.gamma;
  const double kt = s.constants.boltzmann_j_k * s.gas.temperature_k;
  const auto& d = s.detector;

  NepResult r;
  r.assumptions = {omega, d.omega_noise_mode_rad_s, d.gamma_noise_per_s, d.gamma_signal_per_s,
                   omega <= d.omega_noise_mode_rad_s / 10.0};
  r.vh_nep = std::sqrt(volume * d.gamma_noise_per_s * rho_c2 * kt *
                       (omega * omega + d.gamma_signal_per_s * d.gamma_signal_per_s)) /
             (d.omega_noise_mode_rad_s * (s.gas.gamma - 1.0));
  r.h_nep = r.vh_nep / volume;
  if (!r.assumptions.small_omega)
    r.warnings.push_back("ModulationNotSmall: modulation frequency exceeds omega_1 / 10");
  return r;
}

double higher_mode_noise_ratio(const Scenario& s, std::span<const AcousticMode> modes,
                               std::size_t count, double omega) {
  const double reference = noise_psd(s.detector.omega_noise_mode_rad_s, s, omega);
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& m : modes) {
    if (m.is_uniform() || m.omega_rad_s == 0.0) continue;
    if (used++ == count) break;
    sum += noise_psd(m.omega_rad_s, s, omega);
  }
  return sum / reference;
}

}  // namespace pars
