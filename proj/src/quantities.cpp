#include "pars/quantities.hpp"

#include <cmath>
#include <sstream>

namespace pars {

double ParticleSpec::equivalent_radius_m() const {
  if (radius_override_m) return *radius_override_m;
  return std::cbrt(3.0 * volume_m3 / (4.0 * kPi));
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::negative_quantity: return "NegativeQuantity";
    case ViolationKind::out_of_range: return "OutOfRange";
    case ViolationKind::stokes_not_below_pump: return "StokesNotBelowPump";
    case ViolationKind::gamma_not_above_one: return "GammaNotAboveOne";
    case ViolationKind::inconsistent_derived_field: return "InconsistentDerivedField";
  }
  return "Unknown";
}

namespace {

constexpr double kDerivedTolerance = 1e-9;

class Checker {
 public:
  void positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value))
      add(ViolationKind::negative_quantity, field, "must be finite and > 0");
  }
  void non_negative(double value, const char* field) {
    if (!(value >= 0.0) || !std::isfinite(value))
      add(ViolationKind::negative_quantity, field, "must be finite and >= 0");
  }
  void add(ViolationKind kind, std::string field, std::string message) {
    violations.push_back({kind, std::move(field), std::move(message)});
  }
  void consistent(double declared, double derived, const char* field) {
    if (std::abs(declared - derived) > kDerivedTolerance * std::abs(derived)) {
      std::ostringstream os;
      os.precision(17);
      os << "declared " << declared << " disagrees with derived " << derived;
      add(ViolationKind::inconsistent_derived_field, field, os.str());
    }
  }

  std::vector<Violation> violations;
};

}  // namespace

ValidationResult validate_scenario(const Scenario& s) {
  Checker check;

  const auto& k = s.constants;
  check.positive(k.hbar_j_s, "constants.hbar");
  check.positive(k.boltzmann_j_k, "constants.boltzmann");
  check.positive(k.avogadro_per_mol, "constants.avogadro");
  check.positive(k.gas_constant_j_mol_k, "constants.gas_constant");
  check.positive(k.stefan_boltzmann_w_m2_k4, "constants.stefan_boltzmann");
  check.positive(k.speed_of_light_m_s, "constants.speed_of_light");
  if (k.gas_constant_j_mol_k > 0.0)
    check.consistent(k.gas_constant_j_mol_k, k.boltzmann_j_k * k.avogadro_per_mol,
                     "constants.gas_constant");

  const auto& g = s.gas;
  check.positive(g.pressure_pa, "gas.pressure");
  check.positive(g.temperature_k, "gas.temperature");
  check.positive(g.density_kg_m3, "gas.density");
  check.positive(g.molecule_mass_kg, "gas.molecule_mass");
  if (!(g.gamma > 1.0) || !std::isfinite(g.gamma))
    check.add(ViolationKind::gamma_not_above_one, "gas.gamma",
              "specific-heat ratio must exceed 1");

  const auto& c = s.cell;
  check.positive(c.length_m, "cell.length");
  check.positive(c.radius_m, "cell.radius");
  if (!(c.detector_coverage > 0.0 && c.detector_coverage <= 1.0))
    check.add(ViolationKind::out_of_range, "cell.detector_coverage", "must lie in (0, 1]");
  if (c.declared_volume_m3 && c.length_m > 0.0 && c.radius_m > 0.0)
    check.consistent(*c.declared_volume_m3, c.volume_m3(), "cell.volume");

  const auto& l = s.laser;
  check.positive(l.omega_stokes_rad_s, "laser.stokes_frequency");
  check.positive(l.omega_pump_rad_s, "laser.pump_frequency");
  if (l.omega_pump_rad_s > 0.0 && l.omega_stokes_rad_s > 0.0 &&
      !(l.omega_pump_rad_s > l.omega_stokes_rad_s))
    check.add(ViolationKind::stokes_not_below_pump, "laser.stokes_frequency",
              "Stokes frequency must be below the pump frequency");
  check.non_negative(l.intensity_pump_w_m2, "laser.intensity_pump");
  check.non_negative(l.intensity_stokes_w_m2, "laser.intensity_stokes");
  check.positive(l.modulation_omega_rad_s, "laser.modulation_frequency");
  check.positive(l.intensity_multiplier, "laser.intensity_multiplier");
  if (!(l.refractive_index_stokes >= 1.0) || !std::isfinite(l.refractive_index_stokes))
    check.add(ViolationKind::out_of_range, "laser.refractive_index_stokes", "must be >= 1");

  const auto& p = s.particle;
  check.positive(p.volume_m3, "particle.volume");
  check.positive(p.molecule_count, "particle.molecule_count");
  if (!(p.raman_fraction > 0.0 && p.raman_fraction <= 1.0))
    check.add(ViolationKind::out_of_range, "particle.raman_fraction", "must lie in (0, 1]");
  check.non_negative(p.active_density_per_m3, "particle.active_density");
  check.non_negative(p.raman_cross_section_m2_sr, "particle.raman_cross_section");
  check.positive(p.linewidth_hz, "particle.raman_linewidth");
  check.non_negative(p.gamma_collisional_per_s, "particle.collisional_decay_rate");
  check.non_negative(p.gamma_radiative_per_s, "particle.radiative_decay_rate");
  if (!(p.gamma_collisional_per_s + p.gamma_radiative_per_s > 0.0))
    check.add(ViolationKind::negative_quantity, "particle.decay_rates",
              "collisional + radiative decay rate must be > 0");
  check.positive(p.molar_heat_j_mol_k, "particle.molar_heat_capacity");
  if (p.radius_override_m) check.positive(*p.radius_override_m, "particle.equivalent_radius");

  const auto& d = s.detector;
  check.positive(d.omega_noise_mode_rad_s, "detector.noise_mode_frequency");
  check.positive(d.gamma_noise_per_s, "detector.noise_damping");
  check.positive(d.gamma_signal_per_s, "detector.signal_damping");

  const auto& o = s.options;
  check.positive(o.dominance_ratio, "model.dominance_ratio");
  check.positive(o.accommodation, "model.accommodation");
  check.positive(o.breakdown_intensity_w_m2, "model.breakdown_intensity");
  check.positive(o.snr, "model.snr");

  if (s.spore_density_per_m3) check.non_negative(*s.spore_density_per_m3, "spore_density");

  if (check.violations.empty()) {
    const double c_sound = sound_speed(g);
    if (!std::isfinite(c_sound) || !(c_sound > 0.0))
      check.add(ViolationKind::inconsistent_derived_field, "gas.sound_speed",
                "derived sound speed is not finite");
    const double boltzmann_ratio =
        k.hbar_j_s * l.raman_shift_rad_s() / (k.boltzmann_j_k * g.temperature_k);
    if (!(boltzmann_ratio > 0.0))
      check.add(ViolationKind::stokes_not_below_pump, "laser",
                "hbar (w_p - w_s) / kT must be positive");
  }

  ValidationResult result;
  result.violations = std::move(check.violations);
  if (result.violations.empty()) result.scenario = s;
  return result;
}

Scenario require_valid(const Scenario& candidate) {
  auto result = validate_scenario(candidate);
  if (result.ok()) return *result.scenario;
  std::ostringstream os;
  os << "invalid scenario:";
  for (const auto& v : result.violations)
    os << "\n  " << to_string(v.kind) << " " << v.field << ": " << v.message;
  throw ModelError(os.str());
}

double sound_speed(const GasProperties& gas) {
  return std::sqrt(gas.pressure_pa * gas.gamma / gas.density_kg_m3);
}

double optimal_cell_radius(double wavelength_m, double length_m) {
  if (!(wavelength_m > 0.0) || !(length_m > 0.0))
    throw ModelError("optimal_cell_radius: wavelength and length must be positive");
  return std::sqrt(wavelength_m * length_m / kPi);
}

}  // namespace pars
