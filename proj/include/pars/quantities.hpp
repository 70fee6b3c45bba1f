#pragma once

// Physical constants, scenario value types and scenario validation.
//
// Every quantity is SI. Field names carry their unit as a suffix. All
// frequencies are angular (rad/s) except the Raman linewidth, which is kept in
// ordinary Hz.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pars {

/// Thrown for inputs that make a model operation undefined.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

struct PhysicalConstants {
  double hbar_j_s = 1.054571817e-34;
  double boltzmann_j_k = 1.380649e-23;
  double avogadro_per_mol = 6.02214076e23;
  double gas_constant_j_mol_k = 1.380649e-23 * 6.02214076e23;
  double stefan_boltzmann_w_m2_k4 = 5.670374419e-8;
  double speed_of_light_m_s = 299792458.0;

  bool operator==(const PhysicalConstants&) const = default;
};

struct GasProperties {
  double pressure_pa = 101325.0;
  double temperature_k = 300.0;
  double density_kg_m3 = 1.3;
  double gamma = 1.4;  // C_p / C_v
  double molecule_mass_kg = 28.0 * kAtomicMassUnit;

  bool operator==(const GasProperties&) const = default;
};

struct CellGeometry {
  double length_m = 0.1;
  double radius_m = 1.0e-4;
  double detector_coverage = 1.0;
  /// Volume as written in an input file, checked against pi r^2 l.
  std::optional<double> declared_volume_m3;

  double volume_m3() const { return kPi * radius_m * radius_m * length_m; }

  bool operator==(const CellGeometry&) const = default;
};

struct LaserDrive {
  double omega_pump_rad_s = 0.0;
  double omega_stokes_rad_s = 0.0;
  double intensity_pump_w_m2 = 0.0;
  double intensity_stokes_w_m2 = 0.0;
  double refractive_index_stokes = 1.0;
  double modulation_omega_rad_s = 100.0;
  /// Multi-pass enhancement applied to both beams.
  double intensity_multiplier = 1.0;

  double raman_shift_rad_s() const { return omega_pump_rad_s - omega_stokes_rad_s; }
  double effective_pump_w_m2() const { return intensity_pump_w_m2 * intensity_multiplier; }
  double effective_stokes_w_m2() const { return intensity_stokes_w_m2 * intensity_multiplier; }

  bool operator==(const LaserDrive&) const = default;
};

struct ParticleSpec {
  double volume_m3 = 0.0;
  double molecule_count = 0.0;
  double raman_fraction = 0.1;
  double active_density_per_m3 = 0.0;
  double raman_cross_section_m2_sr = 0.0;
  double linewidth_hz = 0.0;
  double gamma_collisional_per_s = 0.0;
  double gamma_radiative_per_s = 0.0;
  double molar_heat_j_mol_k = 4.2;
  std::optional<double> radius_override_m;

  /// r_s: the override when present, else the radius of the equal-volume sphere.
  double equivalent_radius_m() const;
  bool radius_is_derived() const { return !radius_override_m.has_value(); }

  bool operator==(const ParticleSpec&) const = default;
};

struct DetectorNoiseSpec {
  double omega_noise_mode_rad_s = 4.0e4;
  double gamma_noise_per_s = 5.0e4;
  double gamma_signal_per_s = 100.0;

  double quality_factor() const { return omega_noise_mode_rad_s / gamma_noise_per_s; }

  bool operator==(const DetectorNoiseSpec&) const = default;
};

enum class LinewidthConvention { ordinary_hz, angular };

/// Model knobs that are not physical inputs.
struct ModelOptions {
  LinewidthConvention linewidth = LinewidthConvention::ordinary_hz;
  double dominance_ratio = 10.0;
  double accommodation = 1.0;
  double breakdown_intensity_w_m2 = 1.0e16;
  double snr = 1.0;

  bool operator==(const ModelOptions&) const = default;
};

struct Scenario {
  PhysicalConstants constants;
  GasProperties gas;
  CellGeometry cell;
  LaserDrive laser;
  ParticleSpec particle;
  DetectorNoiseSpec detector;
  ModelOptions options;
  std::optional<double> spore_density_per_m3;

  bool operator==(const Scenario&) const = default;
};

enum class ViolationKind {
  negative_quantity,
  out_of_range,
  stokes_not_below_pump,
  gamma_not_above_one,
  inconsistent_derived_field,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string field;
  std::string message;
};

struct ValidationResult {
  std::optional<Scenario> scenario;
  std::vector<Violation> violations;

  bool ok() const { return scenario.has_value(); }
};

/// Checks every invariant and reports all violations, not only the first.
ValidationResult validate_scenario(const Scenario& candidate);

/// Throws ModelError listing the violations when the candidate is invalid.
Scenario require_valid(const Scenario& candidate);

/// c = sqrt(P0 gamma / rho0).
double sound_speed(const GasProperties& gas);

/// Beam-matched cell radius sqrt(lambda l / pi).
double optimal_cell_radius(double wavelength_m, double length_m);

}  // namespace pars
