#pragma once

// Normal modes of a rigid-walled cylindrical cell and the pressure-mode
// amplitudes driven by a modulated heat source.

#include <complex>
#include <compare>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pars/quantities.hpp"
#include "pars/spectrum.hpp"

namespace pars {

/// (axial q, azimuthal m, radial n). n counts the zeros of J'_m; for m = 0 the
/// index n = 0 is the trivial root 0, for m > 0 n starts at 1.
struct ModeIndex {
  int axial = 0;
  int azimuthal = 0;
  int radial = 0;

  auto operator<=>(const ModeIndex&) const = default;
};

std::string to_string(const ModeIndex& index);

/// Cylindrical coordinates inside the cell, z measured from one end cap.
struct CellPoint {
  double r = 0.0;
  double phi = 0.0;
  double z = 0.0;
};

struct AcousticMode {
  ModeIndex index;
  double omega_rad_s = 0.0;
  double axial_wavenumber = 0.0;   // q pi / l
  double radial_root = 0.0;        // alpha'_mn
  double radial_wavenumber = 0.0;  // alpha'_mn / a
  double normalization = 1.0;      // (1/V) int p^2 dV = 1

  bool is_uniform() const { return index == ModeIndex{}; }

  /// p_j(r) = N cos(q pi z / l) J_m(alpha r / a) cos(m phi).
  double shape(const CellPoint& point) const;
};

struct ModeCutoffs {
  int axial = 3;
  int azimuthal = 0;  // > 0 enables non-axisymmetric modes
  int radial = 2;
};

/// n-th positive zero (n >= 1) of J'_order. Throws ModelError
/// ("RootFindingFailure") if the bracketed root does not converge to 1e-12.
double bessel_derivative_root(int order, int n);

AcousticMode make_mode(const ModeIndex& index, const CellGeometry& cell, const GasProperties& gas);

/// All modes within the cutoffs, sorted by ascending frequency with ties
/// broken lexicographically by (q, m, n). Includes the uniform mode.
std::vector<AcousticMode> cylinder_modes(const CellGeometry& cell, const GasProperties& gas,
                                         const ModeCutoffs& cutoffs);

/// (1/V) int p_a p_b dV by adaptive quadrature of the separable factors.
double mode_inner_product(const AcousticMode& a, const AcousticMode& b, const CellGeometry& cell);

struct SourcePoint {
  CellPoint position;
  double weight = 1.0;
};

/// H(r, t) = amplitude * shape(r) * envelope(t). The spatial shape has unit
/// cell average, (1/V) int shape dV = 1, so `amplitude_w_m3` is the
/// cell-averaged heat density.
struct HeatSourceField {
  enum class Profile { uniform_cell, beam_cylinder, points };
  enum class Envelope { sinusoidal, pulse_train };

  Profile profile = Profile::uniform_cell;
  double beam_radius_m = 0.0;
  std::vector<SourcePoint> points;

  Envelope envelope = Envelope::sinusoidal;
  double amplitude_w_m3 = 1.0;
  double omega_rad_s = 100.0;
  double duty_cycle = 0.5;  // pulse_train only

  static HeatSourceField uniform(double amplitude_w_m3, double omega_rad_s);
  static HeatSourceField beam(double beam_radius_m, double amplitude_w_m3, double omega_rad_s);

  /// Spatial shape; zero-width point sources have no pointwise value.
  double shape(const CellPoint& point, const CellGeometry& cell) const;

  /// Phasor coefficient of the n-th harmonic (n >= 1) of the envelope, so that
  /// the AC part of H is Re[sum_n H_n exp(i n omega t)].
  std::complex<double> harmonic(int n) const;
};

/// int p_j(r) shape(r) dV, closed form.
double mode_overlap(const AcousticMode& mode, const HeatSourceField& source, const CellGeometry& cell);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Nested adaptive Gauss-Kronrod integral of f over the cell volume
/// (r dr dphi dz). Relative target 1e-10 with absolute floor 1e-14.
QuadratureResult integrate_cell(const std::function<double(const CellPoint&)>& f,
                                const CellGeometry& cell, double rel_tol = 1e-10);

/// As integrate_cell, restricted to r <= max_radius_m.
QuadratureResult integrate_cell_region(const std::function<double(const CellPoint&)>& f,
                                       const CellGeometry& cell, double max_radius_m,
                                       double rel_tol = 1e-10);

/// Quadrature cross-check of mode_overlap. Point sources reduce to the
/// weighted sum. Throws ModelError ("QuadratureNotConverged") when the error
/// estimate exceeds 1e-8 relative.
QuadratureResult mode_overlap_quadrature(const AcousticMode& mode, const HeatSourceField& source,
                                         const CellGeometry& cell);

/// Phasor amplitude
///   A_j(w) = i w (gamma - 1) overlap H(w) / (V (w_j^2 - w^2 + i w Gamma_s)).
std::complex<double> signal_amplitude(const AcousticMode& mode, double overlap,
                                      std::complex<double> heat_phasor, double omega,
                                      const Scenario& scenario);

struct SignalResponse {
  double overlap = 0.0;
  SpectrumSeries spectrum;  // per unit spectral amplitude of the envelope
  std::complex<double> at_modulation;
};

/// Transfer of the source into mode j on `omega_grid`, plus the
/// single-line amplitude at the source modulation frequency.
SignalResponse signal_spectrum(const AcousticMode& mode, const HeatSourceField& source,
                               const Scenario& scenario, std::span<const double> omega_grid);

/// p(r) = sum_j A_j p_j(r).
double pressure_field(std::span<const AcousticMode> modes, std::span<const double> amplitudes,
                      const CellPoint& point);

/// Pressure at time t for phasor amplitudes at frequency omega.
double pressure_field(std::span<const AcousticMode> modes,
                      std::span<const std::complex<double>> phasors, double omega, double t,
                      const CellPoint& point);

}  // namespace pars
