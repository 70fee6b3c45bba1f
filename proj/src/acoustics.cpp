#include "pars/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace pars {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr double kAbsFloor = 1e-14;

double bessel_j(int order, double x) { return boost::math::cyl_bessel_j(order, x); }
double bessel_j_prime(int order, double x) { return boost::math::cyl_bessel_j_prime(order, x); }

struct Accumulated {
  double value = 0.0;
  double error = 0.0;
};

// Bisection on top of a single 31-point Kronrod panel. Convergence is judged
// against the L1 norm so that integrals that vanish by symmetry terminate.
template <class F>
void adaptive_panel(const F& f, double a, double b, double rel_tol, double abs_floor, int depth,
                    Accumulated& acc) {
  double error = 0.0;
  double l1 = 0.0;
  const double estimate = Kronrod::integrate(f, a, b, 0, 0.0, &error, &l1);
  if (error <= std::max(rel_tol * l1, abs_floor) || depth >= 30) {
    acc.value += estimate;
    acc.error += error;
    return;
  }
  const double mid = 0.5 * (a + b);
  adaptive_panel(f, a, mid, rel_tol, 0.5 * abs_floor, depth + 1, acc);
  adaptive_panel(f, mid, b, rel_tol, 0.5 * abs_floor, depth + 1, acc);
}

template <class F>
Accumulated adaptive(const F& f, double a, double b, double rel_tol, double abs_floor = kAbsFloor) {
  Accumulated acc;
  adaptive_panel(f, a, b, rel_tol, abs_floor, 0, acc);
  return acc;
}

double radial_norm_integral(int m, double alpha) {
  // int_0^1 J_m(alpha x)^2 x dx for J'_m(alpha) = 0.
  if (alpha == 0.0) return m == 0 ? 0.5 : 0.0;
  const double j = bessel_j(m, alpha);
  return 0.5 * (1.0 - static_cast<double>(m * m) / (alpha * alpha)) * j * j;
}

}  // namespace

std::string to_string(const ModeIndex& index) {
  std::ostringstream os;
  os << "(" << index.axial << "," << index.azimuthal << "," << index.radial << ")";
  return os.str();
}

double AcousticMode::shape(const CellPoint& p) const {
  double value = normalization;
  if (index.axial != 0) value *= std::cos(axial_wavenumber * p.z);
  if (radial_root != 0.0) value *= bessel_j(index.azimuthal, radial_wavenumber * p.r);
  if (index.azimuthal != 0) value *= std::cos(index.azimuthal * p.phi);
  return value;
}

double bessel_derivative_root(int order, int n) {
  if (order < 0 || n < 1) throw ModelError("bessel_derivative_root: need order >= 0 and n >= 1");
  const auto f = [order](double x) { return bessel_j_prime(order, x); };

  // Roots of J'_m are spaced by roughly pi; a 0.1 step cannot skip a pair.
  constexpr double step = 0.1;
  double lo = 1e-3;
  double f_lo = f(lo);
  int found = 0;
  for (int i = 0; i < 1000000; ++i) {
    const double hi = lo + step;
    const double f_hi = f(hi);
    if (f_lo == 0.0 || std::signbit(f_lo) != std::signbit(f_hi)) {
      if (++found == n) {
        std::uintmax_t iterations = 200;
        const auto [a, b] = boost::math::tools::toms748_solve(
            f, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(50), iterations);
        const double root = 0.5 * (a + b);
        if (iterations >= 200 || (b - a) > 1e-12 * std::max(1.0, root))
          throw ModelError("RootFindingFailure: J'_" + std::to_string(order) + " root " +
                           std::to_string(n) + " did not converge");
        return root;
      }
    }
    lo = hi;
    f_lo = f_hi;
  }
  throw ModelError("RootFindingFailure: bracket search exhausted");
}

AcousticMode make_mode(const ModeIndex& index, const CellGeometry& cell, const GasProperties& gas) {
  if (index.axial < 0 || index.azimuthal < 0 || index.radial < 0 ||
      (index.azimuthal > 0 && index.radial == 0))
    throw ModelError("invalid mode index " + to_string(index));

  AcousticMode mode;
  mode.index = index;
  mode.axial_wavenumber = index.axial * kPi / cell.length_m;
  mode.radial_root = index.radial == 0 ? 0.0 : bessel_derivative_root(index.azimuthal, index.radial);
  mode.radial_wavenumber = mode.radial_root / cell.radius_m;

  const double c = sound_speed(gas);
  mode.omega_rad_s = c * std::hypot(mode.axial_wavenumber, mode.radial_wavenumber);

  // (1/V) int p^2 dV = N^2 * Z * Phi * R / (pi), with Z, Phi, R the factor
  // integrals on the unit cell (z/l, phi, r/a).
  const double z_factor = index.axial == 0 ? 1.0 : 0.5;
  const double phi_factor = index.azimuthal == 0 ? 2.0 * kPi : kPi;
  const double r_factor = radial_norm_integral(index.azimuthal, mode.radial_root);
  mode.normalization = std::sqrt(kPi / (z_factor * phi_factor * r_factor));
  return mode;
}

std::vector<AcousticMode> cylinder_modes(const CellGeometry& cell, const GasProperties& gas,
                                         const ModeCutoffs& cutoffs) {
  if (cutoffs.axial < 0 || cutoffs.azimuthal < 0 || cutoffs.radial < 0)
    throw ModelError("mode cutoffs must be non-negative");
  std::vector<AcousticMode> modes;
  for (int q = 0; q <= cutoffs.axial; ++q)
    for (int m = 0; m <= cutoffs.azimuthal; ++m)
      for (int n = (m == 0 ? 0 : 1); n <= cutoffs.radial; ++n)
        modes.push_back(make_mode({q, m, n}, cell, gas));
  std::sort(modes.begin(), modes.end(), [](const AcousticMode& a, const AcousticMode& b) {
    if (a.omega_rad_s != b.omega_rad_s) return a.omega_rad_s < b.omega_rad_s;
    return a.index < b.index;
  });
  return modes;
}

double mode_inner_product(const AcousticMode& a, const AcousticMode& b, const CellGeometry&) {
  constexpr double tol = 1e-12;
  const auto z_part = adaptive(
      [&](double z) {
        return std::cos(a.index.axial * kPi * z) * std::cos(b.index.axial * kPi * z);
      },
      0.0, 1.0, tol);
  const auto phi_part = adaptive(
      [&](double phi) {
        return std::cos(a.index.azimuthal * phi) * std::cos(b.index.azimuthal * phi);
      },
      0.0, 2.0 * kPi, tol);
  const auto r_part = adaptive(
      [&](double x) {
        const double ja = a.radial_root == 0.0 ? 1.0 : bessel_j(a.index.azimuthal, a.radial_root * x);
        const double jb = b.radial_root == 0.0 ? 1.0 : bessel_j(b.index.azimuthal, b.radial_root * x);
        return ja * jb * x;
      },
      0.0, 1.0, tol);
  return a.normalization * b.normalization * z_part.value * phi_part.value * r_part.value / kPi;
}

HeatSourceField HeatSourceField::uniform(double amplitude, double omega) {
  HeatSourceField h;
  h.amplitude_w_m3 = amplitude;
  h.omega_rad_s = omega;
  return h;
}

HeatSourceField HeatSourceField::beam(double radius, double amplitude, double omega) {
  HeatSourceField h = uniform(amplitude, omega);
  h.profile = Profile::beam_cylinder;
  h.beam_radius_m = radius;
  return h;
}

double HeatSourceField::shape(const CellPoint& p, const CellGeometry& cell) const {
  switch (profile) {
    case Profile::uniform_cell:
      return 1.0;
    case Profile::beam_cylinder: {
      const double ratio = cell.radius_m / beam_radius_m;
      return p.r <= beam_radius_m ? ratio * ratio : 0.0;
    }
    case Profile::points:
      break;
  }
  throw ModelError("point sources have no pointwise shape");
}

std::complex<double> HeatSourceField::harmonic(int n) const {
  if (n < 1) throw ModelError("harmonic index must be >= 1");
  if (envelope == Envelope::sinusoidal) return n == 1 ? amplitude_w_m3 : 0.0;
  // Centred rectangular pulse of peak `amplitude` and the given duty cycle.
  return 2.0 * amplitude_w_m3 * std::sin(n * kPi * duty_cycle) / (n * kPi);
}

double mode_overlap(const AcousticMode& mode, const HeatSourceField& source,
                    const CellGeometry& cell) {
  const double volume = cell.volume_m3();
  switch (source.profile) {
    case HeatSourceField::Profile::uniform_cell:
      return mode.is_uniform() ? volume : 0.0;
    case HeatSourceField::Profile::beam_cylinder: {
      if (!(source.beam_radius_m > 0.0 && source.beam_radius_m <= cell.radius_m))
        throw ModelError("beam radius must lie in (0, cell radius]");
      if (mode.index.axial != 0 || mode.index.azimuthal != 0) return 0.0;
      const double b = source.beam_radius_m;
      const double k = mode.radial_wavenumber;
      const double radial = k == 0.0 ? 0.5 * b * b : b * bessel_j(1, k * b) / k;
      const double ratio = cell.radius_m / b;
      return mode.normalization * ratio * ratio * cell.length_m * 2.0 * kPi * radial;
    }
    case HeatSourceField::Profile::points: {
      double weighted = 0.0;
      double total = 0.0;
      for (const auto& pt : source.points) {
        weighted += pt.weight * mode.shape(pt.position);
        total += pt.weight;
      }
      if (!(total > 0.0)) throw ModelError("point source weights must sum to > 0");
      return volume * weighted / total;
    }
  }
  return 0.0;
}

QuadratureResult integrate_cell(const std::function<double(const CellPoint&)>& f,
                                const CellGeometry& cell, double rel_tol) {
  return integrate_cell_region(f, cell, cell.radius_m, rel_tol);
}

QuadratureResult integrate_cell_region(const std::function<double(const CellPoint&)>& f,
                                       const CellGeometry& cell, double max_radius_m,
                                       double rel_tol) {
  // Unit coordinates x = r/a, s = z/l, dV = a^2 l x dx dphi ds.
  const double a = cell.radius_m;
  const double l = cell.length_m;
  const double x_max = max_radius_m / a;
  double inner_error = 0.0;
  const auto outer = adaptive(
      [&](double s) {
        const auto middle = adaptive(
            [&](double phi) {
              const auto inner = adaptive(
                  [&](double x) { return f({x * a, phi, s * l}) * x; }, 0.0, x_max, rel_tol);
              inner_error = std::max(inner_error, inner.error);
              return inner.value;
            },
            0.0, 2.0 * kPi, rel_tol);
        inner_error = std::max(inner_error, middle.error);
        return middle.value;
      },
      0.0, 1.0, rel_tol);
  const double jacobian = a * a * l;
  return {outer.value * jacobian, (outer.error + 2.0 * kPi * inner_error) * jacobian};
}

QuadratureResult mode_overlap_quadrature(const AcousticMode& mode, const HeatSourceField& source,
                                         const CellGeometry& cell) {
  if (source.profile == HeatSourceField::Profile::points)
    return {mode_overlap(mode, source, cell), 0.0};

  const double reach =
      source.profile == HeatSourceField::Profile::beam_cylinder ? source.beam_radius_m : cell.radius_m;
  const auto result = integrate_cell_region(
      [&](const CellPoint& p) { return mode.shape(p) * source.shape(p, cell); }, cell, reach);
  const double scale = std::max(std::abs(result.value), kAbsFloor * cell.volume_m3());
  if (result.error > 1e-8 * std::max(scale, cell.volume_m3()))
    throw ModelError("QuadratureNotConverged: overlap error estimate " +
                     std::to_string(result.error));
  return result;
}

std::complex<double> signal_amplitude(const AcousticMode& mode, double overlap,
                                      std::complex<double> heat_phasor, double omega,
                                      const Scenario& s) {
  using namespace std::complex_literals;
  if (omega == 0.0) return 0.0;
  const double wj = mode.omega_rad_s;
  const std::complex<double> denom =
      s.cell.volume_m3() * (wj * wj - omega * omega + 1i * omega * s.detector.gamma_signal_per_s);
  return 1i * omega * (s.gas.gamma - 1.0) * overlap * heat_phasor / denom;
}

SignalResponse signal_spectrum(const AcousticMode& mode, const HeatSourceField& source,
                               const Scenario& s, std::span<const double> omega_grid) {
  SignalResponse r;
  r.overlap = mode_overlap(mode, source, s.cell);
  r.spectrum.kind = SpectrumKind::complex_amplitude;
  r.spectrum.mode_label = to_string(mode.index);
  r.spectrum.omega_rad_s.assign(omega_grid.begin(), omega_grid.end());
  r.spectrum.amplitude.reserve(omega_grid.size());
  for (double w : omega_grid)
    r.spectrum.amplitude.push_back(signal_amplitude(mode, r.overlap, 1.0, w, s));
  check_series(r.spectrum);
  r.at_modulation = signal_amplitude(mode, r.overlap, source.harmonic(1), source.omega_rad_s, s);
  return r;
}

double pressure_field(std::span<const AcousticMode> modes, std::span<const double> amplitudes,
                      const CellPoint& point) {
  if (modes.size() != amplitudes.size()) throw ModelError("pressure_field: size mismatch");
  double p = 0.0;
  for (std::size_t j = 0; j < modes.size(); ++j) p += amplitudes[j] * modes[j].shape(point);
  return p;
}

double pressure_field(std::span<const AcousticMode> modes,
                      std::span<const std::complex<double>> phasors, double omega, double t,
                      const CellPoint& point) {
  if (modes.size() != phasors.size()) throw ModelError("pressure_field: size mismatch");
  const std::complex<double> rotor = std::polar(1.0, omega * t);
  double p = 0.0;
  for (std::size_t j = 0; j < modes.size(); ++j)
    p += (phasors[j] * rotor).real() * modes[j].shape(point);
  return p;
}

}  // namespace pars
