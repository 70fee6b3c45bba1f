#pragma once

// Frequency-domain series shared by the signal, noise and oracle modules.
//
// Power densities use the two-sided angular convention
//   variance = (1/pi) * integral_{-inf}^{inf} S(omega) d omega,
// i.e. S(omega) = (1/2) * integral C(tau) exp(i omega tau) d tau for the
// autocorrelation C. This is the normalization under which the Langevin
// pressure-noise spectrum and the oracle's periodogram coincide. Series are
// stored on omega >= 0 only; the negative half is the mirror image.
//
// Complex amplitudes are phasors: A(t) = Re[A(omega) exp(+i omega t)].

#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace pars {

enum class SpectralConvention { two_sided_angular, one_sided_angular };
enum class SpectrumKind { complex_amplitude, power_density };

const char* to_string(SpectralConvention convention);

struct SpectrumSeries {
  SpectrumKind kind = SpectrumKind::power_density;
  SpectralConvention convention = SpectralConvention::two_sided_angular;
  std::string mode_label;
  std::vector<double> omega_rad_s;
  std::vector<std::complex<double>> amplitude;  // complex_amplitude only
  std::vector<double> power;                    // power_density only, Pa^2 s

  std::size_t size() const { return omega_rad_s.size(); }
};

/// Throws ModelError if the grid is not strictly increasing, the value array
/// does not match it, or a power density is negative.
void check_series(const SpectrumSeries& series);

/// Trapezoidal variance of a power series over its grid, mirrored to negative
/// frequencies for the two-sided convention.
double integrated_variance(const SpectrumSeries& series);

SpectrumSeries to_one_sided(const SpectrumSeries& two_sided);

std::vector<double> linear_grid(double lo, double hi, std::size_t points);
std::vector<double> log_grid(double lo, double hi, std::size_t points);

/// Round-trippable decimal representation.
std::string format_double(double value);

using MetadataLines = std::vector<std::pair<std::string, std::string>>;

void write_csv(std::ostream& out, const SpectrumSeries& series, const MetadataLines& extra = {});
SpectrumSeries read_csv(std::istream& in);

}  // namespace pars
