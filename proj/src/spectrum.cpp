#include "pars/spectrum.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "pars/quantities.hpp"

namespace pars {

const char* to_string(SpectralConvention convention) {
  return convention == SpectralConvention::two_sided_angular ? "two-sided-angular"
                                                             : "one-sided-angular";
}

void check_series(const SpectrumSeries& s) {
  for (std::size_t i = 1; i < s.omega_rad_s.size(); ++i)
    if (!(s.omega_rad_s[i] > s.omega_rad_s[i - 1]))
      throw ModelError("spectrum grid is not strictly increasing");
  if (s.kind == SpectrumKind::power_density) {
    if (s.power.size() != s.omega_rad_s.size()) throw ModelError("spectrum value count mismatch");
    for (double v : s.power)
      if (!(v >= 0.0)) throw ModelError("negative power spectral density");
  } else if (s.amplitude.size() != s.omega_rad_s.size()) {
    throw ModelError("spectrum value count mismatch");
  }
}

double integrated_variance(const SpectrumSeries& s) {
  if (s.kind != SpectrumKind::power_density) throw ModelError("variance needs a power series");
  double sum = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i)
    sum += 0.5 * (s.power[i] + s.power[i - 1]) * (s.omega_rad_s[i] - s.omega_rad_s[i - 1]);
  return s.convention == SpectralConvention::two_sided_angular ? 2.0 * sum / kPi : sum / kPi;
}

SpectrumSeries to_one_sided(const SpectrumSeries& s) {
  if (s.convention == SpectralConvention::one_sided_angular) return s;
  SpectrumSeries out = s;
  out.convention = SpectralConvention::one_sided_angular;
  for (auto& v : out.power) v *= 2.0;
  for (auto& v : out.amplitude) v *= 2.0;
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points < 2) throw ModelError("grid needs at least two points");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw ModelError("log grid bounds must be positive");
  auto g = linear_grid(std::log10(lo), std::log10(hi), points);
  for (auto& v : g) v = std::pow(10.0, v);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw ModelError("format_double failed");
  return {buf, end};
}

void write_csv(std::ostream& out, const SpectrumSeries& s, const MetadataLines& extra) {
  check_series(s);
  out << "# pars " << PARS_VERSION << "\n";
  out << "# convention_tag=" << to_string(s.convention) << "\n";
  out << "# mode=" << s.mode_label << "\n";
  for (const auto& [key, value] : extra) out << "# " << key << "=" << value << "\n";
  if (s.kind == SpectrumKind::power_density) {
    out << "omega_rad_s,psd_pa2_s\n";
    for (std::size_t i = 0; i < s.size(); ++i)
      out << format_double(s.omega_rad_s[i]) << "," << format_double(s.power[i]) << "\n";
  } else {
    out << "omega_rad_s,re_amplitude_pa,im_amplitude_pa,abs_amplitude_pa\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto a = s.amplitude[i];
      out << format_double(s.omega_rad_s[i]) << "," << format_double(a.real()) << ","
          << format_double(a.imag()) << "," << format_double(std::abs(a)) << "\n";
    }
  }
}

namespace {

double parse_field(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ModelError("malformed number in spectrum CSV: " + std::string(text));
  return v;
}

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(parse_field(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

SpectrumSeries read_csv(std::istream& in) {
  SpectrumSeries s;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# convention_tag=", 0) == 0)
        s.convention = line.substr(17) == "one-sided-angular" ? SpectralConvention::one_sided_angular
                                                              : SpectralConvention::two_sided_angular;
      else if (line.rfind("# mode=", 0) == 0)
        s.mode_label = line.substr(7);
      continue;
    }
    if (!have_header) {
      have_header = true;
      s.kind = line.rfind("omega_rad_s,psd", 0) == 0 ? SpectrumKind::power_density
                                                     : SpectrumKind::complex_amplitude;
      continue;
    }
    const auto v = split_numbers(line);
    s.omega_rad_s.push_back(v.at(0));
    if (s.kind == SpectrumKind::power_density)
      s.power.push_back(v.at(1));
    else
      s.amplitude.emplace_back(v.at(1), v.at(2));
  }
  check_series(s);
  return s;
}

}  // namespace pars
