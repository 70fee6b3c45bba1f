#include "pars/sweep.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "parallel.hpp"
#include "pars/detection.hpp"
#include "pars/scenario_io.hpp"
#include "pars/spectrum.hpp"

namespace pars {

std::vector<double> SweepAxis::values() const {
  return grid == GridKind::logarithmic ? log_grid(lo, hi, points) : linear_grid(lo, hi, points);
}

std::string SweepAxis::label() const {
  std::string out;
  for (const auto& p : paths) out += (out.empty() ? "" : "+") + p;
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_bound(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InputError("bad sweep bound '" + std::string(text) + "' in '" + std::string(whole) + "'");
  return v;
}

}  // namespace

SweepAxis parse_sweep_axis(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 5)
    throw InputError("sweep axis '" + std::string(text) + "' must look like path[+path]:log|lin:lo:hi:n");
  SweepAxis axis;
  for (auto p : split(parts[0], '+')) axis.paths.emplace_back(p);
  if (parts[1] == "log") axis.grid = GridKind::logarithmic;
  else if (parts[1] == "lin") axis.grid = GridKind::linear;
  else throw InputError("sweep grid must be 'log' or 'lin', got '" + std::string(parts[1]) + "'");
  axis.lo = parse_bound(parts[2], text);
  axis.hi = parse_bound(parts[3], text);
  long long n = 0;
  const auto [ptr, ec] = std::from_chars(parts[4].data(), parts[4].data() + parts[4].size(), n);
  if (ec != std::errc() || ptr != parts[4].data() + parts[4].size() || n < 2)
    throw InputError("sweep point count must be an integer >= 2 in '" + std::string(text) + "'");
  axis.points = static_cast<std::size_t>(n);
  return axis;
}

void check_sweep(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) throw InputError("a sweep takes one or two axes");
  Scenario probe;
  for (const auto& a : spec.axes) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.lo < a.hi))
      throw InputError("sweep bounds for " + a.label() + " must be finite with lo < hi");
    if (a.grid == GridKind::logarithmic && !(a.lo > 0.0))
      throw InputError("log sweep bounds for " + a.label() + " must be positive");
    if (a.points < 2) throw InputError("sweep over " + a.label() + " needs at least 2 points");
    for (const auto& p : a.paths) set_scenario_field(probe, p, a.lo);
  }
}

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec) {
  check_sweep(spec);
  std::vector<std::vector<double>> grids;
  for (const auto& a : spec.axes) grids.push_back(a.values());
  const std::size_t inner = grids.size() > 1 ? grids[1].size() : 1;
  const std::size_t count = grids[0].size() * inner;

  std::vector<SweepRow> rows(count);
  detail::parallel_for(count, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.values.push_back(grids[0][i / inner]);
    if (grids.size() > 1) row.values.push_back(grids[1][i % inner]);

    Scenario s = base;
    for (std::size_t k = 0; k < row.values.size(); ++k)
      for (const auto& p : spec.axes[k].paths) set_scenario_field(s, p, row.values[k]);
    const auto checked = validate_scenario(s);
    if (!checked.ok()) {
      const auto& v = checked.violations.front();
      throw InputError("sweep point " + std::to_string(i) + " is invalid: " + v.field + " " +
                       v.message);
    }
    const DetectionReport r = min_density(*checked.scenario);
    row.rho_min = r.rho_min;
    row.h_nep = r.h_nep;
    row.h_r = r.h_r;
    row.warnings = r.warning_bits;
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const Scenario& base, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows) {
  out << "# pars " << PARS_VERSION << "\n";
  out << "# scenario_hash=" << scenario_hash(base) << "\n";
  out << "# convention_tag=" << to_string(SpectralConvention::two_sided_angular) << "\n";
  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    const auto& a = spec.axes[k];
    out << "# axis" << k << "=" << a.label() << ":" << (a.grid == GridKind::logarithmic ? "log" : "lin")
        << ":" << format_double(a.lo) << ":" << format_double(a.hi) << ":" << a.points << "\n";
  }
  for (const auto& a : spec.axes) out << a.label() << ",";
  out << "rho_min_per_m3,h_nep_w_m3_s05,h_r_w_m3,warnings\n";
  for (const auto& r : rows) {
    for (double v : r.values) out << format_double(v) << ",";
    out << format_double(r.rho_min) << "," << format_double(r.h_nep) << "," << format_double(r.h_r)
        << "," << r.warnings << "\n";
  }
}

}  // namespace pars
