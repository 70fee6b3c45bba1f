#pragma once

// Parameter sweeps over one or two scenario fields.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pars/quantities.hpp"

namespace pars {

enum class GridKind { linear, logarithmic };

/// One swept axis. Several paths move together (e.g. both beam intensities).
struct SweepAxis {
  std::vector<std::string> paths;
  GridKind grid = GridKind::logarithmic;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 2;

  std::vector<double> values() const;
  std::string label() const;
};

/// Parses "path[+path]:log|lin:lo:hi:n". Throws InputError.
SweepAxis parse_sweep_axis(std::string_view text);

struct SweepSpec {
  std::vector<SweepAxis> axes;  // outer first; at most two
};

/// Throws InputError for bad bounds, point counts or unknown paths.
void check_sweep(const SweepSpec& spec);

struct SweepRow {
  std::vector<double> values;
  double rho_min = 0.0;
  double h_nep = 0.0;
  double h_r = 0.0;
  std::uint32_t warnings = 0;
};

/// Evaluates every grid point in parallel; rows come back outer-then-inner.
std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec);

void write_sweep_csv(std::ostream& out, const Scenario& base, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows);

}  // namespace pars
