#pragma once

// Scenario files: a versioned YAML document with one section per Scenario
// block. Every numeric key ends in a unit suffix, e.g. `pressure_pa`,
// `modulation_frequency_hz`; the value is converted to the canonical SI unit
// on load. Bare keys and quantities written as strings are rejected.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pars/quantities.hpp"

namespace pars {

inline constexpr int kScenarioFormatVersion = 1;

/// Bad user input (exit code 2 at the command line).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document. Line and column are 1-based; 0 when unknown.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParseOptions {
  bool lenient = false;  // unknown keys become warnings
};

struct ParsedScenario {
  Scenario scenario;
  std::vector<std::string> warnings;
};

/// Parses without validating physical invariants (see validate_scenario).
ParsedScenario parse_scenario(std::string_view text, const ParseOptions& options = {});

/// Throws InputError if the file cannot be read.
ParsedScenario load_scenario(const std::filesystem::path& path, const ParseOptions& options = {});

/// Canonical text: fixed key order, canonical units, shortest round-trip numbers.
std::string serialize_scenario(const Scenario& scenario);

/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string scenario_hash(const Scenario& scenario);

/// Sets the field named by a dotted scenario-file key such as
/// `laser.intensity_pump_w_m2`, converting from the key's unit. Throws
/// InputError ("UnknownParameterPath") for anything else.
void set_scenario_field(Scenario& scenario, std::string_view path, double value);

/// Reads the same field back, in the unit of the key.
double get_scenario_field(const Scenario& scenario, std::string_view path);

/// Every numeric dotted key in canonical units.
std::vector<std::string> scenario_field_paths();

}  // namespace pars
