#include "pars/scenario_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "pars/spectrum.hpp"

namespace pars {

ParseError::ParseError(const std::string& message, int line, int column)
    : InputError(line > 0 ? "ParseError at line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ": " + message
                          : "ParseError: " + message),
      line_(line),
      column_(column) {}

namespace {

struct Unit {
  const char* suffix;
  double factor;  // SI value = file value * factor
};

using Getter = std::function<std::optional<double>(const Scenario&)>;
using Setter = std::function<void(Scenario&, double)>;

struct Field {
  const char* section;  // "" for top-level keys
  const char* base;
  std::vector<Unit> units;  // first entry is canonical
  bool required;
  Getter get;
  Setter set;
};

constexpr double kTwoPi = 2.0 * kPi;

#define PARS_FIELD(SECTION, BASE, UNITS, REQUIRED, MEMBER)                                \
  Field {                                                                                 \
    SECTION, BASE, UNITS, REQUIRED,                                                       \
        [](const Scenario& s) -> std::optional<double> { return s.MEMBER; },              \
        [](Scenario& s, double v) { s.MEMBER = v; }                                       \
  }

const std::vector<Field>& field_table() {
  static const std::vector<Field> table = [] {
    const std::vector<Unit> pa{{"pa", 1.0}, {"kpa", 1e3}};
    const std::vector<Unit> kelvin{{"k", 1.0}};
    const std::vector<Unit> ratio{{"ratio", 1.0}};
    const std::vector<Unit> frac{{"frac", 1.0}};
    const std::vector<Unit> metre{{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}};
    const std::vector<Unit> cubic{{"m3", 1.0}, {"um3", 1e-18}};
    const std::vector<Unit> angular{{"rad_s", 1.0}, {"hz", kTwoPi}};
    const std::vector<Unit> per_s{{"per_s", 1.0}};
    const std::vector<Unit> intensity{{"w_m2", 1.0}};

    std::vector<Field> t{
        PARS_FIELD("constants", "hbar", (std::vector<Unit>{{"j_s", 1.0}}), false, constants.hbar_j_s),
        PARS_FIELD("constants", "boltzmann", (std::vector<Unit>{{"j_k", 1.0}}), false,
                   constants.boltzmann_j_k),
        PARS_FIELD("constants", "avogadro", (std::vector<Unit>{{"per_mol", 1.0}}), false,
                   constants.avogadro_per_mol),
        PARS_FIELD("constants", "gas_constant", (std::vector<Unit>{{"j_mol_k", 1.0}}), false,
                   constants.gas_constant_j_mol_k),
        PARS_FIELD("constants", "stefan_boltzmann", (std::vector<Unit>{{"w_m2_k4", 1.0}}), false,
                   constants.stefan_boltzmann_w_m2_k4),
        PARS_FIELD("constants", "speed_of_light", (std::vector<Unit>{{"m_s", 1.0}}), false,
                   constants.speed_of_light_m_s),

        PARS_FIELD("gas", "pressure", pa, true, gas.pressure_pa),
        PARS_FIELD("gas", "temperature", kelvin, true, gas.temperature_k),
        PARS_FIELD("gas", "density", (std::vector<Unit>{{"kg_m3", 1.0}}), true, gas.density_kg_m3),
        PARS_FIELD("gas", "gamma", ratio, true, gas.gamma),
        PARS_FIELD("gas", "molecule_mass", (std::vector<Unit>{{"kg", 1.0}, {"amu", kAtomicMassUnit}}),
                   true, gas.molecule_mass_kg),

        PARS_FIELD("cell", "length", metre, true, cell.length_m),
        PARS_FIELD("cell", "radius", metre, true, cell.radius_m),
        PARS_FIELD("cell", "volume", cubic, false, cell.declared_volume_m3),
        PARS_FIELD("cell", "detector_coverage", frac, false, cell.detector_coverage),

        PARS_FIELD("laser", "pump_frequency", angular, true, laser.omega_pump_rad_s),
        PARS_FIELD("laser", "stokes_frequency", angular, true, laser.omega_stokes_rad_s),
        PARS_FIELD("laser", "intensity_pump", intensity, true, laser.intensity_pump_w_m2),
        PARS_FIELD("laser", "intensity_stokes", intensity, true, laser.intensity_stokes_w_m2),
        PARS_FIELD("laser", "refractive_index_stokes", ratio, true, laser.refractive_index_stokes),
        PARS_FIELD("laser", "modulation_frequency", angular, true, laser.modulation_omega_rad_s),
        PARS_FIELD("laser", "intensity_multiplier", ratio, false, laser.intensity_multiplier),

        PARS_FIELD("particle", "volume", cubic, true, particle.volume_m3),
        PARS_FIELD("particle", "molecules", (std::vector<Unit>{{"count", 1.0}}), true,
                   particle.molecule_count),
        PARS_FIELD("particle", "raman_fraction", frac, true, particle.raman_fraction),
        PARS_FIELD("particle", "active_density", (std::vector<Unit>{{"per_m3", 1.0}}), true,
                   particle.active_density_per_m3),
        PARS_FIELD("particle", "raman_cross_section", (std::vector<Unit>{{"m2_sr", 1.0}}), true,
                   particle.raman_cross_section_m2_sr),
        PARS_FIELD("particle", "raman_linewidth",
                   (std::vector<Unit>{{"hz", 1.0}, {"rad_s", 1.0 / kTwoPi}}), true,
                   particle.linewidth_hz),
        PARS_FIELD("particle", "collisional_decay_rate", per_s, true,
                   particle.gamma_collisional_per_s),
        PARS_FIELD("particle", "radiative_decay_rate", per_s, true, particle.gamma_radiative_per_s),
        PARS_FIELD("particle", "molar_heat_capacity", (std::vector<Unit>{{"j_mol_k", 1.0}}), true,
                   particle.molar_heat_j_mol_k),
        PARS_FIELD("particle", "equivalent_radius", metre, false, particle.radius_override_m),

        PARS_FIELD("detector", "noise_mode_frequency", angular, true,
                   detector.omega_noise_mode_rad_s),
        PARS_FIELD("detector", "noise_damping", per_s, true, detector.gamma_noise_per_s),
        PARS_FIELD("detector", "signal_damping", per_s, true, detector.gamma_signal_per_s),

        PARS_FIELD("model", "dominance", ratio, false, options.dominance_ratio),
        PARS_FIELD("model", "accommodation", frac, false, options.accommodation),
        PARS_FIELD("model", "breakdown_intensity", intensity, false,
                   options.breakdown_intensity_w_m2),
        PARS_FIELD("model", "snr", ratio, false, options.snr),

        PARS_FIELD("", "spore_density", (std::vector<Unit>{{"per_m3", 1.0}}), false,
                   spore_density_per_m3),
    };
    return t;
  }();
  return table;
}

#undef PARS_FIELD

const std::vector<std::string> kSections{"constants", "gas",      "cell", "laser",
                                         "particle",  "detector", "model"};

struct Match {
  const Field* field = nullptr;
  const Unit* unit = nullptr;
};

enum class KeyProblem { none, unknown, bad_unit };

KeyProblem match_key(std::string_view section, std::string_view key, Match& out) {
  bool base_seen = false;
  for (const auto& f : field_table()) {
    if (section != f.section) continue;
    const std::string_view base = f.base;
    if (key == base) {
      base_seen = true;
      continue;
    }
    if (key.size() <= base.size() + 1 || key.substr(0, base.size()) != base ||
        key[base.size()] != '_')
      continue;
    const std::string_view suffix = key.substr(base.size() + 1);
    for (const auto& u : f.units) {
      if (suffix == u.suffix) {
        out = {&f, &u};
        return KeyProblem::none;
      }
    }
    base_seen = true;
  }
  return base_seen ? KeyProblem::bad_unit : KeyProblem::unknown;
}

std::string qualified(std::string_view section, std::string_view key) {
  return section.empty() ? std::string(key) : std::string(section) + "." + std::string(key);
}

std::string allowed_units(std::string_view section, std::string_view key) {
  std::string out;
  for (const auto& f : field_table()) {
    if (section != f.section || key.substr(0, std::string_view(f.base).size()) != f.base) continue;
    for (const auto& u : f.units) out += (out.empty() ? "" : ", ") + std::string(f.base) + "_" + u.suffix;
  }
  return out;
}

std::string canonical_key(const Field& f) { return std::string(f.base) + "_" + f.units.front().suffix; }

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }
int column_of(const YAML::Node& n) { return n.Mark().column + 1; }

double read_number(const YAML::Node& value, const std::string& where) {
  if (!value.IsScalar())
    throw ParseError(where + ": expected a number", line_of(value), column_of(value));
  if (value.Tag() == "!")
    throw ParseError(where + ": quoted value; quantities must be bare numbers with the unit in the key",
                     line_of(value), column_of(value));
  const std::string& text = value.Scalar();
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw ParseError(where + ": '" + text + "' is not a finite number", line_of(value),
                     column_of(value));
  return v;
}

class Loader {
 public:
  Loader(const ParseOptions& options) : options_(options) {}

  ParsedScenario run(const YAML::Node& root) {
    if (!root.IsDefined() || root.IsNull())
      throw ParseError("empty document", 1, 1);
    if (!root.IsMap()) throw ParseError("top level must be a mapping", line_of(root), column_of(root));

    const YAML::Node version = root["format_version"];
    if (!version) throw ParseError("missing format_version", 1, 1);
    const double v = read_number(version, "format_version");
    if (v != kScenarioFormatVersion)
      throw ParseError("unsupported format_version " + version.Scalar() + " (expected " +
                           std::to_string(kScenarioFormatVersion) + ")",
                       line_of(version), column_of(version));

    for (auto it = root.begin(); it != root.end(); ++it) {
      const std::string key = it->first.as<std::string>();
      if (key == "format_version") continue;
      if (std::find(kSections.begin(), kSections.end(), key) != kSections.end()) {
        if (!it->second.IsMap())
          throw ParseError("section '" + key + "' must be a mapping", line_of(it->second),
                           column_of(it->second));
        load_section(key, it->second);
      } else {
        load_key("", it->first, it->second);
      }
    }

    std::vector<std::string> missing;
    for (const auto& f : field_table()) {
      if (!f.required || seen_.count(&f)) continue;
      missing.push_back(qualified(f.section, canonical_key(f)));
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      throw ParseError("missing required keys: " + list, 0, 0);
    }
    return std::move(result_);
  }

 private:
  void load_section(const std::string& section, const YAML::Node& map) {
    for (auto it = map.begin(); it != map.end(); ++it) load_key(section, it->first, it->second);
  }

  void load_key(const std::string& section, const YAML::Node& key_node, const YAML::Node& value) {
    const std::string key = key_node.as<std::string>();
    const std::string where = qualified(section, key);
    if (section == "model" && key == "linewidth_convention") {
      const std::string text = value.IsScalar() ? value.Scalar() : "";
      if (text == "ordinary") result_.scenario.options.linewidth = LinewidthConvention::ordinary_hz;
      else if (text == "angular") result_.scenario.options.linewidth = LinewidthConvention::angular;
      else
        throw ParseError(where + ": expected 'ordinary' or 'angular'", line_of(value),
                         column_of(value));
      return;
    }

    Match match;
    switch (match_key(section, key, match)) {
      case KeyProblem::none: break;
      case KeyProblem::bad_unit:
        throw ParseError(where + ": missing or unknown unit suffix (accepted: " +
                             allowed_units(section, key) + ")",
                         line_of(key_node), column_of(key_node));
      case KeyProblem::unknown: {
        const std::string message = "unknown key '" + where + "'";
        if (!options_.lenient) throw ParseError(message, line_of(key_node), column_of(key_node));
        result_.warnings.push_back(message + " at line " + std::to_string(line_of(key_node)) +
                                   " ignored");
        return;
      }
    }
    if (!seen_.insert(match.field).second)
      throw ParseError(where + ": quantity given more than once", line_of(key_node),
                       column_of(key_node));
    match.field->set(result_.scenario, read_number(value, where) * match.unit->factor);
  }

  const ParseOptions& options_;
  ParsedScenario result_;
  std::set<const Field*> seen_;
};

void emit(std::ostream& out, const std::string& key, double value, bool indent) {
  out << (indent ? "  " : "") << key << ": " << format_double(value) << "\n";
}

std::pair<std::string_view, std::string_view> split_path(std::string_view path) {
  const auto dot = path.find('.');
  if (dot == std::string_view::npos) return {std::string_view{}, path};
  return {path.substr(0, dot), path.substr(dot + 1)};
}

Match resolve_path(std::string_view path) {
  const auto [section, key] = split_path(path);
  Match match;
  if (match_key(section, key, match) != KeyProblem::none)
    throw InputError("UnknownParameterPath: '" + std::string(path) + "'");
  return match;
}

}  // namespace

ParsedScenario parse_scenario(std::string_view text, const ParseOptions& options) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  try {
    return Loader(options).run(root);
  } catch (const YAML::Exception& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
}

ParsedScenario load_scenario(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), options);
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "format_version: " << kScenarioFormatVersion << "\n";
  for (const auto& section : kSections) {
    out << section << ":\n";
    if (section == "model")
      out << "  linewidth_convention: "
          << (s.options.linewidth == LinewidthConvention::angular ? "angular" : "ordinary") << "\n";
    for (const auto& f : field_table()) {
      if (section != f.section) continue;
      if (const auto v = f.get(s)) emit(out, canonical_key(f), *v, true);
    }
  }
  for (const auto& f : field_table()) {
    if (*f.section != '\0') continue;
    if (const auto v = f.get(s)) emit(out, canonical_key(f), *v, false);
  }
  return out.str();
}

std::string scenario_hash(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char ch : serialize_scenario(s)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void set_scenario_field(Scenario& s, std::string_view path, double value) {
  const Match m = resolve_path(path);
  m.field->set(s, value * m.unit->factor);
}

double get_scenario_field(const Scenario& s, std::string_view path) {
  const Match m = resolve_path(path);
  const auto v = m.field->get(s);
  if (!v) return std::numeric_limits<double>::quiet_NaN();
  return *v / m.unit->factor;
}

std::vector<std::string> scenario_field_paths() {
  std::vector<std::string> out;
  for (const auto& f : field_table()) out.push_back(qualified(f.section, canonical_key(f)));
  return out;
}

}  // namespace pars
