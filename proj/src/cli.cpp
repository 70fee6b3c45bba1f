#include "pars/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pars/detection.hpp"
#include "pars/noise.hpp"
#include "pars/oracle.hpp"
#include "pars/presets.hpp"
#include "pars/report.hpp"
#include "pars/scenario_io.hpp"
#include "pars/spectrum.hpp"
#include "pars/sweep.hpp"

namespace pars {

namespace {

struct Source {
  std::string scenario_path;
  std::string preset;
  bool lenient = false;
  std::optional<double> snr;
};

struct LoadedScenario {
  Scenario scenario;
  std::vector<std::string> warnings;
};

void add_source_options(CLI::App* cmd, Source& src) {
  auto* file = cmd->add_option("--scenario", src.scenario_path, "scenario file (YAML)");
  auto* preset = cmd->add_option("--preset", src.preset, "bundled preset name");
  file->excludes(preset);
  cmd->add_flag("--lenient", src.lenient, "treat unknown keys as warnings");
  cmd->add_option("--snr", src.snr, "required signal-to-noise ratio");
}

LoadedScenario load(const Source& src, const char* fallback_preset = nullptr) {
  LoadedScenario out;
  if (!src.scenario_path.empty()) {
    auto parsed = load_scenario(src.scenario_path, {src.lenient});
    out.scenario = parsed.scenario;
    out.warnings = parsed.warnings;
  } else if (!src.preset.empty()) {
    out.scenario = find_preset(src.preset).scenario;
  } else if (fallback_preset) {
    out.scenario = find_preset(fallback_preset).scenario;
  } else {
    throw InputError("give --scenario <path> or --preset <name>");
  }
  if (src.snr) out.scenario.options.snr = *src.snr;

  const auto checked = validate_scenario(out.scenario);
  if (!checked.ok()) {
    std::string message = "ValidationError: " + std::to_string(checked.violations.size()) +
                          " violation(s)";
    for (const auto& v : checked.violations)
      message += "\n  " + std::string(to_string(v.kind)) + " " + v.field + ": " + v.message;
    throw InputError(message);
  }
  out.scenario = *checked.scenario;
  return out;
}

ModeCutoffs parse_cutoffs(const std::string& text) {
  ModeCutoffs c;
  if (text.empty()) return c;
  int values[3];
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const auto end = text.find(',', start);
    if ((i < 2) == (end == std::string::npos))
      throw InputError("--max-modes expects q,m,n, got '" + text + "'");
    const std::string part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), values[i]);
    if (ec != std::errc() || ptr != part.data() + part.size() || values[i] < 0)
      throw InputError("--max-modes expects non-negative integers, got '" + text + "'");
    start = end + 1;
  }
  return {values[0], values[1], values[2]};
}

ReportFormat parse_format(const std::string& text) {
  if (text == "text") return ReportFormat::text;
  if (text == "kv") return ReportFormat::kv;
  throw InputError("--format must be 'text' or 'kv'");
}

void emit(const std::string& body, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << body;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("UnwritableOutput: cannot open '" + path + "' for writing");
  file << body;
  file.flush();
  if (!file) throw InputError("UnwritableOutput: write to '" + path + "' failed");
}

struct NoiseCheckConfig {
  std::uint64_t seed = 1;
  int ensemble = 64;
  double timestep = 0.0;  // 0 selects 0.04 / max(omega_1, Gamma_n)
  double duration = 0.4;
  std::size_t segment = 4096;
  double psd_tolerance = 0.10;
  double sigma_limit = 3.0;
  std::string psd_out;
};

class InsufficientStatistics : public InputError {
 public:
  using InputError::InputError;
};

int validate_noise(const Scenario& s, const NoiseCheckConfig& cfg, std::ostream& out) {
  const auto& d = s.detector;
  SdeRunConfig run;
  run.mode_omega_rad_s = d.omega_noise_mode_rad_s;
  run.damping_per_s = d.gamma_noise_per_s;
  run.timestep_s = cfg.timestep > 0.0 ? cfg.timestep : 0.04 / std::max(run.mode_omega_rad_s, run.damping_per_s);
  run.duration_s = cfg.duration;
  run.seed = cfg.seed;
  run.ensemble_size = cfg.ensemble;
  run.psd_segment = cfg.segment;
  check_stability_guard(run);

  if (cfg.ensemble < 2)
    throw InsufficientStatistics(
        "insufficient statistics: ensemble_size " + std::to_string(cfg.ensemble) +
        " gives no standard error; use at least 2 members (64 recommended)");
  const auto samples = static_cast<std::size_t>(std::llround(run.duration_s / run.timestep_s));
  if (samples < 4 * cfg.segment)
    throw InsufficientStatistics("insufficient statistics: " + std::to_string(samples) +
                                 " samples per member give fewer than 4 PSD segments of " +
                                 std::to_string(cfg.segment));

  const TrajectoryStats t = integrate_langevin(run, s);

  out << "# pars " << PARS_VERSION << "\n";
  out << "# scenario_hash=" << scenario_hash(s) << "\n";
  out << "# convention_tag=" << to_string(t.psd.convention) << "\n";
  out << "# rng=" << t.rng << "\n";
  out << "seed " << cfg.seed << ", ensemble " << t.ensemble_size << ", timestep "
      << format_double(run.timestep_s) << " s, " << t.samples_per_member << " samples per member\n\n";

  const double z = std::abs(t.equipartition_ratio - 1.0) / t.equipartition_stderr;
  const bool equipartition_ok = z <= cfg.sigma_limit;
  char line[200];
  std::snprintf(line, sizeof line, "equipartition rho0 V <u^2> / kT = %.6f +- %.6f  (%.2f sigma)  %s\n",
                t.equipartition_ratio, t.equipartition_stderr, z, equipartition_ok ? "PASS" : "FAIL");
  out << line;

  const double lo = d.omega_noise_mode_rad_s / 4.0;
  const double hi = d.omega_noise_mode_rad_s * 4.0;
  double worst = 0.0;
  std::size_t compared = 0;
  std::ostringstream table;
  std::ostringstream csv;
  csv << "# pars " << PARS_VERSION << "\n# scenario_hash=" << scenario_hash(s)
      << "\n# convention_tag=" << to_string(t.psd.convention) << "\n"
      << "omega_rad_s,empirical_pa2_s,analytic_pa2_s,ratio,stderr_pa2_s\n";
  table << "\n  omega_rad_s      empirical      analytic      ratio\n";
  for (std::size_t k = 0; k < t.psd.size(); ++k) {
    const double w = t.psd.omega_rad_s[k];
    if (w < lo || w > hi) continue;
    const double analytic = noise_psd(d.omega_noise_mode_rad_s, s, w);
    const double ratio = t.psd.power[k] / analytic;
    worst = std::max(worst, std::abs(ratio - 1.0));
    if (compared % 8 == 0) {
      std::snprintf(line, sizeof line, "  %11.5e  %12.6e  %12.6e  %8.5f\n", w, t.psd.power[k], analytic,
                    ratio);
      table << line;
    }
    csv << format_double(w) << "," << format_double(t.psd.power[k]) << "," << format_double(analytic)
        << "," << format_double(ratio) << "," << format_double(t.psd_stderr[k]) << "\n";
    ++compared;
  }
  if (compared == 0) throw InsufficientStatistics("insufficient statistics: no PSD bins in the check band");
  const bool psd_ok = worst <= cfg.psd_tolerance;
  std::snprintf(line, sizeof line,
                "psd vs analytic on [%.4g, %.4g] rad/s: %zu bins, max |ratio - 1| = %.4f (limit %.2f)  %s\n",
                lo, hi, compared, worst, cfg.psd_tolerance, psd_ok ? "PASS" : "FAIL");
  out << line << table.str();

  const double variance = integrated_variance(t.psd);
  std::snprintf(line, sizeof line, "\npressure variance from psd / rho0 c^2 kT / V = %.5f (informational)\n",
                variance / noise_variance(s));
  out << line;

  if (!cfg.psd_out.empty()) emit(csv.str(), cfg.psd_out, out);
  const bool ok = equipartition_ok && psd_ok;
  out << (ok ? "validate-noise: PASS\n" : "validate-noise: FAIL\n");
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detection-limit simulator for photoacoustic Raman spectroscopy", "parsim"};
  app.set_version_flag("--version", std::string("parsim ") + PARS_VERSION);
  app.require_subcommand(1);

  Source src;
  std::string out_path;
  std::string max_modes;
  std::string format = "text";

  auto* report = app.add_subcommand("report", "print the detection chain for a scenario");
  add_source_options(report, src);
  report->add_option("--out", out_path, "write to a file instead of stdout");
  report->add_option("--max-modes", max_modes, "mode cutoffs q,m,n (default 3,0,2)");
  report->add_option("--format", format, "text or kv");

  std::vector<std::string> axes;
  auto* sweep = app.add_subcommand("sweep", "evaluate the detection limit over a parameter grid");
  add_source_options(sweep, src);
  sweep->add_option("--axis", axes, "path[+path]:log|lin:lo:hi:n, outer axis first (max 2)")
      ->required();
  sweep->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  NoiseCheckConfig noise_cfg;
  auto* noise = app.add_subcommand("validate-noise", "compare the stochastic oracle with the noise model");
  add_source_options(noise, src);
  noise->add_option("--seed", noise_cfg.seed, "run seed");
  noise->add_option("--ensemble", noise_cfg.ensemble, "ensemble size");
  noise->add_option("--timestep", noise_cfg.timestep, "timestep in s");
  noise->add_option("--duration", noise_cfg.duration, "recorded duration per member in s");
  noise->add_option("--segment", noise_cfg.segment, "Welch segment length");
  noise->add_option("--out", noise_cfg.psd_out, "CSV of the PSD comparison");

  std::string dump;
  auto* list = app.add_subcommand("presets", "list bundled presets");
  list->add_option("--dump", dump, "print a preset as a scenario file");
  list->add_option("--out", out_path, "write to a file instead of stdout");

  auto* modes = app.add_subcommand("modes", "print the acoustic mode table");
  add_source_options(modes, src);
  modes->add_option("--max-modes", max_modes, "mode cutoffs q,m,n (default 3,0,2)");
  modes->add_option("--format", format, "text or kv");
  modes->add_option("--out", out_path, "write to a file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ostringstream body;
    int code = kExitOk;
    if (*report) {
      const auto loaded = load(src);
      ReportOptions options;
      options.cutoffs = parse_cutoffs(max_modes);
      options.format = parse_format(format);
      options.input_warnings = loaded.warnings;
      render_report(body, loaded.scenario, options);
    } else if (*sweep) {
      const auto loaded = load(src);
      for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
      SweepSpec spec;
      for (const auto& a : axes) spec.axes.push_back(parse_sweep_axis(a));
      check_sweep(spec);
      const auto rows = run_sweep(loaded.scenario, spec);
      write_sweep_csv(body, loaded.scenario, spec, rows);
    } else if (*noise) {
      const auto loaded = load(src, "anthrax_stp");
      for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
      code = validate_noise(loaded.scenario, noise_cfg, body);
    } else if (*list) {
      if (!dump.empty()) {
        body << serialize_scenario(find_preset(dump).scenario);
      } else {
        for (const auto& p : presets()) {
          body << p.name << "  " << p.summary << "  [hash " << scenario_hash(p.scenario) << "]\n";
          for (const auto& n : p.notes) body << "    - " << n << "\n";
        }
        const auto gas = air_stp();
        const auto det = condenser_microphone();
        body << "\nblocks\n";
        body << "air_stp  gas: P0 = " << format_double(gas.pressure_pa) << " Pa, T0 = "
             << format_double(gas.temperature_k) << " K, rho0 = " << format_double(gas.density_kg_m3)
             << " kg/m^3, gamma = " << format_double(gas.gamma) << ", m_g = 28 amu\n";
        body << "condenser_microphone  detector: omega_1 = " << format_double(det.omega_noise_mode_rad_s)
             << " rad/s, Gamma_n = " << format_double(det.gamma_noise_per_s)
             << " /s, Gamma_s = " << format_double(det.gamma_signal_per_s) << " /s\n";
      }
    } else if (*modes) {
      const auto loaded = load(src);
      render_mode_table(body, loaded.scenario, parse_cutoffs(max_modes), parse_format(format));
    }
    emit(body.str(), out_path, out);
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace pars
