#include "pars/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "pars/detection.hpp"
#include "pars/noise.hpp"
#include "pars/scenario_io.hpp"
#include "pars/spectrum.hpp"

namespace pars {

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::string unit;
};

struct Section {
  std::string name;
  std::vector<Entry> entries;

  void add(std::string key, double value, std::string unit) {
    entries.push_back({std::move(key), format_double(value), std::move(unit)});
  }
  void add_text(std::string key, std::string value) {
    entries.push_back({std::move(key), std::move(value), ""});
  }
};

// Six significant digits for the text view; kv keeps full precision.
std::string short_number(const std::string& full) {
  double v = 0.0;
  if (std::sscanf(full.c_str(), "%lf", &v) != 1 || full.find_first_not_of("-+.0123456789eE") != std::string::npos)
    return full;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void render(std::ostream& out, const std::vector<Section>& sections, ReportFormat format) {
  if (format == ReportFormat::kv) {
    for (const auto& s : sections)
      for (const auto& e : s.entries) out << s.name << "." << e.key << "=" << e.value << "\n";
    return;
  }
  for (const auto& s : sections) {
    out << "\n[" << s.name << "]\n";
    for (const auto& e : s.entries) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-40s %-14s %s", e.key.c_str(), short_number(e.value).c_str(),
                    e.unit.c_str());
      std::string text = line;
      while (!text.empty() && text.back() == ' ') text.pop_back();
      out << text << "\n";
    }
  }
}

std::string mode_row(const AcousticMode& m, double overlap_ratio, double psd) {
  char line[200];
  std::snprintf(line, sizeof line, "  %-10s %14.6e %14.6e %10.6f %10.6f %12.4e %12.4e",
                to_string(m.index).c_str(), m.omega_rad_s, m.omega_rad_s / (2.0 * kPi), m.radial_root,
                m.normalization, overlap_ratio, psd);
  return line;
}

}  // namespace

void render_mode_table(std::ostream& out, const Scenario& s, const ModeCutoffs& cutoffs,
                       ReportFormat format) {
  const auto modes = cylinder_modes(s.cell, s.gas, cutoffs);
  const auto source = HeatSourceField::uniform(1.0, s.laser.modulation_omega_rad_s);
  const double volume = s.cell.volume_m3();
  const double omega = s.laser.modulation_omega_rad_s;
  if (format == ReportFormat::kv) {
    for (const auto& m : modes) {
      const std::string id = "mode." + to_string(m.index) + ".";
      out << id << "omega_rad_s=" << format_double(m.omega_rad_s) << "\n";
      out << id << "radial_root=" << format_double(m.radial_root) << "\n";
      out << id << "normalization=" << format_double(m.normalization) << "\n";
      out << id << "uniform_overlap_ratio=" << format_double(mode_overlap(m, source, s.cell) / volume) << "\n";
      if (m.omega_rad_s > 0.0)
        out << id << "noise_psd_pa2_s=" << format_double(noise_psd(m.omega_rad_s, s, omega)) << "\n";
    }
    return;
  }
  char head[200];
  std::snprintf(head, sizeof head, "  %-10s %14s %14s %10s %10s %12s %12s", "(q,m,n)", "omega_rad_s",
                "freq_hz", "alpha", "norm", "overlap/V", "noise_pa2_s");
  out << head << "\n";
  for (const auto& m : modes) {
    const double psd = m.omega_rad_s > 0.0 ? noise_psd(m.omega_rad_s, s, omega) : 0.0;
    out << mode_row(m, mode_overlap(m, source, s.cell) / volume, psd) << "\n";
  }
}

void render_report(std::ostream& out, const Scenario& s, const ReportOptions& options) {
  const DetectionReport r = min_density(s);
  const auto modes = cylinder_modes(s.cell, s.gas, options.cutoffs);

  std::vector<Section> sections;

  Section raman{"raman", {}};
  raman.add_text("linewidth_convention",
                 s.options.linewidth == LinewidthConvention::angular ? "angular" : "ordinary");
  raman.add("gain_factor_G", r.gain.gain_factor_m_per_w, "m/W");
  raman.add("gain_per_m", r.gain.gain_per_m, "1/m");
  raman.add("population_factor", r.gain.population_factor, "");
  raman.add("stokes_velocity", r.gain.stokes_velocity_m_s, "m/s");
  raman.add("spore_gain_exact", r.spore_gain.exact, "");
  raman.add("spore_gain_linearized", r.spore_gain.linearized, "");
  raman.add("branching", r.heat.branching, "");
  raman.add("shift_ratio", r.heat.shift_ratio, "");
  raman.add("stokes_gain_rate", r.heat.stokes_gain_rate_w_m3, "W/m^3");
  raman.add("absorbed_rate", r.heat.absorbed_rate_w_m3, "W/m^3");
  raman.add("H_R", r.h_r, "W/m^3");
  sections.push_back(raman);

  const auto& t = r.thermal;
  Section thermal{"thermal", {}};
  thermal.add("collision_rate_N_c", t.collision_rate_per_s, "1/s");
  thermal.add("temperature_rise", t.temperature_rise_k, "K");
  thermal.add("peak_particle_temperature", t.spore_temperature_k, "K");
  thermal.add("collisional_timescale", t.collisional_timescale_s, "s");
  thermal.add("radiative_power_at_peak", t.radiative_power_w, "W");
  thermal.add("deposited_energy", t.deposited_energy_j, "J");
  thermal.add("radiative_timescale", t.radiative_timescale_s, "s");
  thermal.add("modulation_time", t.modulation_time_s, "s");
  for (const auto& c : t.efficiency.checks) {
    thermal.add("check." + c.name + ".ratio", c.ratio, "");
    thermal.add_text("check." + c.name, c.passed ? "pass" : "fail");
  }
  thermal.add("eta", r.eta, "");
  sections.push_back(thermal);

  Section acoustics{"acoustics", {}};
  acoustics.add("sound_speed", sound_speed(s.gas), "m/s");
  acoustics.add("cell_volume", s.cell.volume_m3(), "m^3");
  acoustics.add("modes_listed", static_cast<double>(modes.size()), "");
  for (const auto& m : modes)
    if (!m.is_uniform()) {
      acoustics.add_text("lowest_nonuniform_mode", to_string(m.index));
      acoustics.add("lowest_nonuniform_omega", m.omega_rad_s, "rad/s");
      break;
    }
  sections.push_back(acoustics);

  Section noise{"noise", {}};
  noise.add("diffusion_D", diffusion_coefficient(s), "kg^2/s^3");
  noise.add("mode_variance", noise_variance(s), "Pa^2");
  noise.add("analysis_omega", r.noise.assumptions.omega, "rad/s");
  noise.add("dominant_mode_omega_1", r.noise.assumptions.omega_noise_mode, "rad/s");
  noise.add("H_NEP", r.h_nep, "W m^-3 s^1/2");
  noise.add("V_H_NEP", r.noise.vh_nep, "W s^1/2");
  noise.add("higher_mode_noise_ratio",
            higher_mode_noise_ratio(s, modes, options.higher_modes, r.noise.assumptions.omega), "");
  sections.push_back(noise);

  Section det{"detection", {}};
  det.add("sqrt_gamma_s", r.bandwidth_root, "s^-1/2");
  det.add("detector_coverage", r.detector_coverage, "");
  det.add("snr", r.snr, "");
  det.add("intensity_product", r.intensity_product, "W^2/m^4");
  det.add("rho_min", r.rho_min, "1/m^3");
  det.add("rho_min_times_intensity_product", r.rho_min * r.intensity_product, "W^2 m^-7");
  det.add("expected_count_in_cell", r.sparse.expected_count, "");
  if (s.spore_density_per_m3) det.add("available_power_density", r.h_available, "W/m^3");
  det.add("max_intensity", r.breakdown.max_intensity_w_m2, "W/m^2");
  det.add("breakdown_threshold", r.breakdown.threshold_w_m2, "W/m^2");
  det.add_text("warning_bits", std::to_string(r.warning_bits));
  sections.push_back(det);

  out << "# pars " << PARS_VERSION << "\n";
  out << "# scenario_hash=" << scenario_hash(s) << "\n";
  out << "# convention_tag=" << to_string(SpectralConvention::two_sided_angular) << "\n";
  render(out, sections, options.format);

  std::vector<std::string> notes = options.input_warnings;
  for (const Warning w : decode_warnings(r.warning_bits)) {
    std::string text = to_string(w);
    switch (w) {
      case Warning::breakdown:
        text += ": beam intensity " + short_number(format_double(r.breakdown.max_intensity_w_m2)) +
                " W/m^2 reaches the air breakdown threshold";
        break;
      case Warning::timescales_not_separated:
        text += ": heat transfer is not fast compared with modulation and radiation; eta < 1";
        break;
      case Warning::modulation_not_small:
        text += ": modulation frequency exceeds omega_1 / 10, NEP approximation degraded";
        break;
      case Warning::sparse_regime:
        text += ": fewer than 10 particles expected in the cell at rho_min; continuum density is a poor description";
        break;
      case Warning::small_gain_invalid:
        text += ": Stokes gain over the particle is not small, linearized heating overestimates";
        break;
    }
    notes.push_back(text);
  }

  if (options.format == ReportFormat::kv) {
    render_mode_table(out, s, options.cutoffs, ReportFormat::kv);
    for (std::size_t i = 0; i < notes.size(); ++i) out << "warning." << i << "=" << notes[i] << "\n";
    return;
  }
  out << "\n[modes]\n";
  render_mode_table(out, s, options.cutoffs, ReportFormat::text);
  out << "\n[warnings]\n";
  if (notes.empty()) out << "  none\n";
  for (const auto& n : notes) out << "  " << n << "\n";
}

}  // namespace pars
