#pragma once

// Human-readable and key=value renderings of the detection chain.

#include <iosfwd>
#include <string>
#include <vector>

#include "pars/acoustics.hpp"
#include "pars/quantities.hpp"

namespace pars {

enum class ReportFormat { text, kv };

struct ReportOptions {
  ModeCutoffs cutoffs;
  ReportFormat format = ReportFormat::text;
  std::size_t higher_modes = 5;  // modes summed in the higher-mode noise diagnostic
  std::vector<std::string> input_warnings;
};

/// Full chain from gain to minimum density. Output depends only on the scenario
/// and options, so repeated runs are byte-identical.
void render_report(std::ostream& out, const Scenario& scenario, const ReportOptions& options);

void render_mode_table(std::ostream& out, const Scenario& scenario, const ModeCutoffs& cutoffs,
                       ReportFormat format);

}  // namespace pars
