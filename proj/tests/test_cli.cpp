#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pars/cli.hpp"
#include "pars/noise.hpp"
#include "pars/presets.hpp"
#include "pars/scenario_io.hpp"
#include "support.hpp"

using namespace pars;
using pars::testing::rel_diff;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("pars_test_" + name);
  std::ofstream(path) << content;
  return path;
}

std::vector<std::vector<double>> csv_rows(const std::string& text, std::vector<std::string>* header = nullptr) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      if (header) header->push_back(line);
      continue;
    }
    std::vector<double> row;
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, ',')) row.push_back(std::strtod(f.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("report output is byte identical across runs") {
    const auto a = run({"report", "--preset", "anthrax_stp"});
    const auto b = run({"report", "--preset", "anthrax_stp"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find("rho_min") != std::string::npos);
    const auto kv = run({"report", "--preset", "anthrax_stp", "--format", "kv"});
    CHECK(kv.code == kExitOk);
    CHECK(kv.out.find("detection.rho_min=") != std::string::npos);
  }

  TEST_CASE("report from a scenario file matches the preset") {
    const auto path = temp_file("anthrax.yaml", serialize_scenario(anthrax_stp()));
    const auto a = run({"report", "--scenario", path.string()});
    const auto b = run({"report", "--preset", "anthrax_stp"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }

  TEST_CASE("breakdown intensity is reported as a warning") {
    const auto r = run({"report", "--preset", "anthrax_high_intensity"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("breakdown threshold") != std::string::npos);
  }

  TEST_CASE("empty scenario file") {
    const auto path = temp_file("empty.yaml", "");
    const auto r = run({"report", "--scenario", path.string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("ParseError") != std::string::npos);
  }

  TEST_CASE("physically invalid scenario") {
    Scenario s = anthrax_stp();
    s.gas.gamma = 0.9;
    s.gas.temperature_k = -1.0;
    const auto r = run({"report", "--scenario", temp_file("bad.yaml", serialize_scenario(s)).string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("gas.gamma") != std::string::npos);
    CHECK(r.err.find("gas.temperature") != std::string::npos);
  }

  TEST_CASE("lenient mode passes unknown keys through as warnings") {
    std::string text = serialize_scenario(anthrax_stp());
    text.insert(text.find("gas:\n") + 5, "  colour_nm: 500\n");
    const auto path = temp_file("unknown.yaml", text);
    CHECK(run({"report", "--scenario", path.string()}).code == kExitUsage);
    const auto r = run({"report", "--scenario", path.string(), "--lenient"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("gas.colour_nm") != std::string::npos);
  }

  TEST_CASE("intensity sweep scales as the inverse square") {
    const auto r = run({"sweep", "--preset", "anthrax_stp", "--axis",
                        "laser.intensity_pump_w_m2+laser.intensity_stokes_w_m2:log:1e10:1e14:9"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 9);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i][1] < rows[i - 1][1]);
      const double slope = std::log(rows[i][1] / rows[i - 1][1]) / std::log(rows[i][0] / rows[i - 1][0]);
      CHECK(std::abs(slope + 2.0) < 0.02);
    }
  }

  TEST_CASE("modulation sweep follows the NEP frequency law") {
    const auto r = run({"sweep", "--preset", "anthrax_stp", "--axis", "laser.modulation_frequency_rad_s:log:10:1000:5"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) CHECK(rel_diff(row[2], nep(anthrax_stp(), row[0]).h_nep) < 1e-6);
  }

  TEST_CASE("two axis sweep") {
    const auto path = std::filesystem::temp_directory_path() / "pars_test_sweep.csv";
    const auto r = run({"sweep", "--preset", "anthrax_stp", "--axis", "gas.temperature_k:lin:280:320:3", "--axis",
                        "laser.intensity_pump_w_m2:log:1e11:1e13:3", "--out", path.string()});
    REQUIRE(r.code == kExitOk);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    std::vector<std::string> header;
    CHECK(csv_rows(text.str(), &header).size() == 9);
    REQUIRE(header.size() == 1);
    CHECK(header[0].rfind("gas.temperature_k,laser.intensity_pump_w_m2,rho_min_per_m3", 0) == 0);
  }

  TEST_CASE("sweep input errors") {
    CHECK(run({"sweep", "--preset", "anthrax_stp", "--axis", "laser.colour:log:1:2:3"}).code == kExitUsage);
    CHECK(run({"sweep", "--preset", "anthrax_stp", "--axis", "gas.temperature_k:log:-1:2:3"}).code == kExitUsage);
    CHECK(run({"sweep", "--preset", "anthrax_stp"}).code == kExitUsage);
  }

  TEST_CASE("unwritable output") {
    const auto r = run({"report", "--preset", "anthrax_stp", "--out", "/nonexistent/dir/report.txt"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("UnwritableOutput") != std::string::npos);
  }

  TEST_CASE("validate-noise guards") {
    const auto guard = run({"validate-noise", "--timestep", "1e-5"});
    CHECK(guard.code == kExitUsage);
    CHECK(guard.err.find("StabilityGuardViolated") != std::string::npos);
    const auto one = run({"validate-noise", "--ensemble", "1"});
    CHECK(one.code == kExitUsage);
    CHECK(one.err.find("insufficient statistics") != std::string::npos);
  }

  TEST_CASE("validate-noise passes at its defaults") {
    const auto r = run({"validate-noise", "--ensemble", "32", "--duration", "0.2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("validate-noise: PASS") != std::string::npos);
  }

  TEST_CASE("presets listing and dump") {
    const auto list = run({"presets"});
    CHECK(list.code == kExitOk);
    for (const auto& p : presets()) {
      CHECK(list.out.find(p.name) != std::string::npos);
      CHECK(validate_scenario(p.scenario).ok());
      const auto dump = run({"presets", "--dump", p.name});
      CHECK(dump.code == kExitOk);
      CHECK(parse_scenario(dump.out).scenario == p.scenario);
    }
    CHECK(run({"presets", "--dump", "nope"}).code == kExitUsage);
  }

  TEST_CASE("modes table") {
    const auto r = run({"modes", "--preset", "anthrax_stp", "--max-modes", "1,1,1"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("(0,0,1)") != std::string::npos);
    CHECK(run({"modes", "--preset", "anthrax_stp", "--max-modes", "1,x,1"}).code == kExitUsage);
    CHECK(run({"modes", "--preset", "anthrax_stp", "--max-modes", "1,-1,1"}).code == kExitUsage);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"report"}).code == kExitUsage);
    CHECK(run({"report", "--preset", "anthrax_stp", "--format", "xml"}).code == kExitUsage);
    CHECK(run({"--version"}).code == kExitOk);
  }
}
