#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "pars/acoustics.hpp"
#include "pars/presets.hpp"
#include "support.hpp"

using namespace pars;
using pars::testing::rel_diff;

namespace {

// First zero of J_1 beyond x = 1 by plain sign-change bisection.
double bisect_j1_zero() {
  double lo = 3.0;
  double hi = 4.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::signbit(std::cyl_bessel_j(1.0, lo)) == std::signbit(std::cyl_bessel_j(1.0, mid))) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Lowest non-zero eigenvalue of -p'' = k^2 p on [0, l] with p' = 0 at both
// ends, cell-centred finite volumes.
double neumann_fundamental(double length, int cells) {
  const double h = length / cells;
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(cells, 2.0 / (h * h));
  diag(0) = diag(cells - 1) = 1.0 / (h * h);
  const Eigen::VectorXd off = Eigen::VectorXd::Constant(cells - 1, -1.0 / (h * h));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  return std::sqrt(solver.eigenvalues()(1));
}

Scenario cell_scenario() {
  Scenario s = anthrax_stp();
  s.cell.length_m = 0.1;
  s.cell.radius_m = 0.02;
  return s;
}

}  // namespace

TEST_SUITE("acoustics") {
  TEST_CASE("first root of J0' agrees with bisection on J1") {
    const double root = bessel_derivative_root(0, 1);
    CHECK(std::abs(root - bisect_j1_zero()) < 1e-12);
    CHECK(std::abs(root - 3.8317) < 1e-4);
    CHECK(rel_diff(root, 3.831705970207513) < 1e-13);
  }

  TEST_CASE("table of J'_m zeros") {
    const double expected[3][3] = {{3.8317059702075125, 7.0155866698156189, 10.173468135062722},
                                   {1.8411837813406593, 5.3314427735250325, 8.5363163663462337},
                                   {3.0542369282271404, 6.7061331941584591, 9.9694678230875958}};
    for (int m = 0; m < 3; ++m)
      for (int n = 1; n <= 3; ++n)
        CHECK(std::abs(bessel_derivative_root(m, n) - expected[m][n - 1]) < 1e-11);
    CHECK_THROWS_AS(bessel_derivative_root(0, 0), ModelError);
  }

  TEST_CASE("uniform mode") {
    const Scenario s = anthrax_stp();
    const auto m = make_mode({0, 0, 0}, s.cell, s.gas);
    CHECK(m.is_uniform());
    CHECK(m.omega_rad_s == 0.0);
    CHECK(m.normalization == 1.0);
    CHECK(m.shape({0.3 * s.cell.radius_m, 1.0, 0.02}) == 1.0);
  }

  TEST_CASE("axial mode frequency") {
    const Scenario s = anthrax_stp();
    const auto m = make_mode({1, 0, 0}, s.cell, s.gas);
    const double closed = kPi * sound_speed(s.gas) / s.cell.length_m;
    CHECK(rel_diff(m.omega_rad_s, closed) < 1e-6);
    CHECK(rel_diff(m.omega_rad_s, 10377.685870383075) < 1e-13);
    const double fd = sound_speed(s.gas) * neumann_fundamental(s.cell.length_m, 10000);
    CHECK(rel_diff(m.omega_rad_s, fd) < 1e-4);
  }

  TEST_CASE("invalid mode indices") {
    const Scenario s = anthrax_stp();
    CHECK_THROWS_AS(make_mode({0, 1, 0}, s.cell, s.gas), ModelError);
    CHECK_THROWS_AS(make_mode({-1, 0, 0}, s.cell, s.gas), ModelError);
  }

  TEST_CASE("mode list is sorted and complete") {
    const Scenario s = cell_scenario();
    const auto modes = cylinder_modes(s.cell, s.gas, {2, 2, 2});
    // q in 0..2; m = 0 has n in 0..2, m = 1, 2 have n in 1..2.
    CHECK(modes.size() == 3 * (3 + 2 + 2));
    CHECK(modes.front().is_uniform());
    for (std::size_t i = 1; i < modes.size(); ++i) {
      const auto& a = modes[i - 1];
      const auto& b = modes[i];
      CHECK((a.omega_rad_s < b.omega_rad_s || (a.omega_rad_s == b.omega_rad_s && a.index < b.index)));
    }
  }

  TEST_CASE("first ten modes are orthonormal") {
    const Scenario s = cell_scenario();
    const auto all = cylinder_modes(s.cell, s.gas, {3, 2, 2});
    REQUIRE(all.size() >= 10);
    double worst = 0.0;
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = 0; j < 10; ++j) {
        const double g = mode_inner_product(all[i], all[j], s.cell);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-8);
  }

  TEST_CASE("full-cell quadrature of p^2 gives the volume") {
    const Scenario s = cell_scenario();
    const auto m = make_mode({1, 1, 1}, s.cell, s.gas);
    const auto r = integrate_cell([&](const CellPoint& p) { return m.shape(p) * m.shape(p); }, s.cell);
    CHECK(rel_diff(r.value, s.cell.volume_m3()) < 1e-9);
  }

  TEST_CASE("uniform source couples only to the uniform mode") {
    const Scenario s = cell_scenario();
    const auto source = HeatSourceField::uniform(1.0, 100.0);
    for (const auto& m : cylinder_modes(s.cell, s.gas, {2, 1, 2})) {
      const double expected = m.is_uniform() ? s.cell.volume_m3() : 0.0;
      CHECK(mode_overlap(m, source, s.cell) == expected);
      const auto q = mode_overlap_quadrature(m, source, s.cell);
      CHECK(std::abs(q.value - expected) < 1e-8 * s.cell.volume_m3());
    }
  }

  TEST_CASE("thin beam overlap with the first radial mode") {
    const Scenario s = cell_scenario();
    const auto m = make_mode({0, 0, 1}, s.cell, s.gas);
    const auto beam = HeatSourceField::beam(0.1 * s.cell.radius_m, 1.0, 100.0);
    const double closed = mode_overlap(m, beam, s.cell) / s.cell.volume_m3();
    CHECK(rel_diff(closed, 2.437583021932731) < 1e-12);
    const auto q = mode_overlap_quadrature(m, beam, s.cell);
    CHECK(rel_diff(q.value / s.cell.volume_m3(), closed) < 1e-8);
    CHECK_THROWS_AS(mode_overlap(m, HeatSourceField::beam(2.0 * s.cell.radius_m, 1.0, 1.0), s.cell),
                    ModelError);
  }

  TEST_CASE("point sources average the mode shape") {
    const Scenario s = cell_scenario();
    const auto m = make_mode({1, 0, 1}, s.cell, s.gas);
    HeatSourceField src;
    src.profile = HeatSourceField::Profile::points;
    src.points = {{{0.0, 0.0, 0.0}, 1.0}, {{0.0, 0.0, s.cell.length_m}, 1.0}};
    // cos(0) = 1 and cos(pi) = -1 cancel on the axis.
    CHECK(std::abs(mode_overlap(m, src, s.cell)) < 1e-20);
    src.points.pop_back();
    CHECK(rel_diff(mode_overlap(m, src, s.cell), s.cell.volume_m3() * m.normalization) < 1e-14);
  }

  TEST_CASE("pulse-train harmonics") {
    HeatSourceField h = HeatSourceField::uniform(2.0, 10.0);
    CHECK(h.harmonic(1) == std::complex<double>(2.0));
    CHECK(h.harmonic(2) == std::complex<double>(0.0));
    h.envelope = HeatSourceField::Envelope::pulse_train;
    h.duty_cycle = 0.5;
    CHECK(std::abs(h.harmonic(1) - 4.0 / kPi) < 1e-15);
    CHECK(std::abs(h.harmonic(2)) < 1e-15);
    CHECK_THROWS_AS(h.harmonic(0), ModelError);
  }

  TEST_CASE("no signal from static heating") {
    const Scenario s = anthrax_stp();
    const auto m = make_mode({0, 0, 0}, s.cell, s.gas);
    CHECK(signal_amplitude(m, s.cell.volume_m3(), 1.0, 0.0, s) == std::complex<double>(0.0));
  }

  TEST_CASE("uniform-mode response closed form") {
    const Scenario s = anthrax_stp();
    const auto m = make_mode({0, 0, 0}, s.cell, s.gas);
    const auto source = HeatSourceField::uniform(3.0, 100.0);
    const double gs = s.detector.gamma_signal_per_s;
    for (double w : {1.0, 10.0, 100.0, 1000.0}) {
      const auto a = signal_amplitude(m, mode_overlap(m, source, s.cell), 3.0, w, s);
      const double closed = w * (s.gas.gamma - 1.0) * 3.0 / std::sqrt(w * w * w * w + w * w * gs * gs);
      CHECK(rel_diff(std::abs(a), closed) < 1e-13);
    }
  }

  TEST_CASE("resonance width equals the signal damping") {
    const Scenario s = anthrax_stp();
    const auto m = make_mode({1, 0, 0}, s.cell, s.gas);
    const double wj = m.omega_rad_s;
    const double gs = s.detector.gamma_signal_per_s;
    const auto power = [&](double w) { return std::norm(signal_amplitude(m, 1.0, 1.0, w, s)); };

    const auto grid = linear_grid(wj - 5 * gs, wj + 5 * gs, 100001);
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (power(grid[i]) > power(grid[best])) best = i;
    CHECK(std::abs(grid[best] - wj) <= grid[1] - grid[0]);

    const double half = 0.5 * power(wj);
    const auto crossing = [&](double lo, double hi) {
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((power(lo) - half) * (power(mid) - half) <= 0.0) hi = mid;
        else lo = mid;
      }
      return 0.5 * (lo + hi);
    };
    const double width = crossing(wj, wj + 5 * gs) - crossing(wj - 5 * gs, wj);
    CHECK(rel_diff(width, gs) < 1e-9);
  }

  TEST_CASE("response falls as 1/omega far above resonance") {
    const Scenario s = anthrax_stp();
    const auto m = make_mode({1, 0, 0}, s.cell, s.gas);
    const double w1 = 1e3 * m.omega_rad_s;
    const double w2 = 1e4 * m.omega_rad_s;
    const double slope = std::log(std::abs(signal_amplitude(m, 1.0, 1.0, w2, s)) /
                                  std::abs(signal_amplitude(m, 1.0, 1.0, w1, s))) /
                         std::log(w2 / w1);
    CHECK(std::abs(slope + 1.0) < 1e-5);
  }

  TEST_CASE("signal spectrum series") {
    const Scenario s = anthrax_stp();
    const auto m = make_mode({0, 0, 0}, s.cell, s.gas);
    const auto grid = log_grid(1.0, 1e4, 50);
    const auto r = signal_spectrum(m, HeatSourceField::uniform(2.0, 100.0), s, grid);
    CHECK(r.spectrum.kind == SpectrumKind::complex_amplitude);
    CHECK(r.spectrum.size() == 50);
    CHECK(r.overlap == s.cell.volume_m3());
    CHECK(std::abs(r.at_modulation - signal_amplitude(m, r.overlap, 2.0, 100.0, s)) == 0.0);
  }

  TEST_CASE("pressure field synthesis") {
    const Scenario s = cell_scenario();
    const auto uniform = make_mode({0, 0, 0}, s.cell, s.gas);
    const std::vector<AcousticMode> one{uniform};
    const std::vector<double> two{2.0};
    CHECK(pressure_field(one, two, {0.01, 2.0, 0.05}) == 2.0);

    const std::vector<AcousticMode> pair{uniform, make_mode({1, 0, 0}, s.cell, s.gas)};
    const std::vector<double> coeffs{1.5, 4.0};
    const auto mean = integrate_cell([&](const CellPoint& p) { return pressure_field(pair, coeffs, p); },
                                     s.cell);
    CHECK(std::abs(mean.value / s.cell.volume_m3() - 1.5) < 1e-9);

    const std::vector<std::complex<double>> phasors{std::complex<double>(0.0, -1.0), 0.0};
    // Re[-i exp(i w t)] = sin(w t).
    CHECK(std::abs(pressure_field(pair, phasors, 3.0, 0.5, {0.0, 0.0, 0.0}) - std::sin(1.5)) < 1e-15);
  }

  TEST_CASE("projection recovers random mode coefficients") {
    const Scenario s = cell_scenario();
    const std::vector<AcousticMode> modes{
        make_mode({0, 0, 0}, s.cell, s.gas), make_mode({1, 0, 0}, s.cell, s.gas),
        make_mode({0, 0, 1}, s.cell, s.gas), make_mode({2, 0, 1}, s.cell, s.gas),
        make_mode({1, 1, 1}, s.cell, s.gas)};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> coeffs;
    for (std::size_t i = 0; i < modes.size(); ++i) coeffs.push_back(u(rng));
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const auto r = integrate_cell(
          [&](const CellPoint& p) { return modes[j].shape(p) * pressure_field(modes, coeffs, p); },
          s.cell, 1e-11);
      CHECK(std::abs(r.value / s.cell.volume_m3() - coeffs[j]) < 1e-8);
    }
  }
}
