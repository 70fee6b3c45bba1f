#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pars/noise.hpp"
#include "pars/presets.hpp"
#include "support.hpp"

using namespace pars;
using pars::testing::rel_diff;

namespace {

// Two-sided integral of S d omega / (2 pi), computed on omega = w_j tan(theta).
double two_sided_integral(double wj, const Scenario& s) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const auto f = [&](double theta) {
    const double c = std::cos(theta);
    return noise_psd(wj, s, wj * std::tan(theta)) * wj / (c * c);
  };
  double error = 0.0;
  const double half = GK::integrate(f, 0.0, 0.5 * kPi, 20, 1e-13, &error);
  return 2.0 * half / (2.0 * kPi);
}

}  // namespace

TEST_SUITE("noise") {
  TEST_CASE("Langevin strength") {
    Scenario s = anthrax_stp();
    CHECK(rel_diff(diffusion_coefficient(s), 2.692265550000001e-24) < 1e-12);
    const double base = diffusion_coefficient(s);
    s.detector.gamma_noise_per_s *= 2.0;
    CHECK(rel_diff(diffusion_coefficient(s), 2.0 * base) < 1e-15);
    s.gas.temperature_k = 0.0;
    CHECK(diffusion_coefficient(s) == 0.0);
  }

  TEST_CASE("velocity correlation") {
    const Scenario s = anthrax_stp();
    const double kt = s.constants.boltzmann_j_k * s.gas.temperature_k;
    const double equal = velocity_correlation(s, 0.0);
    CHECK(rel_diff(equal, kt / (s.gas.density_kg_m3 * s.cell.volume_m3())) < 1e-14);
    CHECK(rel_diff(equal, 3.186113076923077e-13) < 1e-12);
    CHECK(rel_diff(velocity_correlation(s, 1.0 / s.detector.gamma_noise_per_s), equal / std::exp(1.0)) <
          1e-14);
    CHECK_THROWS_AS(velocity_correlation(s, -1.0), ModelError);
  }

  TEST_CASE("the uniform mode is noiseless") {
    const Scenario s = anthrax_stp();
    const auto grid = linear_grid(0.0, 1e5, 101);
    const auto r = noise_spectrum(0.0, s, grid);
    for (double p : r.spectrum.power) CHECK(p == 0.0);
  }

  TEST_CASE("noise peak location") {
    const Scenario s = anthrax_stp();
    const double wj = 4e4;
    const double gn = s.detector.gamma_noise_per_s;
    const double predicted = std::sqrt(wj * wj - 0.5 * gn * gn);
    CHECK(rel_diff(predicted, 18708.286933869706) < 1e-14);
    const auto grid = linear_grid(0.0, 1e5, 200001);
    const auto r = noise_spectrum(wj, s, grid);
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (r.spectrum.power[i] > r.spectrum.power[best]) best = i;
    CHECK(std::abs(grid[best] - predicted) <= grid[1] - grid[0]);
  }

  TEST_CASE("integrated noise is independent of the mode frequency") {
    const Scenario s = anthrax_stp();
    const double target = 0.5 * s.gas.density_kg_m3 * sound_speed(s.gas) * sound_speed(s.gas) *
                          s.constants.boltzmann_j_k * s.gas.temperature_k / s.cell.volume_m3();
    CHECK(rel_diff(target, 0.5 * noise_variance(s)) < 1e-14);
    for (double wj : {1e4, 4e4, 2e5}) CHECK(rel_diff(two_sided_integral(wj, s), target) < 1e-6);
  }

  TEST_CASE("grid variance approaches the closed form") {
    const Scenario s = anthrax_stp();
    const auto r = noise_spectrum(4e4, s, linear_grid(0.0, 1e8, 2000001));
    CHECK(rel_diff(r.variance_integrated, noise_variance(s)) < 1e-3);
  }

  TEST_CASE("noise-equivalent heat input") {
    const Scenario s = anthrax_stp();
    const auto r = nep(s);
    CHECK(rel_diff(r.h_nep, 4.7907621542866557e-4) < 1e-12);
    CHECK(rel_diff(r.vh_nep, r.h_nep * s.cell.volume_m3()) < 1e-15);
    CHECK(r.assumptions.small_omega);
    CHECK(r.warnings.empty());
    CHECK(r.h_nep / 5e-5 < 30.0);
  }

  TEST_CASE("NEP static limit and scaling laws") {
    Scenario s = anthrax_stp();
    s.detector.gamma_signal_per_s = 0.0;
    CHECK(nep(s, 0.0).vh_nep == 0.0);

    s = anthrax_stp();
    const auto base = nep(s);
    Scenario hot = s;
    hot.gas.temperature_k *= 4.0;
    CHECK(rel_diff(nep(hot).vh_nep, 2.0 * base.vh_nep) < 1e-14);
    Scenario big = s;
    big.cell.length_m *= 4.0;
    CHECK(rel_diff(nep(big).vh_nep, 2.0 * base.vh_nep) < 1e-14);
    CHECK(rel_diff(nep(big).h_nep, 0.5 * base.h_nep) < 1e-14);
  }

  TEST_CASE("NEP follows sqrt(omega^2 + Gamma_s^2)") {
    const Scenario s = anthrax_stp();
    const double gs = s.detector.gamma_signal_per_s;
    const double ref = nep(s, 0.0).h_nep / gs;
    for (double w : {10.0, 100.0, 1000.0})
      CHECK(rel_diff(nep(s, w).h_nep, ref * std::sqrt(w * w + gs * gs)) < 1e-13);
  }

  TEST_CASE("fast modulation is flagged") {
    const Scenario s = anthrax_stp();
    const auto r = nep(s, s.detector.omega_noise_mode_rad_s / 5.0);
    CHECK_FALSE(r.assumptions.small_omega);
    CHECK(r.warnings.size() == 1);
  }

  TEST_CASE("higher cell modes") {
    const Scenario s = anthrax_stp();
    const auto modes = cylinder_modes(s.cell, s.gas, {3, 0, 2});
    const double w = s.laser.modulation_omega_rad_s;
    double expected = 0.0;
    int used = 0;
    for (const auto& m : modes) {
      if (m.is_uniform() || used == 2) continue;
      expected += noise_psd(m.omega_rad_s, s, w);
      ++used;
    }
    expected /= noise_psd(s.detector.omega_noise_mode_rad_s, s, w);
    CHECK(rel_diff(higher_mode_noise_ratio(s, modes, 2, w), expected) < 1e-14);
    CHECK(higher_mode_noise_ratio(s, modes, 0, w) == 0.0);
  }
}
