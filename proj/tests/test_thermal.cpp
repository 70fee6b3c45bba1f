#include <doctest.h>

#include <cmath>
#include <limits>

#include "pars/presets.hpp"
#include "pars/thermal.hpp"
#include "support.hpp"

using namespace pars;
using pars::testing::log_uniform;
using pars::testing::rel_diff;

TEST_SUITE("thermal") {
  const PhysicalConstants k;

  TEST_CASE("collision rate at STP") {
    const GasProperties air = air_stp();
    const double nc = collision_rate(air, 1e-6, k);
    CHECK(rel_diff(nc, 2.6486832206982124e16) < 1e-12);
    // Within two orders of magnitude of the quoted 4e17 per second.
    CHECK(std::abs(std::log10(nc / 4e17)) < 2.0);
    CHECK(rel_diff(collision_rate(air, 7.815926417967727e-07, k), 1.6180462995004508e16) < 1e-12);
  }

  TEST_CASE("collision rate scales with pressure and area") {
    const GasProperties air = air_stp();
    GasProperties doubled = air;
    doubled.pressure_pa *= 2.0;
    const double base = collision_rate(air, 1e-6, k);
    CHECK(rel_diff(collision_rate(doubled, 1e-6, k), 2.0 * base) < 1e-15);
    CHECK(rel_diff(collision_rate(air, 2e-6, k), 4.0 * base) < 1e-15);
  }

  TEST_CASE("temperature rise") {
    const Scenario s = anthrax_stp();
    ParticleSpec p = s.particle;
    CHECK(rel_diff(temperature_rise(p, s.laser, k), 151.20904579768953) < 1e-12);
    p.raman_fraction = 0.0;
    CHECK(temperature_rise(p, s.laser, k) == 0.0);
    p.raman_fraction = 0.5;
    CHECK(rel_diff(temperature_rise(p, s.laser, k), 756.0452289884477) < 1e-12);
    p.raman_fraction = 0.1;
    const double low = temperature_rise(p, s.laser, k);
    p.raman_fraction = 0.5;
    CHECK(rel_diff(temperature_rise(p, s.laser, k), 5.0 * low) < 1e-15);
  }

  TEST_CASE("collisional timescale") {
    ParticleSpec p = anthrax_stp().particle;
    const double tau = collisional_timescale(p, 4e17, k).tau_s;
    CHECK(rel_diff(tau, 4.2 / k.gas_constant_j_mol_k * 1e12 / 4e17) < 1e-14);
    CHECK(std::abs(std::log10(tau / 1e-5)) < 1.0);
    CHECK(rel_diff(collisional_timescale(p, 8e17, k).tau_s, 0.5 * tau) < 1e-15);
    p.molecule_count *= 2.0;
    CHECK(rel_diff(collisional_timescale(p, 4e17, k).tau_s, 2.0 * tau) < 1e-15);
    CHECK(rel_diff(collisional_timescale(p, 4e17, k, 0.5).tau_s, 4.0 * tau) < 1e-15);
    CHECK_THROWS_AS(collisional_timescale(p, 0.0, k), ModelError);
  }

  TEST_CASE("cooling curve decays exponentially") {
    const CoolingModel m{2e-5, 450.0};
    CHECK(m.at(0.0) == 450.0);
    CHECK(rel_diff(m.at(2e-5), 450.0 / std::exp(1.0)) < 1e-15);
  }

  TEST_CASE("radiative power") {
    CHECK(rel_diff(radiative_power(1000.0, 1e-6, k), 7.125602647133556e-07) < 1e-12);
    CHECK(std::abs(std::log10(radiative_power(1000.0, 1e-6, k) / 1e-7)) < 1.0);
    CHECK(radiative_power(0.0, 1e-6, k) == 0.0);
    CHECK(rel_diff(radiative_power(600.0, 1e-6, k), 16.0 * radiative_power(300.0, 1e-6, k)) < 1e-15);
  }

  TEST_CASE("transfer efficiency") {
    const auto separated = transfer_efficiency(1e-5, 0.5, 1e-2);
    CHECK(separated.eta == 1.0);
    CHECK(separated.separated);
    CHECK(separated.checks.size() == 3);
    CHECK(separated.warnings.empty());

    const auto equal = transfer_efficiency(1e-3, 1e-3, 1e-2);
    CHECK(equal.eta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(equal.separated);
    CHECK(equal.warnings.size() == 1);

    const auto slow_transfer = transfer_efficiency(1e-3, std::numeric_limits<double>::infinity(), 1e-3);
    CHECK(slow_transfer.eta == 1.0);
    CHECK_FALSE(slow_transfer.separated);
  }

  TEST_CASE("anthrax thermal chain") {
    const auto t = analyze_thermal(anthrax_stp());
    CHECK(rel_diff(t.collision_rate_per_s, 1.6180462995004508e16) < 1e-12);
    CHECK(rel_diff(t.collisional_timescale_s, 3.121937186441486e-05) < 1e-12);
    CHECK(rel_diff(t.spore_temperature_k, 451.20904579768956) < 1e-12);
    CHECK(rel_diff(t.radiative_power_w, 1.8042375448353833e-08) < 1e-12);
    CHECK(rel_diff(t.deposited_energy_j, 1.0545718169999999e-08) < 1e-12);
    CHECK(rel_diff(t.radiative_timescale_s, 0.5844972132514945) < 1e-12);
    CHECK(t.modulation_time_s == 0.01);
    CHECK(t.efficiency.eta == 1.0);
    for (const auto& c : t.efficiency.checks) CHECK_MESSAGE(c.passed, c.name);
  }

  TEST_CASE("linear and quartic laws on random inputs") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
      const Scenario s = pars::testing::random_scenario(rng);
      const double r = log_uniform(rng, 1e-7, 1e-5);
      const double a = log_uniform(rng, 0.1, 10.0);
      GasProperties g = s.gas;
      const double nc = collision_rate(g, r, k);
      g.pressure_pa *= a;
      CHECK(rel_diff(collision_rate(g, r, k), a * nc) < 1e-10);

      ParticleSpec p = s.particle;
      const double dt = temperature_rise(p, s.laser, k);
      p.raman_fraction *= 0.5;
      CHECK(rel_diff(temperature_rise(p, s.laser, k), 0.5 * dt) < 1e-10);

      const double temp = log_uniform(rng, 10.0, 3000.0);
      CHECK(rel_diff(radiative_power(a * temp, r, k), std::pow(a, 4) * radiative_power(temp, r, k)) < 1e-10);
      CHECK(rel_diff(radiative_power(temp, a * r, k), a * a * radiative_power(temp, r, k)) < 1e-10);

      const double tau = collisional_timescale(s.particle, nc, k).tau_s;
      CHECK(rel_diff(collisional_timescale(s.particle, a * nc, k).tau_s, tau / a) < 1e-10);
    }
  }
}
