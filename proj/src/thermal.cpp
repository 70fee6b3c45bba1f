#include "pars/thermal.hpp"

#include <cmath>
#include <limits>

namespace pars {

double collision_rate(const GasProperties& gas, double radius_m, const PhysicalConstants& k) {
  const double momentum = std::sqrt(3.0 * gas.molecule_mass_kg * k.boltzmann_j_k * gas.temperature_k);
  return gas.pressure_pa * 4.0 * kPi * radius_m * radius_m / (2.0 * momentum);
}

double temperature_rise(const ParticleSpec& particle, const LaserDrive& laser,
                        const PhysicalConstants& k) {
  if (!(particle.molar_heat_j_mol_k > 0.0)) throw ModelError("temperature_rise: c_v must be > 0");
  return particle.raman_fraction * k.avogadro_per_mol * k.hbar_j_s * laser.raman_shift_rad_s() /
         particle.molar_heat_j_mol_k;
}

double CoolingModel::at(double t_s) const { return initial_temperature_k * std::exp(-t_s / tau_s); }

CoolingModel collisional_timescale(const ParticleSpec& particle, double collision_rate_per_s,
                                   const PhysicalConstants& k, double accommodation,
                                   double initial_temperature_k) {
  if (!(collision_rate_per_s > 0.0)) throw ModelError("collisional_timescale: N_c must be > 0");
  const double tau = (particle.molar_heat_j_mol_k / k.gas_constant_j_mol_k) *
                     (particle.molecule_count / collision_rate_per_s) / accommodation;
  return {tau, initial_temperature_k};
}

double radiative_power(double temperature_k, double radius_m, const PhysicalConstants& k) {
  if (temperature_k < 0.0) throw ModelError("radiative_power: negative temperature");
  const double t2 = temperature_k * temperature_k;
  return k.stefan_boltzmann_w_m2_k4 * t2 * t2 * 4.0 * kPi * radius_m * radius_m;
}

EfficiencyResult transfer_efficiency(double tau_coll, double tau_rad, double modulation_time,
                                     double dominance_ratio) {
  EfficiencyResult r;
  auto check = [&](const char* name, double slow, double fast) {
    const double ratio = slow / fast;
    r.checks.push_back({name, ratio, ratio >= dominance_ratio});
    return r.checks.back().passed;
  };
  const bool coll_fast = check("collisional_vs_modulation", modulation_time, tau_coll);
  const bool rad_slow = check("radiative_vs_collisional", tau_rad, tau_coll);
  check("radiative_vs_modulation", tau_rad, modulation_time);

  r.separated = coll_fast && rad_slow;
  if (r.separated) {
    r.eta = 1.0;
  } else {
    const double coll_rate = 1.0 / tau_coll;
    const double rad_rate = std::isinf(tau_rad) ? 0.0 : 1.0 / tau_rad;
    r.eta = coll_rate / (coll_rate + rad_rate);
    r.warnings.push_back("TimescalesNotSeparated: eta estimated from loss-rate ratio");
  }
  return r;
}

ThermalReport analyze_thermal(const Scenario& s) {
  const auto& k = s.constants;
  const double rs = s.particle.equivalent_radius_m();

  ThermalReport t;
  t.collision_rate_per_s = collision_rate(s.gas, rs, k);
  t.temperature_rise_k = temperature_rise(s.particle, s.laser, k);
  t.spore_temperature_k = s.gas.temperature_k + t.temperature_rise_k;
  t.collisional_timescale_s = collisional_timescale(s.particle, t.collision_rate_per_s, k,
                                                    s.options.accommodation,
                                                    t.spore_temperature_k)
                                  .tau_s;
  t.radiative_power_w = radiative_power(t.spore_temperature_k, rs, k);
  t.deposited_energy_j = s.particle.molecule_count * k.hbar_j_s * s.laser.raman_shift_rad_s();
  t.radiative_timescale_s = t.radiative_power_w > 0.0
                                ? t.deposited_energy_j / t.radiative_power_w
                                : std::numeric_limits<double>::infinity();
  t.modulation_time_s = 1.0 / s.laser.modulation_omega_rad_s;
  t.efficiency = transfer_efficiency(t.collisional_timescale_s, t.radiative_timescale_s,
                                     t.modulation_time_s, s.options.dominance_ratio);
  return t;
}

}  // namespace pars
