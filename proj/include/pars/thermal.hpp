#pragma once

// Free-molecular heat transfer from a heated particle to the surrounding gas.

#include <string>
#include <vector>

#include "pars/quantities.hpp"

namespace pars {

/// Gas-molecule impacts per second on a sphere of radius r_s:
/// P0 4 pi r_s^2 = N_c 2 m_g u_g with m_g u_g = sqrt(3 m_g k T0).
double collision_rate(const GasProperties& gas, double radius_m, const PhysicalConstants& k);

/// Temperature increase from f_R N_a hbar (w_p - w_s) = c_v dT (molar bookkeeping).
double temperature_rise(const ParticleSpec& particle, const LaserDrive& laser,
                        const PhysicalConstants& k);

/// Exponential cooling T_S(t) = T_S(0) exp(-t / tau).
struct CoolingModel {
  double tau_s = 0.0;
  double initial_temperature_k = 0.0;

  double at(double t_s) const;
};

/// tau = (c_v / R) (N_S / N_c) / accommodation. Each collision carries
/// accommodation * k T_S.
CoolingModel collisional_timescale(const ParticleSpec& particle, double collision_rate_per_s,
                                   const PhysicalConstants& k, double accommodation = 1.0,
                                   double initial_temperature_k = 0.0);

/// Stefan-Boltzmann emission sigma T^4 4 pi r^2.
double radiative_power(double temperature_k, double radius_m, const PhysicalConstants& k);

struct SeparationCheck {
  std::string name;
  double ratio = 0.0;  // slower / faster
  bool passed = false;
};

struct EfficiencyResult {
  double eta = 1.0;
  bool separated = true;
  std::vector<SeparationCheck> checks;
  std::vector<std::string> warnings;
};

/// eta = 1 when tau_coll is shorter than the modulation time and the radiative
/// timescale by at least `dominance_ratio`; otherwise the collisional share of
/// the two loss rates, with a TimescalesNotSeparated warning. The third check
/// (modulation time vs radiative timescale) is reported but does not gate eta.
EfficiencyResult transfer_efficiency(double tau_collisional_s, double tau_radiative_s,
                                     double modulation_time_s, double dominance_ratio = 10.0);

struct ThermalReport {
  double collision_rate_per_s = 0.0;
  double temperature_rise_k = 0.0;
  double spore_temperature_k = 0.0;  // T0 + dT, the peak particle temperature
  double collisional_timescale_s = 0.0;
  double radiative_power_w = 0.0;    // at the peak temperature
  double deposited_energy_j = 0.0;   // N_S hbar (w_p - w_s)
  double radiative_timescale_s = 0.0;
  double modulation_time_s = 0.0;    // 1 / w_mod
  EfficiencyResult efficiency;
};

ThermalReport analyze_thermal(const Scenario& scenario);

}  // namespace pars
