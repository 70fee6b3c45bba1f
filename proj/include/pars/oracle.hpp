#pragma once

// Time-domain stochastic oracle for the Langevin mode equations and the
// driven pressure-mode equation. Used to check the closed-form signal and
// noise spectra independently of their derivation.
//
// Randomness: each ensemble member owns a std::mt19937_64 engine seeded with
// output i+1 of a SplitMix64 stream started at the run seed. Gaussian variates
// come from the Box-Muller transform on 53-bit uniforms, both outputs used.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pars/acoustics.hpp"
#include "pars/quantities.hpp"
#include "pars/spectrum.hpp"

namespace pars {

inline constexpr const char* kRngDescription =
    "mt19937_64 per member, seeds from SplitMix64(seed) outputs 1..M, Box-Muller normals";

enum class Forcing { none, thermal };

struct SdeRunConfig {
  double timestep_s = 1.0e-6;
  double duration_s = 0.02;
  std::uint64_t seed = 1;
  int ensemble_size = 64;
  double mode_omega_rad_s = 4.0e4;
  double damping_per_s = 5.0e4;
  Forcing forcing = Forcing::thermal;
  /// Langevin strength D; defaults to rho0 V damping k T for thermal forcing.
  std::optional<double> diffusion;
  double burn_in_damping_times = 10.0;
  double initial_velocity = 0.0;
  double initial_displacement = 0.0;
  std::size_t psd_segment = 2048;  // 0 disables the pressure PSD
  std::size_t max_lag_steps = 0;   // 0 disables the velocity autocorrelation
  std::optional<std::string> dump_directory;
};

/// Throws ModelError ("StabilityGuardViolated") unless
/// timestep * max(damping, omega) <= 0.05 and duration >= 50 / damping.
void check_stability_guard(const SdeRunConfig& config);

/// Exact Gaussian transition of the damped oscillator
///   du = (-Gamma u - w^2 q) dt + sigma dW,  dq = u dt
/// over one timestep (Van Loan matrix exponential). State is (u, q).
class ExactOscillatorStepper {
 public:
  ExactOscillatorStepper(double omega, double damping, double noise_variance_rate, double dt);

  const Eigen::Matrix2d& transition() const { return transition_; }
  const Eigen::Matrix2d& covariance() const { return covariance_; }

  /// Advance with the deterministic part only.
  Eigen::Vector2d mean_step(const Eigen::Vector2d& state) const { return transition_ * state; }

  /// Advance given two independent standard normals.
  Eigen::Vector2d step(const Eigen::Vector2d& state, double z0, double z1) const;

  /// Fixed point of S = F S F^T + Sigma, the chain's stationary covariance.
  Eigen::Matrix2d stationary_covariance() const;

 private:
  Eigen::Matrix2d transition_;
  Eigen::Matrix2d covariance_;
  Eigen::Matrix2d cholesky_;
  bool free_particle_ = false;
};

/// Standard normals by Box-Muller over a 64-bit engine.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}
  double operator()();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t member_seed(std::uint64_t run_seed, std::size_t member);

/// Segment-averaged Hann-window periodogram, 50% overlap, fed one sample at a
/// time. Output follows the two-sided angular convention of spectrum.hpp.
class WelchAccumulator {
 public:
  WelchAccumulator(std::size_t segment_length, double dt);
  ~WelchAccumulator();
  WelchAccumulator(const WelchAccumulator&) = delete;
  WelchAccumulator& operator=(const WelchAccumulator&) = delete;
  WelchAccumulator(WelchAccumulator&&) noexcept;
  WelchAccumulator& operator=(WelchAccumulator&&) = delete;

  void push(double sample);
  std::size_t segments() const { return segments_; }
  /// Averaged density on omega_k = 2 pi k / (N dt), k = 0..N/2.
  std::vector<double> density() const;
  std::vector<double> omega_grid() const;

 private:
  void flush_segment();

  std::size_t length_;
  double dt_;
  std::vector<double> window_;
  double window_power_ = 0.0;
  std::vector<double> buffer_;
  std::size_t filled_ = 0;
  std::size_t since_last_ = 0;
  std::size_t segments_ = 0;
  std::vector<double> sum_;
  double* fft_in_ = nullptr;
  void* fft_out_ = nullptr;
  void* plan_ = nullptr;
};

struct PsdEstimate {
  SpectrumSeries psd;
  std::vector<double> standard_error;  // across ensemble members; empty for one member
  double parseval_variance = 0.0;  // (1/pi) * two-sided sum of psd * d omega
  double time_variance = 0.0;      // mean square of the input samples
  std::size_t segments = 0;
};

/// Throws ModelError ("SegmentTooShort") if a series is shorter than one segment.
PsdEstimate estimate_psd(const std::vector<std::vector<double>>& ensemble, double dt,
                         std::size_t segment_length);

struct TrajectoryStats {
  int ensemble_size = 0;
  std::size_t samples_per_member = 0;
  double mean_u2 = 0.0;
  double mean_u2_stderr = 0.0;
  double mean_q2 = 0.0;
  double mean_q2_stderr = 0.0;
  double equipartition_ratio = 0.0;  // rho0 V <u^2> / k T
  double equipartition_stderr = 0.0;
  std::vector<double> lag_s;
  std::vector<double> autocorrelation;
  std::vector<double> autocorrelation_stderr;
  SpectrumSeries psd;  // of the pressure amplitude rho0 c w_j q
  std::vector<double> psd_stderr;
  std::string rng;
};

/// Runs the ensemble and returns stationary statistics after discarding the
/// burn-in. Deterministic for a given config.
TrajectoryStats integrate_langevin(const SdeRunConfig& config, const Scenario& scenario);

struct DecayFit {
  double rate = 0.0;
  double amplitude = 0.0;
};

/// Weighted log-linear fit of C(t) = C0 exp(-rate t) over lags <= max_lag_s.
DecayFit fit_exponential_decay(std::span<const double> lag_s, std::span<const double> values,
                               double max_lag_s);

struct DrivenConfig {
  AcousticMode mode;
  double overlap = 0.0;
  std::complex<double> heat_phasor = 1.0;
  double omega_rad_s = 100.0;
  int steps_per_period = 256;
  double settle_time_s = 0.0;  // 0 selects 20 / Gamma_s
  int window_periods = 0;      // 0 selects about 1 / Gamma_s worth of periods
  int max_windows = 400;
  double drift_tolerance = 1e-3;
};

struct DrivenResult {
  std::complex<double> amplitude;  // phasor, A(t) = Re[amplitude exp(i w t)]
  int windows = 0;
  double last_drift = 0.0;
};

/// Integrates A'' + Gamma_s A' + w_j^2 A = ((gamma-1)/V) d/dt [overlap H(t)]
/// from rest and demodulates the steady state over whole periods. Throws
/// ModelError ("NotConverged") if successive windows still differ by more
/// than drift_tolerance after max_windows.
DrivenResult integrate_driven(const DrivenConfig& config, const Scenario& scenario);

}  // namespace pars
