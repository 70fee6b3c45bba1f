#include "pars/oracle.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>

#include <fftw3.h>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/numeric/odeint.hpp>

#include "parallel.hpp"

namespace pars {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double mean_of(const std::vector<double>& v) {
  detail::CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

// Standard error of the mean across members; NaN for a single member.
double standard_error_of(const std::vector<double>& v) {
  if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean_of(v);
  detail::CompensatedSum s;
  for (double x : v) s.add((x - m) * (x - m));
  return std::sqrt(s.value() / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

struct MemberResult {
  double mean_u2 = 0.0;
  double mean_q2 = 0.0;
  std::vector<double> autocorrelation;
  std::vector<double> psd;
};

}  // namespace

void check_stability_guard(const SdeRunConfig& c) {
  if (!(c.timestep_s > 0.0) || !(c.damping_per_s > 0.0) || c.mode_omega_rad_s < 0.0)
    throw ModelError("StabilityGuardViolated: timestep and damping must be positive");
  const double stiffness = std::max(c.damping_per_s, c.mode_omega_rad_s);
  if (c.timestep_s * stiffness > 0.05)
    throw ModelError("StabilityGuardViolated: timestep * max(damping, omega) = " +
                     format_double(c.timestep_s * stiffness) + " exceeds 0.05");
  if (c.duration_s * c.damping_per_s < 50.0)
    throw ModelError("StabilityGuardViolated: duration shorter than 50 / damping");
  if (c.ensemble_size < 1) throw ModelError("StabilityGuardViolated: ensemble_size must be >= 1");
}

ExactOscillatorStepper::ExactOscillatorStepper(double omega, double damping, double sigma2,
                                               double dt)
    : free_particle_(omega == 0.0) {
  // Work in (u, s q) with s a rate so that both drift entries are O(rate).
  const double s = std::max({omega, damping, 1.0 / dt * 1e-6});
  Eigen::Matrix2d drift;
  drift << -damping, -omega * omega / s, s, 0.0;

  Eigen::Matrix4d block = Eigen::Matrix4d::Zero();
  block.topLeftCorner<2, 2>() = -drift * dt;
  block(0, 2) = dt;  // unit noise on u
  block.bottomRightCorner<2, 2>() = drift.transpose() * dt;
  const Eigen::Matrix4d e = block.exp();
  const Eigen::Matrix2d f_scaled = e.bottomRightCorner<2, 2>().transpose();
  Eigen::Matrix2d q_scaled = f_scaled * e.topRightCorner<2, 2>();
  q_scaled = 0.5 * (q_scaled + q_scaled.transpose());

  const Eigen::Matrix2d to_state = Eigen::Vector2d(1.0, 1.0 / s).asDiagonal();
  const Eigen::Matrix2d from_state = Eigen::Vector2d(1.0, s).asDiagonal();
  transition_ = to_state * f_scaled * from_state;
  covariance_ = sigma2 * to_state * q_scaled * to_state;

  Eigen::Matrix2d l_scaled = Eigen::Matrix2d::Zero();
  if (q_scaled(0, 0) > 0.0) {
    l_scaled(0, 0) = std::sqrt(q_scaled(0, 0));
    l_scaled(1, 0) = q_scaled(1, 0) / l_scaled(0, 0);
    l_scaled(1, 1) = std::sqrt(std::max(0.0, q_scaled(1, 1) - l_scaled(1, 0) * l_scaled(1, 0)));
  }
  cholesky_ = std::sqrt(std::max(0.0, sigma2)) * to_state * l_scaled;
}

Eigen::Vector2d ExactOscillatorStepper::step(const Eigen::Vector2d& x, double z0, double z1) const {
  return transition_ * x + cholesky_ * Eigen::Vector2d(z0, z1);
}

Eigen::Matrix2d ExactOscillatorStepper::stationary_covariance() const {
  const auto& f = transition_;
  const auto& q = covariance_;
  if (free_particle_) {
    // Free particle: only the velocity block is stationary.
    Eigen::Matrix2d out = Eigen::Matrix2d::Constant(std::numeric_limits<double>::quiet_NaN());
    out(0, 0) = q(0, 0) / (1.0 - f(0, 0) * f(0, 0));
    return out;
  }
  // Balance u and q first; their scales differ by about omega.
  const double s = std::sqrt(std::abs(f(0, 1) / f(1, 0)));
  const Eigen::Matrix2d d = Eigen::Vector2d(1.0, s).asDiagonal();
  const Eigen::Matrix2d d_inv = Eigen::Vector2d(1.0, 1.0 / s).asDiagonal();
  const Eigen::Matrix2d fb = d * f * d_inv;
  const Eigen::Matrix2d qb = d * q * d;
  // vec(S) = (I - F kron F)^-1 vec(Q), column-major vec.
  Eigen::Matrix4d kron;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) kron.block<2, 2>(2 * i, 2 * j) = fb(i, j) * fb;
  const Eigen::Vector4d rhs(qb(0, 0), qb(1, 0), qb(0, 1), qb(1, 1));
  const Eigen::Vector4d sol = (Eigen::Matrix4d::Identity() - kron).partialPivLu().solve(rhs);
  Eigen::Matrix2d out;
  out << sol(0), sol(2), sol(1), sol(3);
  return d_inv * out * d_inv;
}

double NormalSource::operator()() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * scale;  // (0, 1]
  const double u2 = static_cast<double>(engine_() >> 11) * scale;          // [0, 1)
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

std::uint64_t member_seed(std::uint64_t run_seed, std::size_t member) {
  std::uint64_t state = run_seed;
  std::uint64_t out = 0;
  for (std::size_t i = 0; i <= member; ++i) out = splitmix64(state);
  return out;
}

WelchAccumulator::WelchAccumulator(std::size_t length, double dt)
    : length_(length), dt_(dt), window_(length), buffer_(length), sum_(length / 2 + 1, 0.0) {
  if (length < 4 || length % 2 != 0) throw ModelError("Welch segment length must be even and >= 4");
  for (std::size_t n = 0; n < length; ++n) {
    window_[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(n) / static_cast<double>(length)));
    window_power_ += window_[n] * window_[n];
  }
  std::lock_guard lock(fftw_planner_mutex());
  fft_in_ = fftw_alloc_real(length);
  auto* out = fftw_alloc_complex(length / 2 + 1);
  fft_out_ = out;
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(length), fft_in_, out, FFTW_ESTIMATE);
}

WelchAccumulator::WelchAccumulator(WelchAccumulator&& other) noexcept
    : length_(other.length_),
      dt_(other.dt_),
      window_(std::move(other.window_)),
      window_power_(other.window_power_),
      buffer_(std::move(other.buffer_)),
      filled_(other.filled_),
      since_last_(other.since_last_),
      segments_(other.segments_),
      sum_(std::move(other.sum_)),
      fft_in_(std::exchange(other.fft_in_, nullptr)),
      fft_out_(std::exchange(other.fft_out_, nullptr)),
      plan_(std::exchange(other.plan_, nullptr)) {}

WelchAccumulator::~WelchAccumulator() {
  if (!plan_) return;
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(fft_in_);
  fftw_free(fft_out_);
}

void WelchAccumulator::push(double sample) {
  buffer_[filled_ % length_] = sample;
  ++filled_;
  ++since_last_;
  if (filled_ >= length_ && (segments_ == 0 || since_last_ >= length_ / 2)) flush_segment();
}

void WelchAccumulator::flush_segment() {
  const std::size_t start = filled_ % length_;  // oldest sample in the ring
  for (std::size_t n = 0; n < length_; ++n)
    fft_in_[n] = window_[n] * buffer_[(start + n) % length_];
  auto* out = static_cast<fftw_complex*>(fft_out_);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_), fft_in_, out);
  const double scale = 0.5 * dt_ / window_power_;
  for (std::size_t k = 0; k < sum_.size(); ++k)
    sum_[k] += scale * (out[k][0] * out[k][0] + out[k][1] * out[k][1]);
  ++segments_;
  since_last_ = 0;
}

std::vector<double> WelchAccumulator::density() const {
  std::vector<double> d(sum_.size(), 0.0);
  if (segments_ == 0) return d;
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = sum_[k] / static_cast<double>(segments_);
  return d;
}

std::vector<double> WelchAccumulator::omega_grid() const {
  std::vector<double> w(sum_.size());
  const double step = 2.0 * kPi / (static_cast<double>(length_) * dt_);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = step * static_cast<double>(k);
  return w;
}

namespace {

double parseval_sum(const std::vector<double>& omega, const std::vector<double>& p) {
  const double step = omega[1] - omega[0];
  double total = p.front() + p.back();
  for (std::size_t k = 1; k + 1 < p.size(); ++k) total += 2.0 * p[k];
  return total * step / kPi;
}

// Ensemble mean and standard error of per-member vectors, element by element.
void reduce_members(const std::vector<std::vector<double>>& per_member, std::vector<double>& mean,
                    std::vector<double>& error) {
  const std::size_t n = per_member.front().size();
  mean.assign(n, 0.0);
  error.assign(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<double> column(per_member.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < per_member.size(); ++m) column[m] = per_member[m][k];
    mean[k] = mean_of(column);
    error[k] = standard_error_of(column);
  }
}

}  // namespace

PsdEstimate estimate_psd(const std::vector<std::vector<double>>& ensemble, double dt,
                         std::size_t segment_length) {
  if (ensemble.empty()) throw ModelError("SegmentTooShort: empty ensemble");
  std::vector<std::vector<double>> per_member;
  detail::CompensatedSum square_sum;
  std::size_t samples = 0;
  PsdEstimate out;
  std::vector<double> omega;
  for (const auto& series : ensemble) {
    if (series.size() < segment_length)
      throw ModelError("SegmentTooShort: series of " + std::to_string(series.size()) +
                       " samples is shorter than one segment of " + std::to_string(segment_length));
    WelchAccumulator acc(segment_length, dt);
    for (double x : series) {
      acc.push(x);
      square_sum.add(x * x);
    }
    samples += series.size();
    out.segments += acc.segments();
    per_member.push_back(acc.density());
    if (omega.empty()) omega = acc.omega_grid();
  }
  out.psd.kind = SpectrumKind::power_density;
  out.psd.convention = SpectralConvention::two_sided_angular;
  out.psd.omega_rad_s = std::move(omega);
  reduce_members(per_member, out.psd.power, out.standard_error);
  if (ensemble.size() < 2) out.standard_error.clear();
  out.parseval_variance = parseval_sum(out.psd.omega_rad_s, out.psd.power);
  out.time_variance = square_sum.value() / static_cast<double>(samples);
  return out;
}

TrajectoryStats integrate_langevin(const SdeRunConfig& c, const Scenario& s) {
  check_stability_guard(c);

  const double mass = s.gas.density_kg_m3 * s.cell.volume_m3();
  const double kt = s.constants.boltzmann_j_k * s.gas.temperature_k;
  double diffusion = 0.0;
  if (c.forcing == Forcing::thermal) diffusion = c.diffusion.value_or(mass * c.damping_per_s * kt);
  const double sigma2 = 2.0 * diffusion / (mass * mass);
  const ExactOscillatorStepper stepper(c.mode_omega_rad_s, c.damping_per_s, sigma2, c.timestep_s);

  const auto burn_in = static_cast<std::size_t>(
      std::ceil(c.burn_in_damping_times / (c.damping_per_s * c.timestep_s)));
  const auto recorded = static_cast<std::size_t>(std::llround(c.duration_s / c.timestep_s));
  const double pressure_scale = s.gas.density_kg_m3 * sound_speed(s.gas) * c.mode_omega_rad_s;
  const bool want_psd = c.psd_segment > 0 && c.mode_omega_rad_s > 0.0;
  if (want_psd && recorded < c.psd_segment)
    throw ModelError("SegmentTooShort: duration holds fewer samples than one PSD segment");
  const std::size_t lags = c.max_lag_steps;
  if (c.dump_directory) std::filesystem::create_directories(*c.dump_directory);

  std::vector<MemberResult> members(static_cast<std::size_t>(c.ensemble_size));
  detail::parallel_for(members.size(), [&](std::size_t m) {
    NormalSource normal(member_seed(c.seed, m));
    Eigen::Vector2d x(c.initial_velocity, c.initial_displacement);
    std::optional<WelchAccumulator> welch;
    if (want_psd) welch.emplace(c.psd_segment, c.timestep_s);
    std::vector<double> ring(lags + 1, 0.0);
    std::vector<double> corr(lags > 0 ? lags + 1 : 0, 0.0);
    std::vector<std::size_t> corr_count(corr.size(), 0);
    std::ofstream dump;
    if (c.dump_directory) {
      char name[32];
      std::snprintf(name, sizeof name, "member_%03zu.csv", m);
      dump.open(std::filesystem::path(*c.dump_directory) / name);
      dump << "t_s,u_m_per_s,q_m\n";
    }

    detail::CompensatedSum u2;
    detail::CompensatedSum q2;
    for (std::size_t n = 0; n < burn_in + recorded; ++n) {
      const double z0 = normal();
      const double z1 = normal();
      x = stepper.step(x, z0, z1);
      if (n < burn_in) continue;
      const std::size_t i = n - burn_in;
      u2.add(x(0) * x(0));
      q2.add(x(1) * x(1));
      if (welch) welch->push(pressure_scale * x(1));
      if (!corr.empty()) {
        ring[i % ring.size()] = x(0);
        const std::size_t reach = std::min(lags, i);
        for (std::size_t k = 0; k <= reach; ++k) {
          corr[k] += x(0) * ring[(i - k) % ring.size()];
          ++corr_count[k];
        }
      }
      if (dump.is_open())
        dump << format_double(static_cast<double>(n + 1) * c.timestep_s) << ","
             << format_double(x(0)) << "," << format_double(x(1)) << "\n";
    }

    auto& out = members[m];
    out.mean_u2 = u2.value() / static_cast<double>(recorded);
    out.mean_q2 = q2.value() / static_cast<double>(recorded);
    out.autocorrelation.resize(corr.size());
    for (std::size_t k = 0; k < corr.size(); ++k)
      out.autocorrelation[k] = corr[k] / static_cast<double>(corr_count[k]);
    if (welch) out.psd = welch->density();
  });

  TrajectoryStats t;
  t.ensemble_size = c.ensemble_size;
  t.samples_per_member = recorded;
  t.rng = kRngDescription;

  std::vector<double> u2s, q2s;
  for (const auto& m : members) {
    u2s.push_back(m.mean_u2);
    q2s.push_back(m.mean_q2);
  }
  t.mean_u2 = mean_of(u2s);
  t.mean_u2_stderr = standard_error_of(u2s);
  t.mean_q2 = mean_of(q2s);
  t.mean_q2_stderr = standard_error_of(q2s);
  t.equipartition_ratio = mass * t.mean_u2 / kt;
  t.equipartition_stderr = mass * t.mean_u2_stderr / kt;

  if (lags > 0) {
    std::vector<std::vector<double>> per_member;
    for (const auto& m : members) per_member.push_back(m.autocorrelation);
    reduce_members(per_member, t.autocorrelation, t.autocorrelation_stderr);
    for (std::size_t k = 0; k <= lags; ++k) t.lag_s.push_back(static_cast<double>(k) * c.timestep_s);
  }
  if (want_psd) {
    std::vector<std::vector<double>> per_member;
    for (const auto& m : members) per_member.push_back(m.psd);
    t.psd.kind = SpectrumKind::power_density;
    t.psd.convention = SpectralConvention::two_sided_angular;
    t.psd.mode_label = "omega_j=" + format_double(c.mode_omega_rad_s);
    WelchAccumulator grid(c.psd_segment, c.timestep_s);
    t.psd.omega_rad_s = grid.omega_grid();
    reduce_members(per_member, t.psd.power, t.psd_stderr);
  }
  return t;
}

DecayFit fit_exponential_decay(std::span<const double> lag, std::span<const double> value,
                               double max_lag) {
  // Weights value^2 approximate inverse variance of log(value).
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lag.size() && i < value.size(); ++i) {
    if (lag[i] > max_lag || !(value[i] > 0.0)) continue;
    const double w = value[i] * value[i];
    const double y = std::log(value[i]);
    sw += w;
    sx += w * lag[i];
    sy += w * y;
    sxx += w * lag[i] * lag[i];
    sxy += w * lag[i] * y;
  }
  const double det = sw * sxx - sx * sx;
  if (!(det > 0.0)) throw ModelError("fit_exponential_decay: degenerate lag set");
  const double slope = (sw * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / sw;
  return {-slope, std::exp(intercept)};
}

DrivenResult integrate_driven(const DrivenConfig& c, const Scenario& s) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  using namespace std::complex_literals;

  const double omega = c.omega_rad_s;
  const double gamma_s = s.detector.gamma_signal_per_s;
  if (!(omega > 0.0) || !(gamma_s > 0.0) || c.steps_per_period < 8)
    throw ModelError("integrate_driven: need omega > 0, Gamma_s > 0 and >= 8 steps per period");

  const double wj2 = c.mode.omega_rad_s * c.mode.omega_rad_s;
  const double coupling = (s.gas.gamma - 1.0) / s.cell.volume_m3() * c.overlap;
  const std::complex<double> drive = 1i * omega * c.heat_phasor;  // phasor of dH/dt
  const auto rhs = [&](const State& x, State& dxdt, double t) {
    const double force = coupling * (drive * std::polar(1.0, omega * t)).real();
    dxdt[0] = x[1];
    dxdt[1] = force - gamma_s * x[1] - wj2 * x[0];
  };

  const double period = 2.0 * kPi / omega;
  const double dt = period / c.steps_per_period;
  const double settle = c.settle_time_s > 0.0 ? c.settle_time_s : 20.0 / gamma_s;
  const int window_periods =
      c.window_periods > 0 ? c.window_periods
                           : std::max(4, static_cast<int>(std::ceil(1.0 / (gamma_s * period))));
  const auto settle_periods = static_cast<long>(std::ceil(settle / period));

  odeint::runge_kutta4<State> stepper;
  State x{0.0, 0.0};
  long step = 0;
  const auto advance = [&] {
    stepper.do_step(rhs, x, static_cast<double>(step) * dt, dt);
    ++step;
  };
  for (long n = 0; n < settle_periods * c.steps_per_period; ++n) advance();

  DrivenResult r;
  std::complex<double> previous;
  const long window_steps = static_cast<long>(window_periods) * c.steps_per_period;
  for (int w = 0; w < c.max_windows; ++w) {
    std::complex<double> acc = 0.0;
    for (long n = 0; n < window_steps; ++n) {
      acc += x[0] * std::polar(1.0, -omega * static_cast<double>(step) * dt);
      advance();
    }
    const std::complex<double> amplitude = 2.0 * acc / static_cast<double>(window_steps);
    r.windows = w + 1;
    r.amplitude = amplitude;
    if (w > 0) {
      r.last_drift = std::abs(amplitude - previous) / std::abs(amplitude);
      if (r.last_drift <= c.drift_tolerance) return r;
    }
    previous = amplitude;
  }
  throw ModelError("NotConverged: demodulated amplitude drift " + format_double(r.last_drift) +
                   " after " + std::to_string(r.windows) + " windows");
}

}  // namespace pars
