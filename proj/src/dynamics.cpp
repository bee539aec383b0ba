#include "phaseswitch/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phaseswitch/rk4.hpp"

namespace phaseswitch {

namespace {

// State vector for the stepper.
struct Vec {
  Complex s;
  double z;

  friend Vec operator+(const Vec& a, const Vec& b) { return {a.s + b.s, a.z + b.z}; }
  friend Vec operator*(double c, const Vec& a) { return {c * a.s, c * a.z}; }
};

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// Shortest run of steps of at most `step` covering [0, t_max].
long step_count(double step, double t_max) {
  if (t_max == 0.0) return 0;
  const double n = std::ceil(t_max / step * (1.0 - 1e-12));
  return std::max(1L, static_cast<long>(n));
}

TrajectorySample make_sample(const AtomParams& params, double t, const BlochState& state,
                             Complex b_in, Complex b_in_left) {
  TrajectorySample sample{};
  sample.t = t;
  sample.state = state;
  sample.b_in = b_in;
  sample.b_in_left = b_in_left;
  sample.b_out = output_amplitude(params, b_in, state);
  sample.p_noise = noise_power(params, state);
  const double loss = params.gamma_loss() * (state.sigma_z + 0.5);
  const double net_in = std::norm(b_in) - std::norm(sample.b_out) - sample.p_noise - loss;
  sample.residual = bloch_rhs(params, b_in, state).d_sigma_z - net_in;
  return sample;
}

struct Powers {
  double input, coherent, noise, loss;
};

Powers powers(const AtomParams& params, Complex b_in, const BlochState& state) {
  const Complex b_out = output_amplitude(params, b_in, state);
  return {std::norm(b_in), std::norm(b_out),
          2.0 * params.big_gamma() * (state.sigma_z + 0.5 - std::norm(state.sigma_minus)),
          params.gamma_loss() * (state.sigma_z + 0.5)};
}

}  // namespace

std::string to_string(DriveKind kind) {
  switch (kind) {
    case DriveKind::constant: return "constant";
    case DriveKind::step_sequence: return "steps";
    case DriveKind::gaussian_pulse: return "gaussian";
    case DriveKind::square_pulse: return "square";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// DriveSignal

DriveSignal DriveSignal::constant(Complex amplitude) { return DriveSignal(Constant{amplitude}); }

DriveSignal DriveSignal::steps(std::vector<Step> steps) {
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (!(steps[i].start > steps[i - 1].start)) {
      throw InvalidParameter("step start times must be strictly increasing");
    }
  }
  return DriveSignal(StepSequence{std::move(steps)});
}

DriveSignal DriveSignal::square_pulse(double center, double duration, double photons,
                                      double phase) {
  if (!(duration > 0.0)) throw InvalidParameter("pulse duration must be > 0");
  if (!(photons >= 0.0)) throw InvalidParameter("photon number must be >= 0");
  const Complex amplitude = std::polar(std::sqrt(photons / duration), phase);
  return DriveSignal(Square{center - 0.5 * duration, center + 0.5 * duration, amplitude});
}

DriveSignal DriveSignal::gaussian_pulse(double center, double duration, double photons,
                                        double phase) {
  if (!(duration > 0.0)) throw InvalidParameter("pulse duration must be > 0");
  if (!(photons >= 0.0)) throw InvalidParameter("photon number must be >= 0");
  // |b|^2 = peak^2 exp(-(t-c)^2 / (2 sigma^2)); FWHM = 2 sqrt(2 ln 2) sigma.
  const double sigma = duration / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  const double peak_intensity = photons / (sigma * std::sqrt(2.0 * std::numbers::pi));
  return DriveSignal(Gaussian{center, sigma, std::polar(std::sqrt(peak_intensity), phase)});
}

DriveKind DriveSignal::kind() const noexcept {
  switch (shape_.index()) {
    case 0: return DriveKind::constant;
    case 1: return DriveKind::step_sequence;
    case 2: return DriveKind::square_pulse;
    default: return DriveKind::gaussian_pulse;
  }
}

Complex DriveSignal::operator()(double t) const {
  if (const auto* c = std::get_if<Constant>(&shape_)) return c->amplitude;
  if (const auto* s = std::get_if<StepSequence>(&shape_)) {
    Complex value{0.0, 0.0};
    for (const Step& step : s->steps) {
      if (t < step.start) break;
      value = step.amplitude;
    }
    return value;
  }
  if (const auto* sq = std::get_if<Square>(&shape_)) {
    return (t >= sq->start && t < sq->end) ? sq->amplitude : Complex{0.0, 0.0};
  }
  const auto& g = std::get<Gaussian>(shape_);
  const double u = (t - g.center) / g.sigma;
  return g.peak * std::exp(-0.25 * u * u);
}

Complex DriveSignal::left_limit(double t) const {
  if (const auto* s = std::get_if<StepSequence>(&shape_)) {
    Complex value{0.0, 0.0};
    for (const Step& step : s->steps) {
      if (t <= step.start) break;
      value = step.amplitude;
    }
    return value;
  }
  if (const auto* sq = std::get_if<Square>(&shape_)) {
    return (t > sq->start && t <= sq->end) ? sq->amplitude : Complex{0.0, 0.0};
  }
  return (*this)(t);
}

bool DriveSignal::constant_from(double t) const {
  if (std::holds_alternative<Constant>(shape_)) return true;
  if (const auto* s = std::get_if<StepSequence>(&shape_)) {
    return s->steps.empty() || t >= s->steps.back().start;
  }
  if (const auto* sq = std::get_if<Square>(&shape_)) return t >= sq->end;
  return false;
}

// ---------------------------------------------------------------------------
// Integration

IntegratorConfig IntegratorConfig::for_params(const AtomParams& params, double t_max) {
  IntegratorConfig config;
  config.step = 1e-3 / params.big_gamma();
  config.t_max = t_max;
  return config;
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw IntegrationError("integration step must be finite and > 0", 0.0);
  }
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw IntegrationError("t_max must be finite and >= 0", 0.0);
  }
  if (record_stride < 1) throw IntegrationError("record_stride must be >= 1", 0.0);
  if (!(steady_tol >= 0.0)) throw IntegrationError("steady_tol must be >= 0", 0.0);
}

double BlochDerivative::norm() const noexcept {
  return std::sqrt(std::norm(d_sigma_minus) + d_sigma_z * d_sigma_z);
}

BlochDerivative bloch_rhs(const AtomParams& params, Complex b_in, const BlochState& state) {
  const double c = params.coupling();
  const Complex s = state.sigma_minus;
  return {-params.dipole_rate() * s + 2.0 * c * state.sigma_z * b_in,
          -params.inversion_rate() * (state.sigma_z + 0.5) -
              2.0 * c * (std::conj(b_in) * s).real()};
}

TrajectoryRecord integrate(const AtomParams& params, const DriveSignal& drive,
                           const BlochState& initial, const IntegratorConfig& config) {
  config.validate();
  if (!initial.within_bound()) {
    throw IntegrationError("initial state outside the Bloch ball", 0.0);
  }

  auto sample_drive = [&](double t, bool left) {
    const Complex b = left ? drive.left_limit(t) : drive(t);
    if (!finite(b)) throw IntegrationError("non-finite drive amplitude", t);
    return b;
  };

  TrajectoryRecord record{params, {}, false};
  const double gamma_scale = params.big_gamma();
  const long n = step_count(config.step, config.t_max);
  record.samples.reserve(static_cast<std::size_t>(n / config.record_stride + 2));

  auto is_stationary = [&](double t, const BlochState& state) {
    return drive.constant_from(t) &&
           bloch_rhs(params, sample_drive(t, false), state).norm() < config.steady_tol * gamma_scale;
  };

  BlochState state = initial;
  record.samples.push_back(
      make_sample(params, 0.0, state, sample_drive(0.0, false), sample_drive(0.0, true)));
  if (n > 0 && is_stationary(0.0, state)) {
    record.converged = true;
    return record;
  }

  for (long i = 0; i < n; ++i) {
    const double t0 = static_cast<double>(i) * config.step;
    const double t1 = (i + 1 == n) ? config.t_max : static_cast<double>(i + 1) * config.step;

    // The step sees the drive from inside [t0, t1]: right limit at t0, left limit elsewhere.
    auto rhs = [&](const Vec& y, double t) {
      const Complex b = sample_drive(t, t != t0);
      const BlochDerivative d = bloch_rhs(params, b, BlochState{y.s, y.z});
      return Vec{d.d_sigma_minus, d.d_sigma_z};
    };
    const Vec next = rk4_step(Vec{state.sigma_minus, state.sigma_z}, t0, t1 - t0, rhs);
    state = BlochState{next.s, next.z};

    if (!state.within_bound()) {
      throw IntegrationError("Bloch bound violated (|s-|^2 + sz^2 = " +
                                 std::to_string(state.length_squared()) + ")",
                             t1);
    }

    const bool last = (i + 1 == n);
    const bool stationary = !last && is_stationary(t1, state);
    if (last || stationary || (i + 1) % config.record_stride == 0) {
      record.samples.push_back(
          make_sample(params, t1, state, sample_drive(t1, false), sample_drive(t1, true)));
    }
    if (stationary || (last && is_stationary(t1, state))) {
      record.converged = true;
      break;
    }
  }
  return record;
}

BlochState decay_closed_form(const AtomParams& params, const BlochState& initial, double t) {
  if (!(t >= 0.0)) throw DomainError("decay time must be >= 0");
  const double relax = std::exp(-params.inversion_rate() * t);
  return {initial.sigma_minus * std::exp(-params.dipole_rate() * t),
          initial.sigma_z * relax - 0.5 * (1.0 - relax)};
}

EnergyAudit energy_audit(const TrajectoryRecord& record) {
  if (record.samples.empty()) throw DomainError("energy audit of an empty trajectory");
  const AtomParams& params = record.params;
  const auto& samples = record.samples;

  EnergyAudit audit{};
  double sum_sq = 0.0;
  for (const auto& s : samples) {
    audit.max_residual = std::max(audit.max_residual, std::abs(s.residual));
    sum_sq += s.residual * s.residual;
  }
  audit.max_residual /= params.big_gamma();
  audit.rms_residual =
      std::sqrt(sum_sq / static_cast<double>(samples.size())) / params.big_gamma();

  // Trapezoid per interval using the drive from inside the interval at both ends.
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    const double h = b.t - a.t;
    const Powers pa = powers(params, a.b_in, a.state);
    const Powers pb = powers(params, b.b_in_left, b.state);
    audit.input_photons += 0.5 * h * (pa.input + pb.input);
    audit.coherent_output_photons += 0.5 * h * (pa.coherent + pb.coherent);
    audit.noise_photons += 0.5 * h * (pa.noise + pb.noise);
    audit.loss_photons += 0.5 * h * (pa.loss + pb.loss);
  }
  audit.inversion_change = samples.back().state.sigma_z - samples.front().state.sigma_z;
  audit.closure_defect = audit.input_photons - audit.coherent_output_photons -
                         audit.noise_photons - audit.loss_photons - audit.inversion_change;
  return audit;
}

}  // namespace phaseswitch
