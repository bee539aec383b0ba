#include "phaseswitch/core.hpp"

#include <cmath>
#include <string>

namespace phaseswitch {

namespace {

constexpr double kSwitchingRelTol = 1e-10;

std::string fmt_value(double v) { return std::to_string(v); }

void require_nonnegative_x(double x, const char* what) {
  if (!(x >= 0.0)) {
    throw DomainError(std::string(what) + ": scaled intensity must be >= 0, got " +
                      fmt_value(x));
  }
}

// Real part of b_out/b_in in the steady state at intensity |b_in|^2.
double steady_ratio(const AtomParams& params, double intensity) {
  const double gp = params.dipole_rate();
  const double sz = -gp * gp / (2.0 * gp * gp + 8.0 * params.big_gamma() * intensity);
  return 1.0 + 4.0 * params.big_gamma() * sz / gp;
}

}  // namespace

AtomParams::AtomParams(double big_gamma, double gamma_loss)
    : big_gamma_(big_gamma), gamma_loss_(gamma_loss) {
  if (!(big_gamma > 0.0) || !std::isfinite(big_gamma)) {
    throw InvalidParameter("big_gamma must be finite and > 0, got " + fmt_value(big_gamma));
  }
  if (!(gamma_loss >= 0.0) || !std::isfinite(gamma_loss)) {
    throw InvalidParameter("gamma_loss must be finite and >= 0, got " + fmt_value(gamma_loss));
  }
}

AtomParams AtomParams::from_beta(double big_gamma, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("beta must lie in (0, 1], got " + fmt_value(beta));
  }
  return AtomParams(big_gamma, 2.0 * big_gamma * (1.0 / beta - 1.0));
}

double AtomParams::coupling() const noexcept { return std::sqrt(2.0 * big_gamma_); }

bool BlochState::within_bound(double slack) const noexcept {
  return std::isfinite(sigma_z) && std::isfinite(sigma_minus.real()) &&
         std::isfinite(sigma_minus.imag()) && length_squared() <= 0.25 + slack &&
         std::abs(sigma_z) <= 0.5 + slack;
}

void check_bloch_bound(const BlochState& state) {
  if (!state.within_bound()) {
    throw InvalidState("Bloch vector outside |s-|^2 + sz^2 <= 1/4: |s-|^2 + sz^2 = " +
                       fmt_value(state.length_squared()));
  }
}

EffectiveGamma effective_gamma(const CavityParams& cavity) {
  if (!(cavity.g > 0.0) || !std::isfinite(cavity.g)) {
    throw InvalidParameter("g must be finite and > 0, got " + fmt_value(cavity.g));
  }
  if (!(cavity.kappa > 0.0) || !std::isfinite(cavity.kappa)) {
    throw InvalidParameter("kappa must be finite and > 0, got " + fmt_value(cavity.kappa));
  }
  const double ratio = cavity.g / cavity.kappa;
  return {cavity.g * cavity.g / cavity.kappa, ratio, ratio <= kBadCavityMaxRatio};
}

SteadyStateSolution steady_state(const AtomParams& params, Complex b_in) {
  if (!std::isfinite(b_in.real()) || !std::isfinite(b_in.imag())) {
    throw InvalidParameter("b_in must be finite");
  }
  const double gp = params.dipole_rate();
  const double intensity = std::norm(b_in);

  const double gamma = params.big_gamma();
  const double denom = 2.0 * gp * gp + 8.0 * gamma * intensity;

  SteadyStateSolution out;
  out.state.sigma_z = -gp * gp / denom;
  out.state.sigma_minus = 2.0 * params.coupling() * out.state.sigma_z / gp * b_in;
  out.b_out = output_amplitude(params, b_in, out.state);
  // sz + 1/2 = 4 Gamma I / D and sz + 1/2 - |s-|^2 = 32 Gamma^2 I^2 / D^2; the
  // expanded forms avoid cancellation at weak drive.
  const double excitation = 4.0 * gamma * intensity / denom;
  const double fluctuation = 32.0 * gamma * gamma * intensity * intensity / (denom * denom);
  out.p_noise = 2.0 * gamma * fluctuation;
  out.p_loss = params.gamma_loss() * excitation;
  return out;
}

double response_ratio(double x) {
  require_nonnegative_x(x, "response_ratio");
  if (std::isinf(x)) return 1.0;
  return (4.0 * x - 1.0) / (4.0 * x + 1.0);
}

double noise_power(const AtomParams& params, const BlochState& state) {
  check_bloch_bound(state);
  return 2.0 * params.big_gamma() * (state.sigma_z + 0.5 - std::norm(state.sigma_minus));
}

double noise_lower_bound(const AtomParams& params, double sigma_z) {
  if (!(sigma_z >= -0.5 && sigma_z <= 0.5)) {
    throw DomainError("sigma_z must lie in [-1/2, 1/2], got " + fmt_value(sigma_z));
  }
  const double excitation = sigma_z + 0.5;
  return 2.0 * params.big_gamma() * excitation * excitation;
}

Complex output_amplitude(const AtomParams& params, Complex b_in, const BlochState& state) {
  return b_in + params.coupling() * state.sigma_minus;
}

IntensityFractions intensity_fractions(double x) {
  require_nonnegative_x(x, "intensity_fractions");
  if (std::isinf(x)) return {1.0, 0.0};
  const double num = 4.0 * x - 1.0;
  const double den = 4.0 * x + 1.0;
  return {num * num / (den * den), 16.0 * x / (den * den)};
}

double linear_response(const AtomParams& params) { return 1.0 - 2.0 * params.beta(); }

std::optional<double> switching_intensity(const AtomParams& params) {
  if (params.lossless()) return params.big_gamma() / 4.0;
  if (linear_response(params) >= 0.0) return std::nullopt;

  // The steady-state ratio increases monotonically from 1 - 2 beta towards +1,
  // so widening the upper bracket must terminate.
  double lo = std::log(1e-12 * params.big_gamma());
  double hi = std::log(params.big_gamma());
  while (steady_ratio(params, std::exp(lo)) > 0.0) lo -= 10.0;
  while (steady_ratio(params, std::exp(hi)) <= 0.0) hi += 2.0;

  // Relative tolerance on the intensity equals absolute tolerance in log space.
  while (hi - lo > kSwitchingRelTol) {
    const double mid = 0.5 * (lo + hi);
    if (steady_ratio(params, std::exp(mid)) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

PulseCheck two_photon_pulse_check(const AtomParams& params, double duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw DomainError("pulse duration must be finite and > 0, got " + fmt_value(duration));
  }
  const double average = 2.0 / duration;
  const double threshold = params.big_gamma() / 4.0;
  return {duration, average, threshold, average > threshold};
}

}  // namespace phaseswitch
