#pragma once

// Time-domain integration of the driven, damped Bloch equations with
// per-sample output field, noise power and energy-balance residual.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phaseswitch/core.hpp"

namespace phaseswitch {

enum class DriveKind { constant, step_sequence, gaussian_pulse, square_pulse };

/// Time-dependent input amplitude b_in(t). Discontinuous kinds are
/// right-continuous; `left_limit` gives the value just before t.
class DriveSignal {
 public:
  struct Step {
    double start;
    Complex amplitude;
  };

  static DriveSignal constant(Complex amplitude);
  /// Piecewise-constant drive; zero before the first start time.
  /// Start times must be strictly increasing.
  static DriveSignal steps(std::vector<Step> steps);
  /// Flat pulse on [center - T/2, center + T/2) carrying `photons` photons,
  /// so |b|^2 = photons / T on its support.
  static DriveSignal square_pulse(double center, double duration, double photons,
                                  double phase = 0.0);
  /// Gaussian pulse whose intensity |b|^2 has full width at half maximum
  /// `duration` and integrates to `photons`.
  static DriveSignal gaussian_pulse(double center, double duration, double photons,
                                    double phase = 0.0);

  DriveKind kind() const noexcept;
  Complex operator()(double t) const;
  Complex left_limit(double t) const;
  /// True when b_in(s) == b_in(t) for every s >= t.
  bool constant_from(double t) const;

 private:
  struct Constant {
    Complex amplitude;
  };
  struct StepSequence {
    std::vector<Step> steps;
  };
  struct Square {
    double start, end;
    Complex amplitude;
  };
  struct Gaussian {
    double center, sigma;  // sigma of the amplitude envelope exp(-(t-c)^2 / (4 sigma^2))
    Complex peak;
  };
  using Shape = std::variant<Constant, StepSequence, Square, Gaussian>;

  explicit DriveSignal(Shape shape) : shape_(std::move(shape)) {}

  Shape shape_;
};

struct IntegratorConfig {
  double step = 1e-3;  ///< in units of 1/Gamma when Gamma = 1
  double t_max = 10.0;
  int record_stride = 1;
  double steady_tol = 1e-10;

  /// Default step 1e-3 / Gamma.
  static IntegratorConfig for_params(const AtomParams& params, double t_max);
  void validate() const;
};

/// Time derivative of the Bloch vector.
struct BlochDerivative {
  Complex d_sigma_minus;
  double d_sigma_z;

  double norm() const noexcept;
};

struct TrajectorySample {
  double t;
  BlochState state;
  Complex b_in;
  Complex b_out;
  double p_noise;
  /// d<sz>/dt - (|b_in|^2 - |b_out|^2 - P_noise - gamma (sz + 1/2))
  double residual;
  /// Drive just before t; differs from b_in only at a discontinuity.
  Complex b_in_left;
};

struct TrajectoryRecord {
  AtomParams params;
  std::vector<TrajectorySample> samples;
  /// Integration stopped early because the state became stationary.
  bool converged = false;
};

struct EnergyAudit {
  double max_residual;  ///< max |residual| / Gamma
  double rms_residual;  ///< rms residual / Gamma
  double input_photons;
  double coherent_output_photons;
  double noise_photons;
  double loss_photons;
  double inversion_change;
  /// input - coherent output - noise - loss - inversion change
  double closure_defect;
};

/// Right-hand side of the (loss-extended) Bloch equations.
BlochDerivative bloch_rhs(const AtomParams& params, Complex b_in, const BlochState& state);

/// Fixed-step RK4 integration from `initial` over [0, t_max]. Throws
/// IntegrationError on a non-finite drive or on leaving the Bloch ball.
TrajectoryRecord integrate(const AtomParams& params, const DriveSignal& drive,
                           const BlochState& initial, const IntegratorConfig& config);

/// Exact zero-drive relaxation.
BlochState decay_closed_form(const AtomParams& params, const BlochState& initial, double t);

/// Residual statistics and the trapezoidal photon budget of a trajectory.
EnergyAudit energy_audit(const TrajectoryRecord& record);

std::string to_string(DriveKind kind);

}  // namespace phaseswitch
