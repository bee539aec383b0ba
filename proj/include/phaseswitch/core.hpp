#pragma once

// Closed-form physics of a resonantly driven two-level atom in a one-sided,
// bad-cavity geometry. All rates share the caller's time unit; amplitudes are
// normalized so that |b|^2 is a photon current.

#include <complex>
#include <optional>

#include "phaseswitch/errors.hpp"

namespace phaseswitch {

using Complex = std::complex<double>;

/// Tolerance on the Bloch-vector bound, absorbing integrator round-off.
inline constexpr double kBlochSlack = 1e-9;

/// Coupling ratio g/kappa above which the adiabatic elimination is flagged.
inline constexpr double kBadCavityMaxRatio = 0.1;

/// Atomic decay rates: cavity-mediated dipole damping Gamma and transverse
/// loss gamma into non-cavity modes.
class AtomParams {
 public:
  /// Throws InvalidParameter unless big_gamma > 0 and gamma_loss >= 0.
  explicit AtomParams(double big_gamma, double gamma_loss = 0.0);

  /// Parameters with the given cavity fraction beta in (0, 1].
  static AtomParams from_beta(double big_gamma, double beta);

  double big_gamma() const noexcept { return big_gamma_; }
  double gamma_loss() const noexcept { return gamma_loss_; }

  /// Fraction of spontaneous emission leaving through the cavity mode.
  double beta() const noexcept { return big_gamma_ / dipole_rate(); }
  /// Damping rate of <s->: Gamma + gamma/2.
  double dipole_rate() const noexcept { return big_gamma_ + 0.5 * gamma_loss_; }
  /// Relaxation rate of <sz>: 2 Gamma + gamma.
  double inversion_rate() const noexcept { return 2.0 * big_gamma_ + gamma_loss_; }
  /// sqrt(2 Gamma), the field-dipole coupling of the input-output relation.
  double coupling() const noexcept;
  bool lossless() const noexcept { return gamma_loss_ == 0.0; }

 private:
  double big_gamma_;
  double gamma_loss_;
};

struct CavityParams {
  double g;
  double kappa;
};

struct EffectiveGamma {
  double big_gamma;       ///< g^2 / kappa
  double coupling_ratio;  ///< g / kappa; the reduction needs this << 1
  bool bad_cavity;        ///< coupling_ratio <= kBadCavityMaxRatio
};

/// Dipole expectation <s-> and inversion <sz> of the atom.
struct BlochState {
  Complex sigma_minus{0.0, 0.0};
  double sigma_z = -0.5;

  static constexpr BlochState ground() noexcept { return {}; }
  static constexpr BlochState excited() noexcept { return {{0.0, 0.0}, 0.5}; }

  double length_squared() const noexcept { return std::norm(sigma_minus) + sigma_z * sigma_z; }
  bool within_bound(double slack = kBlochSlack) const noexcept;

  friend bool operator==(const BlochState&, const BlochState&) = default;
};

/// Throws InvalidState if the state lies outside the Bloch ball (plus slack)
/// or is not finite.
void check_bloch_bound(const BlochState& state);

struct SteadyStateSolution {
  BlochState state;
  Complex b_out;
  /// Incoherent emission into the cavity channel.
  double p_noise = 0.0;
  /// Emission into non-cavity modes, gamma (sz + 1/2).
  double p_loss = 0.0;
};

struct IntensityFractions {
  double coherent;
  double noise;
};

struct PulseCheck {
  double duration;
  double average_intensity;    ///< 2 / T for a two-photon pulse
  double switching_intensity;  ///< Gamma / 4
  bool exceeds;                ///< strict: average_intensity > switching_intensity
};

EffectiveGamma effective_gamma(const CavityParams& cavity);

/// Stationary state under a constant resonant drive b_in. Lossy decay rates
/// enter through Gamma' = Gamma + gamma/2:
///   sz = -Gamma'^2 / (2 Gamma'^2 + 8 Gamma |b_in|^2)
///   s- = 2 sqrt(2 Gamma) b_in sz / Gamma'
SteadyStateSolution steady_state(const AtomParams& params, Complex b_in);

/// Lossless b_out / b_in = (4x - 1) / (4x + 1) with x = |b_in|^2 / Gamma.
double response_ratio(double x);

/// Cavity-channel incoherent emission 2 Gamma (sz + 1/2 - |s-|^2).
double noise_power(const AtomParams& params, const BlochState& state);

/// Lower bound 2 Gamma (sz + 1/2)^2 on noise_power at fixed inversion.
double noise_lower_bound(const AtomParams& params, double sigma_z);

/// Input-output relation b_out = b_in + sqrt(2 Gamma) <s->.
Complex output_amplitude(const AtomParams& params, Complex b_in, const BlochState& state);

/// Lossless |b_out/b_in|^2 and P_noise/|b_in|^2 at x = |b_in|^2 / Gamma.
IntensityFractions intensity_fractions(double x);

/// Weak-drive reflection coefficient 1 - 2 beta.
double linear_response(const AtomParams& params);

/// Intensity |b_in|^2 at which the coherent output vanishes. Gamma/4 without
/// losses; with losses the zero of the steady-state response located by
/// bisection in log-intensity. std::nullopt when beta <= 1/2 (no crossing).
std::optional<double> switching_intensity(const AtomParams& params);

/// Whether a two-photon pulse of the given duration exceeds the switching
/// intensity on average.
PulseCheck two_photon_pulse_check(const AtomParams& params, double duration);

}  // namespace phaseswitch
