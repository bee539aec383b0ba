#pragma once

// Grid evaluations behind the response and noise-fraction curves and the
// beta dependence of the weak-drive reflection.

#include <vector>

#include "phaseswitch/core.hpp"

namespace phaseswitch {

enum class GridAxis {
  log10_scaled_intensity,  ///< log10(4 |b_in|^2 / Gamma)
  beta,
};

/// Uniformly spaced points in the axis coordinate, endpoints included.
struct Grid {
  GridAxis axis = GridAxis::log10_scaled_intensity;
  double min = -2.0;
  double max = 2.0;
  int points = 201;

  void validate() const;
  double value(int index) const;
};

struct SweepRow {
  double axis_value;
  double x;  ///< |b_in|^2 / Gamma
  double amplitude_ratio;
  double coherent_fraction;
  double noise_fraction;
  double sigma_z;
  double sigma_minus_mag;
};

struct BetaRow {
  double beta;
  double gamma_loss;
  double linear_ratio;
};

struct SweepOptions {
  /// Worker threads; rows are always returned in grid order.
  unsigned threads = 1;
};

/// Steady-state response over a log10(4x) grid. With gamma_loss = 0 the ratio
/// and fractions come from the lossless closed forms.
std::vector<SweepRow> response_sweep(const AtomParams& params, const Grid& grid,
                                     SweepOptions options = {});

/// Weak-drive ratio 1 - 2 beta over a beta grid in (0, 1].
std::vector<BetaRow> beta_sweep(const Grid& grid, double big_gamma);

/// One response row at scaled intensity x, labelled with `axis_value`.
SweepRow response_row(const AtomParams& params, double axis_value, double x);

}  // namespace phaseswitch
