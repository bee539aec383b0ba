#include "phaseswitch/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace phaseswitch {

void Grid::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw InvalidParameter("grid requires finite min < max");
  }
  if (points < 2) throw InvalidParameter("grid requires at least 2 points");
}

double Grid::value(int index) const {
  if (index == points - 1) return max;
  return min + static_cast<double>(index) * (max - min) / static_cast<double>(points - 1);
}

SweepRow response_row(const AtomParams& params, double axis_value, double x) {
  const double intensity = x * params.big_gamma();
  const SteadyStateSolution sol = steady_state(params, Complex{std::sqrt(intensity), 0.0});

  SweepRow row{};
  row.axis_value = axis_value;
  row.x = x;
  row.sigma_z = sol.state.sigma_z;
  row.sigma_minus_mag = std::abs(sol.state.sigma_minus);
  if (params.lossless()) {
    row.amplitude_ratio = response_ratio(x);
    const IntensityFractions f = intensity_fractions(x);
    row.coherent_fraction = f.coherent;
    row.noise_fraction = f.noise;
  } else if (intensity > 0.0) {
    row.amplitude_ratio = sol.b_out.real() / std::sqrt(intensity);
    row.coherent_fraction = std::norm(sol.b_out) / intensity;
    row.noise_fraction = sol.p_noise / intensity;
  } else {
    // b_in -> 0 limit
    row.amplitude_ratio = linear_response(params);
    row.coherent_fraction = row.amplitude_ratio * row.amplitude_ratio;
    row.noise_fraction = 0.0;
  }
  return row;
}

std::vector<SweepRow> response_sweep(const AtomParams& params, const Grid& grid,
                                     SweepOptions options) {
  if (grid.axis != GridAxis::log10_scaled_intensity) {
    throw InvalidParameter("response_sweep needs a log10_scaled_intensity grid");
  }
  grid.validate();

  std::vector<SweepRow> rows(static_cast<std::size_t>(grid.points));
  auto fill = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const double axis = grid.value(i);
      rows[static_cast<std::size_t>(i)] = response_row(params, axis, std::pow(10.0, axis) / 4.0);
    }
  };

  const int workers = static_cast<int>(std::clamp(options.threads, 1u, 64u));
  if (workers == 1) {
    fill(0, grid.points);
    return rows;
  }
  std::vector<std::jthread> pool;
  const int chunk = (grid.points + workers - 1) / workers;
  for (int begin = 0; begin < grid.points; begin += chunk) {
    pool.emplace_back(fill, begin, std::min(begin + chunk, grid.points));
  }
  pool.clear();
  return rows;
}

std::vector<BetaRow> beta_sweep(const Grid& grid, double big_gamma) {
  if (grid.axis != GridAxis::beta) throw InvalidParameter("beta_sweep needs a beta grid");
  grid.validate();
  if (!(grid.min > 0.0) || !(grid.max <= 1.0)) {
    throw DomainError("beta grid must lie in (0, 1], got [" + std::to_string(grid.min) + ", " +
                      std::to_string(grid.max) + "]");
  }

  std::vector<BetaRow> rows;
  rows.reserve(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) {
    const AtomParams params = AtomParams::from_beta(big_gamma, grid.value(i));
    rows.push_back({grid.value(i), params.gamma_loss(), 1.0 - 2.0 * grid.value(i)});
  }
  return rows;
}

}  // namespace phaseswitch
