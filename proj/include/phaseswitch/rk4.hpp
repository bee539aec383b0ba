#pragma once

namespace phaseswitch {

/// One classical fourth-order Runge-Kutta step. `State` needs `+` and
/// multiplication by a double; `rhs(state, t)` returns a `State`.
template <class State, class Rhs>
State rk4_step(const State& y, double t, double h, Rhs&& rhs) {
  const State k1 = rhs(y, t);
  const State k2 = rhs(y + (0.5 * h) * k1, t + 0.5 * h);
  const State k3 = rhs(y + (0.5 * h) * k2, t + 0.5 * h);
  const State k4 = rhs(y + h * k3, t + h);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace phaseswitch
