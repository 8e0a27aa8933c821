#ifndef SGI_RK4_HPP
#define SGI_RK4_HPP

#include <array>
#include <cstddef>

// Fixed-step classical Runge-Kutta 4 on small state vectors. Fixed stepping
// keeps action quadratures deterministic and makes convergence-order tests
// trivial; the dynamics here are smooth, so adaptivity buys nothing.

namespace sgi {

template <std::size_t N>
using StateVec = std::array<double, N>;

template <std::size_t N>
inline StateVec<N> axpy(const StateVec<N>& y, double a, const StateVec<N>& d) {
  StateVec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + a * d[i];
  return out;
}

// deriv(state, t) -> dstate/dt
template <std::size_t N, typename Deriv>
inline StateVec<N> rk4_step(const StateVec<N>& y, double t, double dt, Deriv&& deriv) {
  const StateVec<N> k1 = deriv(y, t);
  const StateVec<N> k2 = deriv(axpy(y, 0.5 * dt, k1), t + 0.5 * dt);
  const StateVec<N> k3 = deriv(axpy(y, 0.5 * dt, k2), t + 0.5 * dt);
  const StateVec<N> k4 = deriv(axpy(y, dt, k3), t + dt);
  StateVec<N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace sgi

#endif
