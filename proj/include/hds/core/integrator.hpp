#pragma once

#include "hds/core/types.hpp"

#include <functional>
#include <vector>

namespace hds {

/// Time-dependent vector field x' = f(x, t). Time carries exogenous inputs.
using VectorField = std::function<Vector(const Vector& x, double t)>;

struct TimedState {
  double t;
  Vector x;
};

/// Classic fourth-order Runge-Kutta step of length h from (x, t).
Vector rk4_step(const VectorField& field, const Vector& x, double t, double h);

/// Grid t0, t0 + dt, ..., t1. Interior points are t0 + k*dt (never
/// accumulated); the last point is t1 exactly, so a trailing partial step
/// appears when dt does not divide the interval. Steps shorter than 1e-9*dt
/// are merged into the previous one.
std::vector<double> time_grid(double t0, double t1, double dt);

/// Fixed-step RK4 from t0 to t1, returning every accepted step (t0 included).
/// Throws NumericalFailure naming the first time a non-finite value appears.
std::vector<TimedState> integrate_flow(const VectorField& field, const Vector& x0, double t0,
                                       double t1, double dt);

}  // namespace hds
