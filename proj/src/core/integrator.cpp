#include "hds/core/integrator.hpp"

#include <cmath>

namespace hds {

Vector rk4_step(const VectorField& field, const Vector& x, double t, double h) {
  const double half = 0.5 * h;
  const Vector k1 = field(x, t);
  const Vector k2 = field(x + half * k1, t + half);
  const Vector k3 = field(x + half * k2, t + half);
  const Vector k4 = field(x + h * k3, t + h);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::vector<double> time_grid(double t0, double t1, double dt) {
  if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
  if (!(t1 > t0)) throw ArgumentError("time interval must satisfy t1 > t0");
  const double span = (t1 - t0) / dt;
  auto steps = static_cast<std::size_t>(std::ceil(span - 1e-9));
  if (steps == 0) steps = 1;
  std::vector<double> grid;
  grid.reserve(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) grid.push_back(t0 + static_cast<double>(k) * dt);
  grid.push_back(t1);
  return grid;
}

std::vector<TimedState> integrate_flow(const VectorField& field, const Vector& x0, double t0,
                                       double t1, double dt) {
  if (!all_finite(x0)) throw NumericalFailure("non-finite initial state", t0);
  if (!all_finite(field(x0, t0))) throw NumericalFailure("non-finite derivative", t0);

  const auto grid = time_grid(t0, t1, dt);
  std::vector<TimedState> out;
  out.reserve(grid.size());
  out.push_back({grid.front(), x0});
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const auto& prev = out.back();
    Vector next = rk4_step(field, prev.x, prev.t, grid[k] - prev.t);
    if (!all_finite(next)) throw NumericalFailure("non-finite state", grid[k]);
    out.push_back({grid[k], std::move(next)});
  }
  return out;
}

}  // namespace hds
