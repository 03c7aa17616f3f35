#include "hds/core/switched.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hds {

void SwitchedSystem::validate() const {
  if (dim == 0) throw ArgumentError("switched system needs a state dimension >= 1");
  if (subsystems.empty()) throw ArgumentError("switched system needs at least one subsystem");
  for (const auto& f : subsystems)
    if (!f) throw ArgumentError("switched system has an empty subsystem");
  if (initial_mode >= subsystems.size()) throw ArgumentError("initial mode out of range");
  for (std::size_t i = 0; i < switches.size(); ++i) {
    if (switches[i].mode >= subsystems.size())
      throw ArgumentError("switch " + std::to_string(i) + " selects an unknown mode");
    if (!std::isfinite(switches[i].t)) throw ArgumentError("switch times must be finite");
    if (i > 0 && !(switches[i].t > switches[i - 1].t))
      throw ArgumentError("switch instants must be strictly increasing");
  }
}

std::size_t SwitchedSystem::mode_at(double t) const {
  std::size_t mode = initial_mode;
  for (const auto& s : switches) {
    if (s.t > t) break;
    mode = s.mode;
  }
  return mode;
}

Vector lift_state(const SwitchedSystem& sw, const Vector& z0) {
  Vector x(z0.size() + 2);
  x.head(z0.size()) = z0;
  x[z0.size()] = static_cast<double>(sw.initial_mode);
  x[z0.size() + 1] = 0.0;
  return x;
}

FlowJumpSystem lift_switched(const SwitchedSystem& sw) {
  sw.validate();
  const auto subsystems = sw.subsystems;
  const auto switches = sw.switches;
  const auto index = [](double v) { return static_cast<std::size_t>(std::llround(v)); };

  FlowJumpSystem lifted;
  lifted.flow_map = [subsystems, index](const Vector& x, double t) {
    const auto n = x.size() - 2;
    Vector dx = Vector::Zero(x.size());
    dx.head(n) = subsystems[index(x[n])](x.head(n), t);
    return dx;
  };
  lifted.jump_margin = [switches, index](const Vector& x, double t) {
    const auto k = index(x[x.size() - 1]);
    if (k >= switches.size()) return -std::numeric_limits<double>::infinity();
    return t - switches[k].t;
  };
  lifted.jump_map.map = [switches, index](const Vector& x) {
    Vector xp = x;
    const auto k = index(x[x.size() - 1]);
    xp[x.size() - 2] = static_cast<double>(switches[k].mode);
    xp[x.size() - 1] = static_cast<double>(k + 1);
    return xp;
  };
  lifted.jump_map.jacobian = [](const Vector& x) {
    Matrix jac = Matrix::Identity(x.size(), x.size());
    jac(x.size() - 2, x.size() - 2) = 0.0;
    jac(x.size() - 1, x.size() - 1) = 0.0;
    return jac;
  };
  lifted.mode_of = [index](const Vector& x) { return index(x[x.size() - 2]); };
  for (std::size_t i = 0; i < subsystems.size(); ++i)
    lifted.mode_names.push_back("mode" + std::to_string(i + 1));
  lifted.dim = sw.dim + 2;
  return lifted;
}

HybridTrajectory simulate_switched(const SwitchedSystem& sw, const Vector& z0,
                                   const SimulationOptions& options) {
  sw.validate();
  const auto grid = time_grid(options.t0, options.t0 + options.horizon, options.dt);
  HybridTrajectory traj;
  for (std::size_t i = 0; i < sw.subsystems.size(); ++i)
    traj.mode_names.push_back("mode" + std::to_string(i + 1));

  std::size_t q = sw.initial_mode;
  std::size_t j = 0;
  std::size_t pending = 0;  // next switch to apply
  double t = grid.front();
  Vector z = z0;
  traj.samples.push_back({{t, j}, q, z});

  const auto apply_due_switches = [&] {
    while (pending < sw.switches.size() && sw.switches[pending].t <= t) {
      if (j >= options.max_jumps) return false;
      const auto to = sw.switches[pending].mode;
      traj.jumps.push_back({t, j + 1, q, to, "switch" + std::to_string(pending + 1)});
      q = to;
      ++j;
      ++pending;
      traj.samples.push_back({{t, j}, q, z});
    }
    return true;
  };

  if (!apply_due_switches()) {
    traj.termination = Termination::MaxJumpsReached;
    return traj;
  }
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double t_next = grid[k];
    while (pending < sw.switches.size() && sw.switches[pending].t < t_next) {
      const double s = sw.switches[pending].t;
      z = rk4_step(sw.subsystems[q], z, t, s - t);
      t = s;
      traj.samples.push_back({{t, j}, q, z});
      if (!apply_due_switches()) {
        traj.termination = Termination::MaxJumpsReached;
        return traj;
      }
    }
    z = rk4_step(sw.subsystems[q], z, t, t_next - t);
    if (!all_finite(z)) throw NumericalFailure("non-finite state", t_next);
    t = t_next;
    traj.samples.push_back({{t, j}, q, z});
    if (!apply_due_switches()) {
      traj.termination = Termination::MaxJumpsReached;
      return traj;
    }
  }
  traj.termination = Termination::HorizonReached;
  return traj;
}

}  // namespace hds
