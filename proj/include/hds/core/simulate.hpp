#pragma once

#include "hds/core/hybrid_system.hpp"
#include "hds/core/trajectory.hpp"

#include <cstddef>

namespace hds {

struct SimulationOptions {
  double t0 = 0.0;
  double horizon = 1.0;  // seconds after t0
  double dt = 1e-4;
  std::size_t max_jumps = 1000;
  /// Jumps allowed back-to-back at one instant before the run is cut short.
  std::size_t max_consecutive_jumps = 10;
  /// When false, numerical failures end the run with Termination::NumericalFailure
  /// instead of throwing.
  bool throw_on_failure = true;
};

/// Simulates a hybrid automaton from (mode0, x0).
///
/// Flows with RK4 on the grid time_grid(t0, t0 + horizon, dt). When a guard
/// margin of the active mode becomes non-negative inside a step, the crossing
/// is localized with locate_event on the RK4 interpolant of that step, the
/// pre-jump sample is recorded, the reset applied and j incremented; the run
/// then continues to the next grid point. A state already inside a guard
/// jumps before flowing. Two guards enabled within kEventTolerance of each
/// other raise AmbiguousTransition.
HybridTrajectory simulate(const HybridAutomaton& automaton, std::size_t mode0, const Vector& x0,
                          const SimulationOptions& options);

/// Simulates (C, f, D, g); a state in C and D jumps.
HybridTrajectory simulate(const FlowJumpSystem& system, const Vector& x0,
                          const SimulationOptions& options);

}  // namespace hds
