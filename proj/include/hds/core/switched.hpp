#pragma once

#include "hds/core/hybrid_system.hpp"
#include "hds/core/simulate.hpp"

#include <cstddef>
#include <vector>

namespace hds {

struct SwitchInstant {
  double t;
  std::size_t mode;  // zero-based index of the subsystem active from t on
};

/// x' = f_sigma(t)(x) with a piecewise-constant switching signal given by an
/// initial mode and strictly increasing switch instants.
struct SwitchedSystem {
  std::size_t dim = 0;  // dimension of z
  std::vector<VectorField> subsystems;
  std::size_t initial_mode = 0;
  std::vector<SwitchInstant> switches;

  void validate() const;
  std::size_t mode_at(double t) const;
};

/// Set-oriented lift with state (z, q, k): q holds the active subsystem and k
/// the number of switches applied so far, both as real coordinates. Flows are
/// (f_q(z), 0, 0); the jump set is t >= s_k and the jump map sets
/// q to the next scheduled mode and increments k. Initial state is
/// lift_state(sw, z0).
FlowJumpSystem lift_switched(const SwitchedSystem& sw);
Vector lift_state(const SwitchedSystem& sw, const Vector& z0);

/// Direct piecewise RK4 integration of the switched system on the same grid
/// as `simulate`, splitting steps exactly at switch instants.
HybridTrajectory simulate_switched(const SwitchedSystem& sw, const Vector& z0,
                                   const SimulationOptions& options);

}  // namespace hds
