#pragma once

#include "hds/core/hybrid_system.hpp"
#include "hds/core/random.hpp"
#include "hds/core/simulate.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

namespace hds {

using InitialStateSampler = std::function<Vector(Rng& rng)>;
using UnsafePredicate = std::function<bool(const TrajectorySample& sample)>;

InitialStateSampler uniform_box_sampler(Vector lower, Vector upper);

struct Counterexample {
  std::size_t sample_index = 0;  // which draw produced it
  Vector initial_state;
  HybridTrajectory trajectory;
  std::size_t first_unsafe = 0;  // index into trajectory.samples
  HybridTime time;               // hybrid time of first_unsafe
};

/// Falsification by sampling: a missing counterexample is not a proof of
/// safety, since only the sampled initial states are explored.
struct SafetyVerdict {
  std::size_t samples_checked = 0;
  std::optional<Counterexample> counterexample;

  bool unsafe() const noexcept { return counterexample.has_value(); }
};

SafetyVerdict check_safety(const FlowJumpSystem& system, const InitialStateSampler& sampler,
                           const UnsafePredicate& unsafe, const SimulationOptions& options,
                           std::size_t samples, std::uint64_t seed);

SafetyVerdict check_safety(const HybridAutomaton& automaton, std::size_t mode0,
                           const InitialStateSampler& sampler, const UnsafePredicate& unsafe,
                           const SimulationOptions& options, std::size_t samples,
                           std::uint64_t seed);

}  // namespace hds
