#include "hds/core/safety.hpp"

namespace hds {

InitialStateSampler uniform_box_sampler(Vector lower, Vector upper) {
  if (lower.size() != upper.size()) throw ArgumentError("sampler bounds differ in dimension");
  if (((upper - lower).array() < 0.0).any()) throw ArgumentError("sampler bounds are inverted");
  return [lower = std::move(lower), upper = std::move(upper)](Rng& rng) {
    Vector x(lower.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(lower[i], upper[i]);
    return x;
  };
}

namespace {

template <typename Simulate>
SafetyVerdict falsify(const Simulate& run, const InitialStateSampler& sampler,
                      const UnsafePredicate& unsafe, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw ArgumentError("safety check needs at least one sample");
  if (!sampler || !unsafe) throw ArgumentError("safety check needs a sampler and an unsafe set");
  Rng rng(seed);
  SafetyVerdict verdict;
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x0 = sampler(rng);
    auto traj = run(x0);
    ++verdict.samples_checked;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
      if (!unsafe(traj.samples[i])) continue;
      const auto time = traj.samples[i].time;
      verdict.counterexample = Counterexample{s, std::move(x0), std::move(traj), i, time};
      return verdict;
    }
  }
  return verdict;
}

}  // namespace

SafetyVerdict check_safety(const FlowJumpSystem& system, const InitialStateSampler& sampler,
                           const UnsafePredicate& unsafe, const SimulationOptions& options,
                           std::size_t samples, std::uint64_t seed) {
  return falsify([&](const Vector& x0) { return simulate(system, x0, options); }, sampler, unsafe,
                 samples, seed);
}

SafetyVerdict check_safety(const HybridAutomaton& automaton, std::size_t mode0,
                           const InitialStateSampler& sampler, const UnsafePredicate& unsafe,
                           const SimulationOptions& options, std::size_t samples,
                           std::uint64_t seed) {
  return falsify([&](const Vector& x0) { return simulate(automaton, mode0, x0, options); }, sampler,
                 unsafe, samples, seed);
}

}  // namespace hds
