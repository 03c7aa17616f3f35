#pragma once

#include "hds/core/hybrid_system.hpp"
#include "hds/core/trajectory.hpp"
#include "hds/estimation/belief.hpp"
#include "hds/estimation/ekf.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace hds::estimation {

struct Measurement {
  double t = 0.0;
  Vector z;
};

/// Filter whose prediction model is a hybrid automaton: guard crossings of
/// the predicted mean are localized inside each step and the belief is
/// carried across with the saltation matrix.
struct HybridProcess {
  const HybridAutomaton* automaton = nullptr;
  std::size_t initial_mode = 0;
};

/// Filter whose prediction model is a single smooth vector field.
struct ContinuousProcess {
  VectorField field;
};

using ProcessModel = std::variant<HybridProcess, ContinuousProcess>;

struct FilterOptions {
  double t0 = 0.0;
  double horizon = 0.2;
  double dt = 1e-4;
  std::size_t max_consecutive_jumps = 10;
};

struct FilterResult {
  std::vector<double> times;              // grid t_0 .. t_N
  std::vector<GaussianBelief> beliefs;    // corrected belief at each grid time
  std::vector<std::size_t> modes;         // active mode at each grid time
  std::vector<SaltationMatrix> saltations;
  HybridTrajectory estimate;              // means on the hybrid time domain
};

/// Runs predict/correct over the grid time_grid(t0, t0 + horizon, dt).
///
/// `measurements[k]` must sit on grid point k (within 1e-9 s) for every k;
/// the filter starts from `initial` at t_0 and corrects with z_1 .. z_N.
/// When noise.q_period is 0, each full grid step adds Q and split steps
/// share it in proportion to their length.
FilterResult run_ekf(const ProcessModel& process, const GaussianBelief& initial,
                     const NoiseModel& noise, const std::vector<Measurement>& measurements,
                     const FilterOptions& options);

}  // namespace hds::estimation
