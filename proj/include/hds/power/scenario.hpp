#pragma once

#include "hds/core/trajectory.hpp"
#include "hds/estimation/belief.hpp"
#include "hds/estimation/filter.hpp"
#include "hds/power/inverter.hpp"

#include <cstdint>
#include <vector>

namespace hds::power {

struct InverterScenario {
  double horizon = 0.2;
  double dt = 1e-4;
  VoltageProfile profile = VoltageProfile::reference_dip();
  std::uint64_t seed = 42;
  Vector x0;
  Matrix p0;  // initial filter covariance
  InverterParams params;
  estimation::NoiseModel noise;

  void validate() const;
};

/// Reference dip scenario: x0 = [0, 0, 1, 0], P0 = 1e-3 I, H = I,
/// Q = 1e-2 I accumulated per second, R = diag(0.004^2, 0.004^2, 0.01^2, 0.01^2).
InverterScenario reference_scenario();

struct ScenarioData {
  HybridTrajectory truth;
  std::vector<double> grid;
  std::vector<Vector> truth_on_grid;  // post-jump value where a jump lands on a grid point
  std::vector<std::size_t> truth_modes;
  std::vector<estimation::Measurement> measurements;  // one per grid point
};

/// Simulates the automaton from (GFL, x0) as ground truth and draws
/// z_k = H x_k + n_k, n_k ~ N(0, R), from Rng(seed) in grid order.
ScenarioData generate_truth_and_measurements(const InverterScenario& scenario);

/// Square root L with L L^T = R (diagonal fast path, otherwise a clipped
/// eigen-decomposition, so singular and zero R are allowed).
Matrix noise_factor(const Matrix& R);

}  // namespace hds::power
