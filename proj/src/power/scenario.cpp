#include "hds/power/scenario.hpp"

#include "hds/core/integrator.hpp"
#include "hds/core/random.hpp"
#include "hds/core/simulate.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace hds::power {

void InverterScenario::validate() const {
  params.validate();
  if (!(horizon > 0.0) || !(dt > 0.0)) throw ArgumentError("horizon and dt must be positive");
  const double steps = horizon / dt;
  if (std::abs(steps - std::round(steps)) > 1e-12 * std::max(1.0, steps))
    throw ArgumentError("dt must divide the horizon");
  if (static_cast<std::size_t>(x0.size()) != kInverterDim)
    throw ArgumentError("inverter initial state must have 4 entries");
  if (p0.rows() != x0.size() || p0.cols() != x0.size())
    throw ArgumentError("initial covariance must be 4x4");
  noise.validate();
  if (noise.state_dim() != kInverterDim) throw ArgumentError("noise model must be 4-dimensional");
  if (profile.breakpoints().empty()) throw ArgumentError("voltage profile is empty");
}

InverterScenario reference_scenario() {
  InverterScenario s;
  s.x0 = Vector::Zero(4);
  s.x0[kVd] = 1.0;
  s.p0 = 1e-3 * Matrix::Identity(4, 4);
  s.noise.Q = 1e-2 * Matrix::Identity(4, 4);
  s.noise.q_period = 1.0;
  s.noise.H = Matrix::Identity(4, 4);
  Vector r(4);
  r << 0.004 * 0.004, 0.004 * 0.004, 0.01 * 0.01, 0.01 * 0.01;
  s.noise.R = r.asDiagonal();
  return s;
}

Matrix noise_factor(const Matrix& R) {
  if (R.rows() != R.cols()) throw ArgumentError("R must be square");
  const Matrix off = R - Matrix(R.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() == 0.0 || R.size() == 0) {
    if ((R.diagonal().array() < 0.0).any()) throw ArgumentError("R has a negative variance");
    return R.diagonal().cwiseSqrt().asDiagonal();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(R);
  const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal();
}

ScenarioData generate_truth_and_measurements(const InverterScenario& scenario) {
  scenario.validate();
  const auto ha = inverter_automaton(scenario.params, scenario.profile);

  SimulationOptions opt;
  opt.t0 = 0.0;
  opt.horizon = scenario.horizon;
  opt.dt = scenario.dt;

  ScenarioData out;
  out.truth = simulate(ha, kGfl, scenario.x0, opt);
  if (out.truth.termination != Termination::HorizonReached)
    throw NumericalFailure("truth simulation ended early: " +
                               std::string(to_string(out.truth.termination)),
                           out.truth.back().time.t);
  out.grid = time_grid(0.0, scenario.horizon, scenario.dt);
  const auto idx = out.truth.indices_on_grid(out.grid);
  const Matrix L = noise_factor(scenario.noise.R);
  const Matrix& H = scenario.noise.H;

  Rng rng(scenario.seed);
  out.truth_on_grid.reserve(idx.size());
  out.measurements.reserve(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto& sample = out.truth.samples[idx[k]];
    out.truth_on_grid.push_back(sample.state);
    out.truth_modes.push_back(sample.mode);
    const Vector n = L * rng.gaussian_vector(L.cols());
    out.measurements.push_back({out.grid[k], H * sample.state + n});
  }
  return out;
}

}  // namespace hds::power
