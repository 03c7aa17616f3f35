#pragma once

#include "hds/core/hybrid_system.hpp"
#include "hds/core/integrator.hpp"

#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace hds::power {

// State layout [i_d, i_q, v_d, v_q], per-unit.
inline constexpr Eigen::Index kId = 0;
inline constexpr Eigen::Index kIq = 1;
inline constexpr Eigen::Index kVd = 2;
inline constexpr Eigen::Index kVq = 3;
inline constexpr std::size_t kInverterDim = 4;

inline constexpr std::size_t kGfl = 0;
inline constexpr std::size_t kGfm = 1;

struct InverterParams {
  double l_pu = 0.0189;
  double r_pu = 1.89;
  double omega = 2.0 * std::numbers::pi * 60.0;  // rad/s
  double v_ref = 1.0;
  double i_lim = 1.2;
  double v_low = 0.8;
  double v_high = 0.9;
  double k = 50.0;    // sigmoid gain
  double v_th = 0.85; // sigmoid midpoint
  double tau_v = 1e-3;
  double tau_i = 1e-3;

  void validate() const;
};

/// Grid-following: current dynamics through the R-L filter; the voltage
/// channels track (v_grid, 0) with time constant tau_v.
Vector gfl_flow(const Vector& x, double v_grid, const InverterParams& p);

/// Grid-forming: voltage dynamics driven by the currents; the current
/// channels track the algebraic laws with time constant tau_i.
Vector gfm_flow(const Vector& x, const InverterParams& p);

/// (i_d, i_q) = ((V_ref - v_d) / R, -v_q / R).
Eigen::Vector2d gfm_algebraic_currents(const Vector& x, const InverterParams& p);

/// sigma(V) = 1 / (1 + exp(-k (V - V_th))); 1 selects GFL.
double sigmoid_weight(double v_grid, const InverterParams& p);

Vector blended_flow(const Vector& x, double v_grid, const InverterParams& p);

/// Clamps i_d, i_q to [-I_lim, I_lim] and keeps the voltages. The Jacobian
/// has 0 on a clamped current (boundary included) and 1 elsewhere.
Reset current_clamp_reset(const InverterParams& p);

/// Piecewise-linear grid-voltage magnitude through (t, v) breakpoints,
/// held constant outside them.
class VoltageProfile {
 public:
  VoltageProfile() = default;
  explicit VoltageProfile(std::vector<std::pair<double, double>> breakpoints);

  /// 1.0 pu, ramp to 0.5 over [0.05, 0.06], hold, ramp back to 1.0 over [0.12, 0.13].
  static VoltageProfile reference_dip();
  static VoltageProfile constant(double v);

  double operator()(double t) const;
  const std::vector<std::pair<double, double>>& breakpoints() const noexcept { return points_; }

 private:
  std::vector<std::pair<double, double>> points_;
};

/// Modes {GFL, GFM}. GFL->GFM fires when V_grid(t) <= V_low and clamps the
/// currents; GFM->GFL fires when V_grid(t) >= V_high with an identity reset.
/// Both guards depend on time only, so their state gradient is zero.
HybridAutomaton inverter_automaton(const InverterParams& p, const VoltageProfile& profile);

/// Sigmoid-blended single-mode field driven by the same profile.
VectorField blended_field(const InverterParams& p, const VoltageProfile& profile);

}  // namespace hds::power
