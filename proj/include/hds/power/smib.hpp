#pragma once

#include "hds/core/hybrid_system.hpp"

#include <optional>

namespace hds::power {

// State layout [delta, omega, q] with q = 1 (line 1 active) or 2 (line 2 active).
inline constexpr Eigen::Index kDelta = 0;
inline constexpr Eigen::Index kOmega = 1;
inline constexpr Eigen::Index kLine = 2;

/// Two identical lines between a machine with internal voltage E and an
/// infinite bus V, each with reactance X.
struct SmibParams {
  double m = 0.1;
  double d = 0.05;
  double p_m = 0.8;
  double e = 1.1;
  double v = 1.0;
  double x_line = 0.5;
  double i_max = 1.5;
  double p_min = 0.7;
  double p_max = 0.9;
  /// Time-triggered trip of line 1, in addition to the overcurrent guard.
  std::optional<double> forced_trip;

  void validate() const;
  /// E V sin(delta) / X.
  double electrical_power(double delta) const;
  /// |E - V e^{-j delta}| / X.
  double line_current(double delta) const;
};

/// Swing dynamics with the active line as a state coordinate.
/// Line 1 -> 2 when I >= I_max (or t >= forced_trip); 2 -> 1 when the line-1
/// power re-enters [P_min, P_max]. Both jumps keep (delta, omega).
FlowJumpSystem smib_system(const SmibParams& p);

}  // namespace hds::power
