#include "hds/power/smib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hds::power {

void SmibParams::validate() const {
  if (!(m > 0.0)) throw ArgumentError("SMIB inertia M must be positive");
  if (!(d >= 0.0)) throw ArgumentError("SMIB damping D must be non-negative");
  if (!(p_min < p_max)) throw ArgumentError("SMIB restoration band needs P_min < P_max");
  if (!(x_line > 0.0)) throw ArgumentError("SMIB line reactance must be positive");
  if (forced_trip && !std::isfinite(*forced_trip)) throw ArgumentError("forced trip time must be finite");
}

double SmibParams::electrical_power(double delta) const { return e * v * std::sin(delta) / x_line; }

double SmibParams::line_current(double delta) const {
  const double mag2 = e * e + v * v - 2.0 * e * v * std::cos(delta);
  return std::sqrt(std::max(mag2, 0.0)) / x_line;
}

FlowJumpSystem smib_system(const SmibParams& p) {
  p.validate();
  const auto on_line1 = [](const Vector& x) { return x[kLine] < 1.5; };

  FlowJumpSystem sys;
  sys.dim = 3;
  sys.flow_map = [p](const Vector& x, double) {
    Vector dx(3);
    dx[kDelta] = x[kOmega];
    dx[kOmega] = (p.p_m - p.electrical_power(x[kDelta]) - p.d * x[kOmega]) / p.m;
    dx[kLine] = 0.0;
    return dx;
  };
  sys.jump_margin = [p, on_line1](const Vector& x, double t) {
    if (on_line1(x)) {
      double m = p.line_current(x[kDelta]) - p.i_max;
      if (p.forced_trip) m = std::max(m, t - *p.forced_trip);
      return m;
    }
    const double pe = p.electrical_power(x[kDelta]);
    return std::min(pe - p.p_min, p.p_max - pe);
  };
  sys.flow_set = [sys_margin = sys.jump_margin](const Vector& x, double t) {
    return sys_margin(x, t) <= 0.0;
  };
  sys.jump_map = Reset{[on_line1](const Vector& x) {
                         Vector out = x;
                         out[kLine] = on_line1(x) ? 2.0 : 1.0;
                         return out;
                       },
                       [](const Vector& x) { return Matrix::Identity(x.size(), x.size()).eval(); }};
  sys.mode_of = [on_line1](const Vector& x) -> std::size_t { return on_line1(x) ? 0 : 1; };
  sys.mode_names = {"q1", "q2"};
  return sys;
}

}  // namespace hds::power
