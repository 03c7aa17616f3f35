#include "hds/power/inverter.hpp"

#include <algorithm>
#include <cmath>

namespace hds::power {

void InverterParams::validate() const {
  if (!(l_pu > 0.0) || !(r_pu > 0.0)) throw ArgumentError("L_pu and R_pu must be positive");
  if (!(v_low < v_high)) throw ArgumentError("V_low must be below V_high");
  if (!(tau_v > 0.0) || !(tau_i > 0.0)) throw ArgumentError("tracking time constants must be positive");
  if (!(i_lim > 0.0)) throw ArgumentError("I_lim must be positive");
  if (!std::isfinite(omega) || !std::isfinite(v_ref) || !std::isfinite(k) || !std::isfinite(v_th))
    throw ArgumentError("inverter parameters must be finite");
}

Vector gfl_flow(const Vector& x, double v_grid, const InverterParams& p) {
  const double wl = p.omega * p.l_pu;
  Vector dx(4);
  dx[kId] = (x[kVd] - p.r_pu * x[kId] + wl * x[kIq]) / p.l_pu;
  dx[kIq] = (x[kVq] - p.r_pu * x[kIq] - wl * x[kId]) / p.l_pu;
  dx[kVd] = (v_grid - x[kVd]) / p.tau_v;
  dx[kVq] = -x[kVq] / p.tau_v;
  return dx;
}

Eigen::Vector2d gfm_algebraic_currents(const Vector& x, const InverterParams& p) {
  return {(p.v_ref - x[kVd]) / p.r_pu, -x[kVq] / p.r_pu};
}

Vector gfm_flow(const Vector& x, const InverterParams& p) {
  const double wl = p.omega * p.l_pu;
  const Eigen::Vector2d i_alg = gfm_algebraic_currents(x, p);
  Vector dx(4);
  dx[kId] = (i_alg[0] - x[kId]) / p.tau_i;
  dx[kIq] = (i_alg[1] - x[kIq]) / p.tau_i;
  dx[kVd] = (wl * x[kIq] - p.r_pu * x[kId]) / p.l_pu;
  dx[kVq] = (-wl * x[kId] - p.r_pu * x[kIq]) / p.l_pu;
  return dx;
}

double sigmoid_weight(double v_grid, const InverterParams& p) {
  return 1.0 / (1.0 + std::exp(-p.k * (v_grid - p.v_th)));
}

Vector blended_flow(const Vector& x, double v_grid, const InverterParams& p) {
  const double s = sigmoid_weight(v_grid, p);
  return s * gfl_flow(x, v_grid, p) + (1.0 - s) * gfm_flow(x, p);
}

Reset current_clamp_reset(const InverterParams& p) {
  const double lim = p.i_lim;
  Reset r;
  r.map = [lim](const Vector& x) {
    Vector out = x;
    out[kId] = std::clamp(x[kId], -lim, lim);
    out[kIq] = std::clamp(x[kIq], -lim, lim);
    return out;
  };
  r.jacobian = [lim](const Vector& x) {
    Matrix J = Matrix::Identity(x.size(), x.size());
    for (Eigen::Index i : {kId, kIq}) {
      if (std::abs(x[i]) >= lim) J(i, i) = 0.0;
    }
    return J;
  };
  return r;
}

VoltageProfile::VoltageProfile(std::vector<std::pair<double, double>> breakpoints)
    : points_(std::move(breakpoints)) {
  if (points_.empty()) throw ArgumentError("voltage profile needs at least one breakpoint");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].first) || !std::isfinite(points_[i].second))
      throw ArgumentError("voltage profile breakpoints must be finite");
    if (i > 0 && !(points_[i].first > points_[i - 1].first))
      throw ArgumentError("voltage profile times must be strictly increasing");
  }
}

VoltageProfile VoltageProfile::reference_dip() {
  return VoltageProfile({{0.05, 1.0}, {0.06, 0.5}, {0.12, 0.5}, {0.13, 1.0}});
}

VoltageProfile VoltageProfile::constant(double v) { return VoltageProfile({{0.0, v}}); }

double VoltageProfile::operator()(double t) const {
  if (points_.empty()) throw ArgumentError("empty voltage profile");
  if (t <= points_.front().first) return points_.front().second;
  if (t >= points_.back().first) return points_.back().second;
  const auto hi = std::upper_bound(points_.begin(), points_.end(), t,
                                   [](double v, const auto& pt) { return v < pt.first; });
  const auto lo = hi - 1;
  const double s = (t - lo->first) / (hi->first - lo->first);
  return lo->second + s * (hi->second - lo->second);
}

HybridAutomaton inverter_automaton(const InverterParams& p, const VoltageProfile& profile) {
  p.validate();
  const auto zero_gradient = [](const Vector& x, double) { return Vector::Zero(x.size()).eval(); };

  std::vector<Mode> modes{
      Mode{"GFL", [p, profile](const Vector& x, double t) { return gfl_flow(x, profile(t), p); }, {}},
      Mode{"GFM", [p](const Vector& x, double) { return gfm_flow(x, p); }, {}},
  };
  std::vector<Edge> edges{
      Edge{kGfl, kGfm, "GFL->GFM",
           Guard{[p, profile](const Vector&, double t) { return p.v_low - profile(t); },
                 zero_gradient},
           current_clamp_reset(p)},
      Edge{kGfm, kGfl, "GFM->GFL",
           Guard{[p, profile](const Vector&, double t) { return profile(t) - p.v_high; },
                 zero_gradient},
           Reset::identity()},
  };
  return HybridAutomaton(kInverterDim, std::move(modes), std::move(edges));
}

VectorField blended_field(const InverterParams& p, const VoltageProfile& profile) {
  p.validate();
  return [p, profile](const Vector& x, double t) { return blended_flow(x, profile(t), p); };
}

}  // namespace hds::power
