#include "hds/estimation/filter.hpp"

#include "hds/core/event.hpp"
#include "hds/core/integrator.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace hds::estimation {

namespace {

constexpr double kAlignmentTolerance = 1e-9;

struct Crossing {
  std::size_t edge;
  double t;
};

class Runner {
 public:
  Runner(const ProcessModel& process, const NoiseModel& noise, const FilterOptions& options)
      : process_(process), noise_(noise), opt_(options) {
    split_noise_ = noise;
    if (split_noise_.q_period == 0.0) split_noise_.q_period = opt_.dt;
  }

  FilterResult run(const GaussianBelief& initial, const std::vector<Measurement>& measurements) {
    const auto grid = time_grid(opt_.t0, opt_.t0 + opt_.horizon, opt_.dt);
    check_measurements(grid, measurements);

    const auto* hybrid = std::get_if<HybridProcess>(&process_);
    if (hybrid) {
      result_.estimate.mode_names = hybrid->automaton->mode_names();
      q_ = hybrid->initial_mode;
    } else {
      result_.estimate.mode_names = {"continuous"};
    }

    GaussianBelief b = initial;
    double t = grid.front();
    push_grid(t, b);
    for (std::size_t k = 1; k < grid.size(); ++k) {
      const double t_next = grid[k];
      b = hybrid ? hybrid_step(*hybrid->automaton, b, t, t_next)
                 : predict(std::get<ContinuousProcess>(process_).field, b, t, t_next - t, true);
      t = t_next;
      b = ekf_update(b, measurements[k].z, noise_);
      push_grid(t, b);
    }
    return std::move(result_);
  }

 private:
  void check_measurements(const std::vector<double>& grid,
                          const std::vector<Measurement>& measurements) const {
    if (measurements.size() < grid.size())
      throw ArgumentError("measurement stream has " + std::to_string(measurements.size()) +
                          " samples but the grid has " + std::to_string(grid.size()) + " points");
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!(std::abs(measurements[k].t - grid[k]) <= kAlignmentTolerance))
        throw ArgumentError("measurement " + std::to_string(k) + " at t = " +
                            std::to_string(measurements[k].t) + " is off the integration grid");
    }
  }

  // Full grid steps add the caller's Q as given; parts of a split step use the rate form.
  GaussianBelief predict(const VectorField& flow, const GaussianBelief& b, double t, double h,
                         bool full_step) const {
    return ekf_predict(b, flow, t, h, full_step ? noise_ : split_noise_);
  }

  GaussianBelief hybrid_step(const HybridAutomaton& ha, GaussianBelief b, double t, double t_next) {
    std::size_t consecutive = 0;
    bool split = false;
    while (true) {
      if (auto e = enabled_edge(ha, b.mean, t)) {
        if (++consecutive > opt_.max_consecutive_jumps)
          throw NumericalFailure("too many consecutive jumps in the filter model", t);
        b = jump(ha, *e, b, t);
        continue;
      }
      const double h = t_next - t;
      if (h <= 0.0) return b;
      consecutive = 0;
      const auto& flow = ha.mode(q_).flow;
      const Vector mean_end = rk4_step(flow, b.mean, t, h);
      const auto crossing = first_crossing(ha, flow, b.mean, t, mean_end, t_next);
      if (!crossing || crossing->t >= t_next) {
        b = predict(flow, b, t, h, !split);
        if (!crossing) return b;
        t = t_next;
        record(t, b.mean);
        b = jump(ha, crossing->edge, b, t);
        continue;
      }
      split = true;
      if (crossing->t > t) b = predict(flow, b, t, crossing->t - t, false);
      t = crossing->t;
      record(t, b.mean);
      b = jump(ha, crossing->edge, b, t);
    }
  }

  GaussianBelief jump(const HybridAutomaton& ha, std::size_t e, const GaussianBelief& b, double t) {
    const auto& edge = ha.edge(e);
    auto xi = saltation_matrix(edge, ha.mode(edge.from).flow, ha.mode(edge.to).flow, b.mean, t);
    GaussianBelief out = propagate_belief_through_jump(b, edge.reset, xi);
    ++j_;
    result_.estimate.jumps.push_back({t, j_, edge.from, edge.to, edge.label});
    result_.saltations.push_back(std::move(xi));
    q_ = edge.to;
    record(t, out.mean);
    return out;
  }

  std::optional<std::size_t> enabled_edge(const HybridAutomaton& ha, const Vector& x, double t) const {
    std::optional<std::size_t> found;
    for (auto e : ha.outgoing(q_)) {
      const double m = ha.edge(e).guard.margin(x, t);
      if (std::isnan(m)) throw NumericalFailure("undefined guard margin", t);
      if (m < 0.0) continue;
      if (found) throw AmbiguousTransition(ha.edge(*found).label, ha.edge(e).label, t);
      found = e;
    }
    return found;
  }

  std::optional<Crossing> first_crossing(const HybridAutomaton& ha, const VectorField& flow,
                                         const Vector& x, double t, const Vector& x_end,
                                         double t_end) const {
    std::optional<Crossing> best;
    for (auto e : ha.outgoing(q_)) {
      const auto& guard = ha.edge(e).guard;
      if (guard.margin(x_end, t_end) < 0.0) continue;
      const MarginFunction along = [&](double tau) {
        if (tau == t_end) return guard.margin(x_end, t_end);
        return guard.margin(rk4_step(flow, x, t, tau - t), tau);
      };
      const double te = locate_event(along, t, t_end).value_or(t_end);
      if (best && std::abs(te - best->t) <= kEventTolerance)
        throw AmbiguousTransition(ha.edge(best->edge).label, ha.edge(e).label, te);
      if (!best || te < best->t) best = Crossing{e, te};
    }
    return best;
  }

  void record(double t, const Vector& mean) {
    result_.estimate.samples.push_back({HybridTime{t, j_}, q_, mean});
  }

  void push_grid(double t, const GaussianBelief& b) {
    result_.times.push_back(t);
    result_.beliefs.push_back(b);
    result_.modes.push_back(q_);
    auto& samples = result_.estimate.samples;
    if (!samples.empty() && samples.back().time == HybridTime{t, j_})
      samples.back().state = b.mean;  // a jump landed on this grid point: keep the corrected mean
    else
      record(t, b.mean);
  }

  const ProcessModel& process_;
  const NoiseModel& noise_;
  NoiseModel split_noise_;
  const FilterOptions& opt_;
  FilterResult result_;
  std::size_t q_ = 0;
  std::size_t j_ = 0;
};

}  // namespace

FilterResult run_ekf(const ProcessModel& process, const GaussianBelief& initial,
                     const NoiseModel& noise, const std::vector<Measurement>& measurements,
                     const FilterOptions& options) {
  if (!(options.horizon > 0.0) || !(options.dt > 0.0))
    throw ArgumentError("filter horizon and step must be positive");
  noise.validate();
  const auto n = initial.mean.size();
  if (static_cast<std::size_t>(n) != noise.state_dim())
    throw ArgumentError("initial belief does not match the noise model dimension");
  if (const auto* h = std::get_if<HybridProcess>(&process)) {
    if (!h->automaton) throw ArgumentError("hybrid process without an automaton");
    if (static_cast<std::size_t>(n) != h->automaton->dim())
      throw ArgumentError("initial belief does not match the automaton dimension");
    if (h->initial_mode >= h->automaton->modes().size())
      throw ArgumentError("initial mode out of range");
  } else if (!std::get<ContinuousProcess>(process).field) {
    throw ArgumentError("continuous process without a vector field");
  }
  if (auto why = initial.check_invariants(); !why.empty())
    throw ArgumentError("initial belief: " + why);
  return Runner(process, noise, options).run(initial, measurements);
}

}  // namespace hds::estimation
