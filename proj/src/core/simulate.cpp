#include "hds/core/simulate.hpp"

#include "hds/core/event.hpp"

#include <cmath>
#include <optional>

namespace hds {

namespace {

struct PendingEvent {
  std::size_t edge;
  double t;
};

class Engine {
 public:
  Engine(const HybridAutomaton& ha, const SimulationOptions& opt) : ha_(ha), opt_(opt) {}

  HybridTrajectory run(std::size_t q0, const Vector& x0) {
    traj_.mode_names = ha_.mode_names();
    const auto grid = time_grid(opt_.t0, opt_.t0 + opt_.horizon, opt_.dt);
    double t = grid.front();
    Vector x = x0;
    std::size_t q = q0;
    std::size_t j = 0;
    std::size_t consecutive = 0;
    std::size_t next = 1;  // index of the next grid point to reach
    record(t, j, q, x);

    try {
      while (true) {
        if (auto e = enabled_edge(q, x, t)) {
          if (j >= opt_.max_jumps || consecutive >= opt_.max_consecutive_jumps) {
            traj_.termination = Termination::MaxJumpsReached;
            break;
          }
          const auto& edge = ha_.edge(*e);
          Vector xp = edge.reset(x);
          if (!all_finite(xp)) throw NumericalFailure("non-finite state after reset", t);
          traj_.jumps.push_back({t, j + 1, q, edge.to, edge.label});
          x = std::move(xp);
          q = edge.to;
          ++j;
          ++consecutive;
          record(t, j, q, x);
          continue;
        }
        if (next >= grid.size()) {
          traj_.termination = Termination::HorizonReached;
          break;
        }

        const double t_next = grid[next];
        const auto& flow = ha_.mode(q).flow;
        Vector x_next = step(flow, x, t, t_next - t);

        if (auto ev = first_event(q, flow, x, t, x_next, t_next)) {
          Vector x_star = ev->t == t_next ? x_next : step(flow, x, t, ev->t - t);
          t = ev->t;
          x = std::move(x_star);
          if (t == t_next) ++next;
          consecutive = 0;
          record(t, j, q, x);
          continue;
        }

        if (!ha_.in_invariant(q, x_next, t_next)) {
          traj_.termination = Termination::LeftFlowSet;
          break;
        }
        t = t_next;
        x = std::move(x_next);
        ++next;
        consecutive = 0;
        record(t, j, q, x);
      }
    } catch (const NumericalFailure& failure) {
      if (opt_.throw_on_failure) throw;
      traj_.termination = Termination::NumericalFailure;
      traj_.message = failure.what();
    }
    return std::move(traj_);
  }

 private:
  Vector step(const VectorField& flow, const Vector& x, double t, double h) const {
    Vector out = rk4_step(flow, x, t, h);
    if (!all_finite(out)) throw NumericalFailure("non-finite state", t + h);
    return out;
  }

  std::optional<std::size_t> enabled_edge(std::size_t q, const Vector& x, double t) const {
    std::optional<std::size_t> found;
    for (auto e : ha_.outgoing(q)) {
      const double m = ha_.edge(e).guard.margin(x, t);
      if (std::isnan(m)) throw NumericalFailure("undefined guard margin", t);
      if (m < 0.0) continue;
      if (found) throw AmbiguousTransition(ha_.edge(*found).label, ha_.edge(e).label, t);
      found = e;
    }
    return found;
  }

  std::optional<PendingEvent> first_event(std::size_t q, const VectorField& flow, const Vector& x,
                                          double t, const Vector& x_next, double t_next) const {
    std::optional<PendingEvent> best;
    std::optional<PendingEvent> runner_up;
    for (auto e : ha_.outgoing(q)) {
      const auto& guard = ha_.edge(e).guard;
      const double m_end = guard.margin(x_next, t_next);
      if (std::isnan(m_end)) throw NumericalFailure("undefined guard margin", t_next);
      if (m_end < 0.0) continue;
      const MarginFunction along = [&](double tau) {
        if (tau == t_next) return guard.margin(x_next, t_next);
        return guard.margin(rk4_step(flow, x, t, tau - t), tau);
      };
      const double te = locate_event(along, t, t_next).value_or(t_next);
      PendingEvent ev{e, te};
      if (!best || te < best->t) {
        runner_up = best;
        best = ev;
      } else if (!runner_up || te < runner_up->t) {
        runner_up = ev;
      }
    }
    if (best && runner_up && runner_up->t - best->t <= kEventTolerance)
      throw AmbiguousTransition(ha_.edge(best->edge).label, ha_.edge(runner_up->edge).label, best->t);
    return best;
  }

  void record(double t, std::size_t j, std::size_t q, const Vector& x) {
    traj_.samples.push_back({HybridTime{t, j}, q, x});
  }

  const HybridAutomaton& ha_;
  const SimulationOptions& opt_;
  HybridTrajectory traj_;
};

void check_options(const SimulationOptions& opt) {
  if (!(opt.horizon > 0.0)) throw ArgumentError("simulation horizon must be positive");
  if (!(opt.dt > 0.0)) throw ArgumentError("simulation step must be positive");
}

}  // namespace

HybridTrajectory simulate(const HybridAutomaton& automaton, std::size_t mode0, const Vector& x0,
                          const SimulationOptions& options) {
  check_options(options);
  if (!automaton.in_init(mode0, x0))
    throw ArgumentError("initial condition (mode " + std::to_string(mode0) + ", " +
                        format_vector(x0) + ") is not in Init");
  if (!all_finite(x0)) throw NumericalFailure("non-finite initial state", options.t0);
  return Engine(automaton, options).run(mode0, x0);
}

HybridTrajectory simulate(const FlowJumpSystem& system, const Vector& x0,
                          const SimulationOptions& options) {
  system.validate();
  check_options(options);
  if (static_cast<std::size_t>(x0.size()) != system.dim)
    throw ArgumentError("initial state has dimension " + std::to_string(x0.size()) + ", expected " +
                        std::to_string(system.dim));
  if (!system.in_flow_set(x0, options.t0) && !system.in_jump_set(x0, options.t0))
    throw ArgumentError("initial state " + format_vector(x0) + " is in neither C nor D");

  std::vector<Edge> edges;
  if (system.jump_margin)
    edges.push_back(Edge{0, 0, "jump", Guard{system.jump_margin, {}}, system.jump_map});
  const HybridAutomaton ha(system.dim,
                           {Mode{"flow", system.flow_map, system.flow_set}},
                           std::move(edges));
  auto traj = simulate(ha, 0, x0, options);

  if (system.mode_of) {
    traj.mode_names = system.mode_names;
    for (auto& s : traj.samples) s.mode = system.mode_of(s.state);
    std::size_t k = 0;
    for (std::size_t i = 1; i < traj.samples.size() && k < traj.jumps.size(); ++i) {
      if (traj.samples[i].time.j != traj.samples[i - 1].time.j) {
        traj.jumps[k].from = traj.samples[i - 1].mode;
        traj.jumps[k].to = traj.samples[i].mode;
        ++k;
      }
    }
  }
  return traj;
}

}  // namespace hds
