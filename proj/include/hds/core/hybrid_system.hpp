#pragma once

#include "hds/core/integrator.hpp"
#include "hds/core/types.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace hds {

using StatePredicate = std::function<bool(const Vector& x, double t)>;
using MarginMap = std::function<double(const Vector& x, double t)>;
using StateMap = std::function<Vector(const Vector& x)>;
using JacobianMap = std::function<Matrix(const Vector& x)>;

/// Guard as a signed margin: >= 0 means the transition is enabled.
/// `gradient` optionally returns d(margin)/dx; callers fall back to central
/// differences when it is empty.
struct Guard {
  MarginMap margin;
  std::function<Vector(const Vector& x, double t)> gradient;

  Vector state_gradient(const Vector& x, double t) const;
};

/// Reset map x+ = R(x), with an optional analytic Jacobian.
struct Reset {
  StateMap map;
  JacobianMap jacobian;

  static Reset identity();
  Vector operator()(const Vector& x) const { return map(x); }
};

struct Mode {
  std::string name;
  VectorField flow;
  StatePredicate invariant;  // empty: the whole state space
};

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string label;
  Guard guard;
  Reset reset;
};

using InitialSet = std::function<bool(std::size_t mode, const Vector& x)>;

/// Modes with flows and invariants, guarded edges with resets, and an
/// optional initial set. Immutable after construction.
class HybridAutomaton {
 public:
  HybridAutomaton(std::size_t dim, std::vector<Mode> modes, std::vector<Edge> edges,
                  InitialSet init = {});

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Mode>& modes() const noexcept { return modes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Mode& mode(std::size_t q) const { return modes_.at(q); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<std::size_t>& outgoing(std::size_t q) const { return outgoing_.at(q); }
  bool in_init(std::size_t q, const Vector& x) const;
  bool in_invariant(std::size_t q, const Vector& x, double t) const;
  std::vector<std::string> mode_names() const;

 private:
  std::size_t dim_;
  std::vector<Mode> modes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> outgoing_;
  InitialSet init_;
};

/// Flow/jump data (C, f, D, g). The jump set is given by a signed margin
/// (>= 0 inside D). `mode_of` optionally labels states for trajectories,
/// e.g. when a discrete variable is embedded as a state coordinate.
struct FlowJumpSystem {
  std::size_t dim = 0;
  StatePredicate flow_set;  // empty: the whole state space
  VectorField flow_map;
  MarginMap jump_margin;  // empty: D is empty
  Reset jump_map = Reset::identity();
  std::function<std::size_t(const Vector& x)> mode_of;
  std::vector<std::string> mode_names;

  void validate() const;
  bool in_flow_set(const Vector& x, double t) const;
  bool in_jump_set(const Vector& x, double t) const;
};

}  // namespace hds
