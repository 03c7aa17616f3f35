#include "hds/core/hybrid_system.hpp"

#include <algorithm>
#include <cmath>

namespace hds {

Vector Guard::state_gradient(const Vector& x, double t) const {
  if (gradient) return gradient(x, t);
  Vector grad(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = margin(probe, t);
    probe[i] = x[i] - h;
    const double down = margin(probe, t);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  if (!all_finite(grad)) throw NumericalFailure("non-finite guard gradient", t);
  return grad;
}

Reset Reset::identity() {
  return Reset{[](const Vector& x) { return x; },
               [](const Vector& x) { return Matrix::Identity(x.size(), x.size()).eval(); }};
}

HybridAutomaton::HybridAutomaton(std::size_t dim, std::vector<Mode> modes, std::vector<Edge> edges,
                                 InitialSet init)
    : dim_(dim), modes_(std::move(modes)), edges_(std::move(edges)), init_(std::move(init)) {
  if (dim_ == 0) throw ArgumentError("hybrid automaton needs a state dimension >= 1");
  if (modes_.empty()) throw ArgumentError("hybrid automaton needs at least one mode");
  for (const auto& m : modes_) {
    if (!m.flow) throw ArgumentError("mode '" + m.name + "' has no flow");
  }
  outgoing_.resize(modes_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto& edge = edges_[e];
    if (edge.from >= modes_.size() || edge.to >= modes_.size())
      throw ArgumentError("edge '" + edge.label + "' references an unknown mode");
    if (!edge.guard.margin) throw ArgumentError("edge '" + edge.label + "' has no guard");
    if (!edge.reset.map) throw ArgumentError("edge '" + edge.label + "' has no reset");
    if (edge.label.empty())
      edge.label = modes_[edge.from].name + "->" + modes_[edge.to].name;
    outgoing_[edge.from].push_back(e);
  }
}

bool HybridAutomaton::in_init(std::size_t q, const Vector& x) const {
  if (q >= modes_.size() || static_cast<std::size_t>(x.size()) != dim_) return false;
  return !init_ || init_(q, x);
}

bool HybridAutomaton::in_invariant(std::size_t q, const Vector& x, double t) const {
  const auto& inv = modes_.at(q).invariant;
  return !inv || inv(x, t);
}

std::vector<std::string> HybridAutomaton::mode_names() const {
  std::vector<std::string> names;
  names.reserve(modes_.size());
  for (const auto& m : modes_) names.push_back(m.name);
  return names;
}

void FlowJumpSystem::validate() const {
  if (dim == 0) throw ArgumentError("flow/jump system needs a state dimension >= 1");
  if (!flow_map) throw ArgumentError("flow/jump system has no flow map");
  if (jump_margin && !jump_map.map) throw ArgumentError("jump set given without a jump map");
}

bool FlowJumpSystem::in_flow_set(const Vector& x, double t) const {
  return !flow_set || flow_set(x, t);
}

bool FlowJumpSystem::in_jump_set(const Vector& x, double t) const {
  return jump_margin && jump_margin(x, t) >= 0.0;
}

}  // namespace hds
