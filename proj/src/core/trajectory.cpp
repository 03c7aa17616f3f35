#include "hds/core/trajectory.hpp"

#include <sstream>

namespace hds {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::HorizonReached:
      return "horizon reached";
    case Termination::MaxJumpsReached:
      return "max jumps reached";
    case Termination::LeftFlowSet:
      return "left flow set";
    case Termination::NumericalFailure:
      return "numerical failure";
  }
  return "unknown";
}

std::string_view HybridTrajectory::mode_name(std::size_t q) const {
  if (q < mode_names.size()) return mode_names[q];
  return {};
}

std::optional<std::size_t> HybridTrajectory::last_index_at(double t) const {
  for (std::size_t i = samples.size(); i-- > 0;) {
    if (samples[i].time.t == t) return i;
    if (samples[i].time.t < t) break;
  }
  return std::nullopt;
}

std::vector<std::size_t> HybridTrajectory::indices_on_grid(const std::vector<double>& grid) const {
  std::vector<std::size_t> idx;
  idx.reserve(grid.size());
  std::size_t cursor = 0;
  for (double t : grid) {
    while (cursor < samples.size() && samples[cursor].time.t < t) ++cursor;
    if (cursor == samples.size() || samples[cursor].time.t != t)
      throw ArgumentError("trajectory has no sample at grid time " + std::to_string(t));
    while (cursor + 1 < samples.size() && samples[cursor + 1].time.t == t) ++cursor;
    idx.push_back(cursor);
  }
  return idx;
}

std::vector<Vector> HybridTrajectory::states_on_grid(const std::vector<double>& grid) const {
  std::vector<Vector> out;
  out.reserve(grid.size());
  for (auto i : indices_on_grid(grid)) out.push_back(samples[i].state);
  return out;
}

std::string check_time_domain(const HybridTrajectory& traj) {
  std::ostringstream err;
  std::size_t jumps_seen = 0;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const auto& a = traj.samples[i - 1];
    const auto& b = traj.samples[i];
    if (b.time < a.time) {
      err << "sample " << i << " goes backwards in hybrid time";
      return err.str();
    }
    if (b.time.j == a.time.j) {
      if (b.mode != a.mode) {
        err << "mode changes without a jump at sample " << i;
        return err.str();
      }
      if (b.time.t == a.time.t) {
        err << "duplicate hybrid time at sample " << i;
        return err.str();
      }
    } else {
      if (b.time.j != a.time.j + 1) {
        err << "jump counter skips at sample " << i;
        return err.str();
      }
      if (b.time.t != a.time.t) {
        err << "time advances across the jump at sample " << i;
        return err.str();
      }
      ++jumps_seen;
    }
  }
  if (jumps_seen != traj.jumps.size()) {
    err << "jump records (" << traj.jumps.size() << ") disagree with samples (" << jumps_seen << ")";
    return err.str();
  }
  return {};
}

}  // namespace hds
