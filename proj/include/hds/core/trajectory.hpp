#pragma once

#include "hds/core/types.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hds {

enum class Termination { HorizonReached, MaxJumpsReached, LeftFlowSet, NumericalFailure };

std::string_view to_string(Termination t);

struct TrajectorySample {
  HybridTime time;
  std::size_t mode = 0;
  Vector state;
};

struct JumpRecord {
  double t = 0.0;
  std::size_t j_after = 0;  // jump count after the jump
  std::size_t from = 0;
  std::size_t to = 0;
  std::string edge;
};

/// Hybrid arc sampled on its time domain. A jump appears as two samples with
/// the same t and consecutive j.
struct HybridTrajectory {
  std::vector<std::string> mode_names;
  std::vector<TrajectorySample> samples;
  std::vector<JumpRecord> jumps;
  Termination termination = Termination::HorizonReached;
  std::string message;

  std::size_t jump_count() const noexcept { return jumps.size(); }
  const TrajectorySample& back() const { return samples.back(); }
  std::string_view mode_name(std::size_t q) const;

  /// Last sample whose time equals `t` exactly (post-jump value at a grid
  /// point hosting a jump), or nullopt.
  std::optional<std::size_t> last_index_at(double t) const;

  /// States at each grid time, one per grid point. Requires every grid time
  /// to be present exactly, as produced by `simulate` on that grid.
  std::vector<Vector> states_on_grid(const std::vector<double>& grid) const;
  std::vector<std::size_t> indices_on_grid(const std::vector<double>& grid) const;
};

/// Checks hybrid-time monotonicity and jump bookkeeping; returns an empty
/// string on success, otherwise a description of the first violation.
std::string check_time_domain(const HybridTrajectory& traj);

}  // namespace hds
