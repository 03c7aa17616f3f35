#pragma once

#include "hds/core/trajectory.hpp"
#include "hds/estimation/filter.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace hds::harness {

using Interval = std::pair<double, double>;

/// Per-state root-mean-square error over the samples whose time lies in any
/// of `windows` (all samples when `windows` is empty). Timestamps of the two
/// series must agree; an empty selection is an argument error.
Vector rmse(const std::vector<double>& times, const std::vector<Vector>& estimates,
            const std::vector<Vector>& truth, const std::vector<Interval>& windows = {});

/// [t - w, t + w] around each instant, clipped to [0, horizon].
std::vector<Interval> near_switch_windows(const std::vector<double>& instants, double w,
                                          double horizon);

struct FilterRmse {
  std::string filter;
  Vector overall;
  Vector near_switch;  // empty when there are no switching instants
};

struct RmseReport {
  std::vector<FilterRmse> filters;
  std::vector<double> switching_instants;
  std::vector<std::pair<std::string, std::string>> config_echo;
  double runtime_seconds = 0.0;  // printed, never written to files
};

inline const std::array<std::string, 4> kInverterStateNames{"i_d", "i_q", "v_d", "v_q"};

/// Rows `filter,state,window,rmse` preceded by `#` lines with the config echo,
/// the switching instants and the aligned table.
std::string report_csv(const RmseReport& report);

/// Aligned text table: one row per filter and window, one column per state.
std::string report_table(const RmseReport& report);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Comma-separated text; `#` lines are skipped.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// `t, j, mode, <state names>` for every sample of the hybrid arc.
std::string trajectory_csv(const HybridTrajectory& traj, const std::vector<std::string>& state_names);

/// Grid rows: truth `t, j, mode, i_d, i_q, v_d, v_q` then the filter's
/// `ihat_d, ihat_q, vhat_d, vhat_q, p_trace`.
std::string estimate_csv(const std::vector<double>& grid, const HybridTrajectory& truth,
                         const std::vector<Vector>& truth_on_grid, const estimation::FilterResult& result);

}  // namespace hds::harness
