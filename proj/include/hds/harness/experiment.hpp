#pragma once

#include "hds/core/safety.hpp"
#include "hds/harness/config.hpp"
#include "hds/harness/report.hpp"
#include "hds/power/scenario.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace hds::harness {

struct Comparison {
  power::ScenarioData data;
  std::optional<estimation::FilterResult> hybrid;
  std::optional<estimation::FilterResult> continuous;
  RmseReport report;
};

/// One truth/measurement stream, then the selected filters on it (in
/// parallel when both run), with overall and near-switch RMSE per filter.
Comparison compare_filters(const ExperimentConfig& config);

/// compare_filters plus `<filter>.csv` per filter and `report.csv` in
/// config.out_dir. Returns the written paths in order.
std::vector<std::filesystem::path> run_comparison(const ExperimentConfig& config, RmseReport* report = nullptr);

/// Model trajectory from the configured initial state into `trajectory.csv`.
std::filesystem::path run_simulation(const ExperimentConfig& config);

/// Samples (delta, omega) uniformly in the verify box on line 1 and searches
/// for a trajectory that trips line 1 (reaches q2).
SafetyVerdict smib_safety(const ExperimentConfig& config);

/// smib_safety plus `verify.txt` and, when a witness exists, `witness.csv`.
std::vector<std::filesystem::path> run_verify(const ExperimentConfig& config, SafetyVerdict* verdict = nullptr);

}  // namespace hds::harness
