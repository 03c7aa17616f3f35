#pragma once

#include "hds/power/scenario.hpp"
#include "hds/power/smib.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hds::harness {

/// Raised for malformed or unknown configuration entries and unreadable
/// config files; the CLI maps it to a usage error.
class ConfigError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Flat `key = value` text. `#` starts a comment, blank lines are ignored,
/// keys may carry dotted prefixes. Duplicate keys are rejected.
std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& source = "<config>");

enum class ModelKind { Inverter, Smib };
enum class FilterChoice { Hybrid, Continuous, Both };

struct VerifySettings {
  std::size_t samples = 200;
  double delta_lo = 0.2;
  double delta_hi = 0.6;
  double omega_lo = -1.0;
  double omega_hi = 1.0;
};

struct ExperimentConfig {
  ModelKind model = ModelKind::Inverter;
  FilterChoice filter = FilterChoice::Both;
  std::uint64_t seed = 42;
  double near_switch_window = 5e-3;
  std::filesystem::path out_dir = "results";

  power::InverterScenario inverter = power::reference_scenario();

  power::SmibParams smib;
  double smib_horizon = 2.0;
  double smib_dt = 1e-3;
  Vector smib_x0;  // [delta, omega]
  VerifySettings verify;

  double horizon() const { return model == ModelKind::Inverter ? inverter.horizon : smib_horizon; }
  double dt() const { return model == ModelKind::Inverter ? inverter.dt : smib_dt; }

  void validate() const;
  /// Every resolved setting as sorted `key = value` lines, in the config syntax.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

ExperimentConfig default_config();

/// Applies entries on top of the defaults; unknown keys raise ConfigError.
/// `env_seed` is the lowest-priority seed source (overridden by `seed`).
ExperimentConfig config_from_entries(const std::map<std::string, std::string>& entries,
                                     std::optional<std::uint64_t> env_seed = std::nullopt);

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> env_seed = std::nullopt);

/// Full-precision text for a double (17 significant digits).
std::string format_double(double v);

std::string_view to_string(ModelKind m);
std::string_view to_string(FilterChoice f);

}  // namespace hds::harness
