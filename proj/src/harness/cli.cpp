#include "hds/harness/cli.hpp"

#include "hds/harness/experiment.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace hds::harness {

namespace {

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string filter;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "Experiment config file (key = value)");
  cmd->add_option("--seed", args.seed, "Random seed (overrides config and HDS_SEED)");
  cmd->add_option("--out", args.out, "Output directory (overrides output.dir)");
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("HDS_SEED");
  if (!raw || !*raw) return std::nullopt;
  try {
    return config_from_entries({{"seed", raw}}).seed;
  } catch (const ConfigError&) {
    throw ConfigError(std::string("HDS_SEED: expected a non-negative integer, got '") + raw + "'");
  }
}

ExperimentConfig resolve(const CommonArgs& args) {
  const auto env = env_seed();
  ExperimentConfig c = args.config.empty() ? config_from_entries({}, env) : load_config(args.config, env);
  if (args.seed) c.seed = *args.seed;
  if (!args.out.empty()) c.out_dir = args.out;
  return c;
}

void list_written(std::ostream& out, const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) out << "wrote " << p.string() << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid dynamical systems toolkit: simulation, hybrid EKF comparison, safety sampling",
               "hds"};
  app.require_subcommand(1);
  CommonArgs args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate the configured model to trajectory.csv");
  auto* estimate_cmd = app.add_subcommand("estimate", "Run one filter on the inverter scenario");
  auto* compare_cmd = app.add_subcommand("compare", "Run the hybrid and continuous filters and report RMSE");
  auto* verify_cmd = app.add_subcommand("verify", "Sampling safety check of the SMIB line trip");
  for (auto* cmd : {simulate_cmd, estimate_cmd, compare_cmd, verify_cmd}) add_common(cmd, args);
  estimate_cmd->add_option("--filter", args.filter, "hybrid or continuous (default: config filter, else hybrid)")
      ->check(CLI::IsMember({"hybrid", "continuous"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }

  try {
    ExperimentConfig config = resolve(args);
    if (simulate_cmd->parsed()) {
      list_written(out, {run_simulation(config)});
    } else if (estimate_cmd->parsed()) {
      if (!args.filter.empty())
        config.filter = args.filter == "hybrid" ? FilterChoice::Hybrid : FilterChoice::Continuous;
      else if (config.filter == FilterChoice::Both)
        config.filter = FilterChoice::Hybrid;
      if (config.model != ModelKind::Inverter) throw ConfigError("estimate needs model = inverter");
      RmseReport report;
      list_written(out, run_comparison(config, &report));
      out << report_table(report);
    } else if (compare_cmd->parsed()) {
      if (config.model != ModelKind::Inverter) throw ConfigError("compare needs model = inverter");
      const auto start = std::chrono::steady_clock::now();
      RmseReport report;
      const auto written = run_comparison(config, &report);
      report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      list_written(out, written);
      out << report_table(report);
      char line[64];
      std::snprintf(line, sizeof line, "runtime %.3f s\n", report.runtime_seconds);
      out << line;
    } else if (verify_cmd->parsed()) {
      if (config.model != ModelKind::Smib) throw ConfigError("verify needs model = smib");
      SafetyVerdict verdict;
      list_written(out, run_verify(config, &verdict));
      out << "samples checked: " << verdict.samples_checked << '\n';
      if (verdict.unsafe())
        out << "unsafe: line 1 trips at t = " << format_double(verdict.counterexample->time.t) << '\n';
      else
        out << "no counterexample found\n";
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace hds::harness
