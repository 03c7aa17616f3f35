#include "hds/harness/experiment.hpp"

#include "hds/core/simulate.hpp"
#include "hds/power/smib.hpp"

#include <future>
#include <sstream>

namespace hds::harness {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

estimation::FilterResult run_filter(const ExperimentConfig& config, const power::ScenarioData& data,
                                    bool hybrid) {
  const auto& s = config.inverter;
  estimation::FilterOptions fo;
  fo.horizon = s.horizon;
  fo.dt = s.dt;
  const estimation::GaussianBelief b0{s.x0, s.p0};
  if (hybrid) {
    const auto ha = power::inverter_automaton(s.params, s.profile);
    return estimation::run_ekf(estimation::HybridProcess{&ha, power::kGfl}, b0, s.noise,
                               data.measurements, fo);
  }
  return estimation::run_ekf(estimation::ContinuousProcess{power::blended_field(s.params, s.profile)},
                             b0, s.noise, data.measurements, fo);
}

FilterRmse score(const std::string& name, const estimation::FilterResult& r,
                 const power::ScenarioData& data, const std::vector<Interval>& windows) {
  std::vector<Vector> means;
  means.reserve(r.beliefs.size());
  for (const auto& b : r.beliefs) means.push_back(b.mean);
  FilterRmse out{name, rmse(data.grid, means, data.truth_on_grid), Vector()};
  if (!windows.empty()) out.near_switch = rmse(data.grid, means, data.truth_on_grid, windows);
  return out;
}

HybridTrajectory smib_trajectory(const ExperimentConfig& config) {
  const auto sys = power::smib_system(config.smib);
  Vector x0(3);
  x0 << config.smib_x0[0], config.smib_x0[1], 1.0;
  SimulationOptions opt;
  opt.horizon = config.smib_horizon;
  opt.dt = config.smib_dt;
  return simulate(sys, x0, opt);
}

SimulationOptions smib_options(const ExperimentConfig& config) {
  SimulationOptions opt;
  opt.horizon = config.smib_horizon;
  opt.dt = config.smib_dt;
  return opt;
}

}  // namespace

Comparison compare_filters(const ExperimentConfig& config) {
  if (config.model != ModelKind::Inverter) throw ArgumentError("filter comparison needs model = inverter");
  config.validate();
  Comparison c;
  c.data = power::generate_truth_and_measurements(config.inverter);

  const bool want_h = config.filter != FilterChoice::Continuous;
  const bool want_c = config.filter != FilterChoice::Hybrid;
  std::future<estimation::FilterResult> hybrid_job;
  if (want_h && want_c)
    hybrid_job = std::async(std::launch::async, [&] { return run_filter(config, c.data, true); });
  if (want_c) c.continuous = run_filter(config, c.data, false);
  if (want_h) c.hybrid = hybrid_job.valid() ? hybrid_job.get() : run_filter(config, c.data, true);

  for (const auto& j : c.data.truth.jumps) c.report.switching_instants.push_back(j.t);
  const auto windows =
      near_switch_windows(c.report.switching_instants, config.near_switch_window, config.inverter.horizon);
  if (c.hybrid) c.report.filters.push_back(score("hybrid", *c.hybrid, c.data, windows));
  if (c.continuous) c.report.filters.push_back(score("continuous", *c.continuous, c.data, windows));
  for (auto& kv : config.echo())
    if (kv.first != "output.dir") c.report.config_echo.push_back(std::move(kv));  // location, not content
  return c;
}

std::vector<fs::path> run_comparison(const ExperimentConfig& config, RmseReport* report) {
  const auto c = compare_filters(config);
  ensure_dir(config.out_dir);
  std::vector<fs::path> written;
  const auto emit = [&](const fs::path& name, const std::string& text) {
    const auto path = config.out_dir / name;
    write_text_file(path, text);
    written.push_back(path);
  };
  if (c.hybrid) emit("hybrid.csv", estimate_csv(c.data.grid, c.data.truth, c.data.truth_on_grid, *c.hybrid));
  if (c.continuous)
    emit("continuous.csv", estimate_csv(c.data.grid, c.data.truth, c.data.truth_on_grid, *c.continuous));
  emit("report.csv", report_csv(c.report));
  if (report) *report = c.report;
  return written;
}

fs::path run_simulation(const ExperimentConfig& config) {
  config.validate();
  std::string text;
  if (config.model == ModelKind::Inverter) {
    const auto& s = config.inverter;
    const auto ha = power::inverter_automaton(s.params, s.profile);
    SimulationOptions opt;
    opt.horizon = s.horizon;
    opt.dt = s.dt;
    text = trajectory_csv(simulate(ha, power::kGfl, s.x0, opt), {"i_d", "i_q", "v_d", "v_q"});
  } else {
    text = trajectory_csv(smib_trajectory(config), {"delta", "omega"});
  }
  ensure_dir(config.out_dir);
  const auto path = config.out_dir / "trajectory.csv";
  write_text_file(path, text);
  return path;
}

SafetyVerdict smib_safety(const ExperimentConfig& config) {
  if (config.model != ModelKind::Smib) throw ArgumentError("verify needs model = smib");
  config.validate();
  const auto sys = power::smib_system(config.smib);
  Vector lo(3), hi(3);
  lo << config.verify.delta_lo, config.verify.omega_lo, 1.0;
  hi << config.verify.delta_hi, config.verify.omega_hi, 1.0;
  const UnsafePredicate tripped = [](const TrajectorySample& s) { return s.mode == 1; };
  return check_safety(sys, uniform_box_sampler(lo, hi), tripped, smib_options(config),
                      config.verify.samples, config.seed);
}

std::vector<fs::path> run_verify(const ExperimentConfig& config, SafetyVerdict* verdict_out) {
  const auto verdict = smib_safety(config);
  std::ostringstream os;
  for (const auto& [k, v] : config.echo()) os << "# " << k << " = " << v << '\n';
  os << "unsafe_set = line 1 tripped (q2)\n";
  os << "samples_checked = " << verdict.samples_checked << '\n';
  os << "verdict = " << (verdict.unsafe() ? "unsafe" : "no counterexample found") << '\n';
  if (verdict.unsafe()) {
    const auto& cx = *verdict.counterexample;
    os << "witness_sample = " << cx.sample_index << '\n';
    os << "witness_initial_state = " << format_double(cx.initial_state[0]) << ", "
       << format_double(cx.initial_state[1]) << '\n';
    os << "witness_time = " << format_double(cx.time.t) << '\n';
    os << "witness_jumps = " << cx.time.j << '\n';
  }
  ensure_dir(config.out_dir);
  std::vector<fs::path> written{config.out_dir / "verify.txt"};
  write_text_file(written.back(), os.str());
  if (verdict.unsafe()) {
    written.push_back(config.out_dir / "witness.csv");
    write_text_file(written.back(), trajectory_csv(verdict.counterexample->trajectory, {"delta", "omega"}));
  }
  if (verdict_out) *verdict_out = verdict;
  return written;
}

}  // namespace hds::harness
