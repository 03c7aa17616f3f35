// Acceptance checks. Prints one PASS/FAIL line per criterion (details indented
// below it) and exits non-zero when any criterion fails.

#include "hds/core/event.hpp"
#include "hds/core/mld.hpp"
#include "hds/core/pwa.hpp"
#include "hds/core/random.hpp"
#include "hds/core/simulate.hpp"
#include "hds/core/switched.hpp"
#include "hds/estimation/ekf.hpp"
#include "hds/estimation/filter.hpp"
#include "hds/harness/cli.hpp"
#include "hds/harness/experiment.hpp"
#include "hds/power/inverter.hpp"
#include "hds/power/scenario.hpp"
#include "hds/power/smib.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace hds;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + buf);
    pass = pass && ok;
  }
  void note(const std::string& s) { details.push_back("     " + s); }
};

int g_failed = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o.pass = false;
    o.details.push_back(std::string("exception: ") + e.what());
  }
  std::printf("%s %s\n", o.pass ? "PASS" : "FAIL", name.c_str());
  for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
  if (!o.pass) ++g_failed;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

SimulationOptions opts(double horizon, double dt) {
  SimulationOptions o;
  o.horizon = horizon;
  o.dt = dt;
  return o;
}

// ---------------------------------------------------------------------------

Outcome headline() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto cmp = harness::compare_filters(harness::default_config());
  const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Vector& h = cmp.report.filters.at(0).overall;
  const Vector& c = cmp.report.filters.at(1).overall;
  const char* names[] = {"i_d", "i_q", "v_d", "v_q"};
  for (int i : {2, 3}) {
    o.require(h[i] <= 5e-3, "hybrid %s RMSE %.3e <= 5e-3", names[i], h[i]);
    o.require(c[i] >= 0.05, "continuous %s RMSE %.3e >= 0.05", names[i], c[i]);
    o.require(c[i] >= 20.0 * h[i], "%s ratio continuous/hybrid %.1fx >= 20x", names[i], c[i] / h[i]);
  }
  for (int i : {0, 1}) {
    const double ratio = std::max(h[i], c[i]) / std::min(h[i], c[i]);
    o.require(ratio <= 2.0, "%s RMSE hybrid %.3e vs continuous %.3e, spread %.1fx <= 2x", names[i], h[i], c[i], ratio);
  }
  o.require(runtime <= 10.0, "runtime %.3f s <= 10 s (truth + both filters)", runtime);
  return o;
}

Outcome linear_oracle() {
  Outcome o;
  const double dt = 1e-2;
  const std::size_t N = 1000;
  Matrix A(2, 2);
  A << 0.0, 1.0, -2.0, -0.4;
  const Matrix F = (A * dt).exp();
  const Matrix H = (Matrix(1, 2) << 1.0, 0.0).finished();
  const Matrix Q = (Matrix(2, 2) << 1e-4, 2e-5, 2e-5, 3e-4).finished();
  const Matrix R = 4e-3 * Matrix::Identity(1, 1);

  Rng rng(2024);
  Vector x = Eigen::Vector2d(1.0, -0.5);
  std::vector<estimation::Measurement> zs;
  for (std::size_t k = 0; k <= N; ++k) {
    zs.push_back({static_cast<double>(k) * dt, H * x + 0.063 * rng.gaussian_vector(1)});
    x = F * x + 0.01 * rng.gaussian_vector(2);
  }
  const estimation::GaussianBelief b0{Vector::Zero(2), Matrix::Identity(2, 2)};
  estimation::FilterOptions fo;
  fo.horizon = static_cast<double>(N) * dt;
  fo.dt = dt;
  const auto res = estimation::run_ekf(
      estimation::ContinuousProcess{[A](const Vector& v, double) { return (A * v).eval(); }}, b0,
      estimation::NoiseModel{Q, R, H, 0.0}, zs, fo);

  Vector m = b0.mean;
  Matrix P = b0.covariance;
  double worst_mean = 0.0, worst_cov = 0.0;
  for (std::size_t k = 1; k <= N; ++k) {
    m = F * m;
    P = F * P * F.transpose() + Q;
    const Matrix S = H * P * H.transpose() + R;
    const Matrix K = P * H.transpose() * S.inverse();
    m += K * (zs[k].z - H * m);
    P = (Matrix::Identity(2, 2) - K * H) * P;
    worst_mean = std::max(worst_mean, max_abs(res.beliefs[k].mean - m));
    worst_cov = std::max(worst_cov, max_abs(res.beliefs[k].covariance - P));
  }
  o.require(res.beliefs.size() == N + 1, "%zu filter steps", res.beliefs.size() - 1);
  o.require(worst_mean <= 1e-6, "max mean difference %.3e <= 1e-6", worst_mean);
  o.require(worst_cov <= 1e-6, "max covariance difference %.3e <= 1e-6", worst_cov);
  return o;
}

/// GFM flow as x' = A x + b, assembled from the model equations.
Matrix gfm_augmented(const power::InverterParams& p) {
  using namespace power;
  const double wl = p.omega * p.l_pu;
  Matrix A = Matrix::Zero(5, 5);
  A(kId, kId) = -1.0 / p.tau_i;
  A(kId, kVd) = -1.0 / (p.r_pu * p.tau_i);
  A(kId, 4) = p.v_ref / (p.r_pu * p.tau_i);
  A(kIq, kIq) = -1.0 / p.tau_i;
  A(kIq, kVq) = -1.0 / (p.r_pu * p.tau_i);
  A(kVd, kId) = -p.r_pu / p.l_pu;
  A(kVd, kIq) = wl / p.l_pu;
  A(kVq, kId) = -wl / p.l_pu;
  A(kVq, kIq) = -p.r_pu / p.l_pu;
  return A;
}

/// GFL flow with a constant grid voltage as x' = A x + b.
Matrix gfl_augmented(const power::InverterParams& p, double v_grid) {
  using namespace power;
  const double wl = p.omega * p.l_pu;
  Matrix A = Matrix::Zero(5, 5);
  A(kId, kVd) = 1.0 / p.l_pu;
  A(kId, kId) = -p.r_pu / p.l_pu;
  A(kId, kIq) = wl / p.l_pu;
  A(kIq, kVq) = 1.0 / p.l_pu;
  A(kIq, kIq) = -p.r_pu / p.l_pu;
  A(kIq, kId) = -wl / p.l_pu;
  A(kVd, kVd) = -1.0 / p.tau_v;
  A(kVd, 4) = v_grid / p.tau_v;
  A(kVq, kVq) = -1.0 / p.tau_v;
  return A;
}

struct GfmComparison {
  double abs_err = 0.0;
  double scale = 0.0;
};

GfmComparison gfm_compare(const Vector& x0) {
  const power::InverterParams p;
  const HybridAutomaton ha(4, {Mode{"GFM", [p](const Vector& x, double) { return power::gfm_flow(x, p); }, {}}}, {});
  const auto traj = simulate(ha, 0, x0, opts(0.2, 1e-4));
  const Matrix A = gfm_augmented(p);
  Vector xa(5);
  xa << x0, 1.0;
  GfmComparison c;
  for (const auto& s : traj.samples) {
    const Vector exact = ((A * s.time.t).exp() * xa).head(4);
    c.abs_err = std::max(c.abs_err, max_abs(s.state - exact));
    c.scale = std::max(c.scale, max_abs(exact));
  }
  return c;
}

Outcome gfm_analytic() {
  Outcome o;
  const auto c0 = gfm_compare(Eigen::Vector4d(0.0, 0.0, 1.0, 0.0));
  o.require(c0.abs_err <= 1e-8, "max |x_sim - expm(A t) x0| from [0, 0, 1, 0] over 2001 samples = %.3e <= 1e-8",
            c0.abs_err);
  // The GFM loop has an unstable pair, so a transient grows; report relative accuracy for reference.
  const Vector lambda = gfm_augmented(power::InverterParams{}).topLeftCorner(4, 4).eigenvalues().real();
  const auto c1 = gfm_compare(Eigen::Vector4d(0.05, -0.02, 0.95, 0.03));
  char buf[256];
  std::snprintf(buf, sizeof buf, "perturbed start [0.05, -0.02, 0.95, 0.03]: max Re(lambda) %.1f/s, |x| up to %.2e, "
                "relative error %.2e", lambda.maxCoeff(), c1.scale, c1.abs_err / c1.scale);
  o.note(buf);
  return o;
}

Outcome saltation_consistency() {
  Outcome o;
  using namespace power;
  InverterParams p;
  p.omega = 1.0;
  const double v_grid = 0.5;
  const double v_switch = 0.8;  // guard v_d <= 0.8, a state-dependent surface
  const double T = 2.2e-3;      // total propagation time through the jump
  const Matrix A1 = gfl_augmented(p, v_grid);
  const Matrix A2 = gfm_augmented(p);
  const auto aug = [](const Vector& x) {
    Vector xa(5);
    xa << x, 1.0;
    return xa;
  };
  // v_d decouples under GFL: v_d(t) = v_grid + (v_d0 - v_grid) exp(-t / tau_v).
  const auto crossing = [&](const Vector& x) { return p.tau_v * std::log((x[kVd] - v_grid) / (v_switch - v_grid)); };
  const auto clamp = current_clamp_reset(p);
  const auto through = [&](const Vector& x) -> Vector {
    const double ts = crossing(x);
    const Vector pre = ((A1 * ts).exp() * aug(x)).head(4);
    return ((A2 * (T - ts)).exp() * aug(clamp(pre))).head(4);
  };

  const Vector x0 = Eigen::Vector4d(2.0, 0.1, 0.85, 0.02);
  const double ts = crossing(x0);
  const Vector x_minus = ((A1 * ts).exp() * aug(x0)).head(4);
  o.note("nominal crossing at t = " + std::to_string(ts * 1e3) + " ms, i_d = " + std::to_string(x_minus[kId]) +
         " (clamp active)");

  const VectorField f_pre = [&](const Vector& x, double) { return gfl_flow(x, v_grid, p); };
  const VectorField f_post = [&](const Vector& x, double) { return gfm_flow(x, p); };
  const Vector grad = Eigen::Vector4d(0.0, 0.0, -1.0, 0.0);
  const auto xi = estimation::saltation_matrix(clamp, f_pre, f_post, grad, x_minus, ts, "GFL->GFM");
  const Matrix lin = (A2 * (T - ts)).exp().topLeftCorner(4, 4) * xi.matrix * (A1 * ts).exp().topLeftCorner(4, 4);

  Vector dir = Eigen::Vector4d(0.3, -0.5, 0.6, 0.55);
  dir.normalize();
  std::vector<double> ld, le;
  const Vector base = through(x0);
  for (double d = 1e-2; d >= 1e-5 * (1.0 - 1e-12); d /= 2.0) {
    const double err = (through(x0 + d * dir) - base - lin * (d * dir)).norm();
    ld.push_back(std::log(d));
    le.push_back(std::log(err));
  }
  const double n = static_cast<double>(ld.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ld.size(); ++i) {
    sx += ld[i];
    sy += le[i];
    sxx += ld[i] * ld[i];
    sxy += ld[i] * le[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  o.note("errors at delta = 1e-2 .. " + std::to_string(std::exp(ld.back())) + ": " +
         std::to_string(std::exp(le.front())) + " .. " + std::to_string(std::exp(le.back())));
  o.require(std::abs(slope - 2.0) <= 0.2, "log-log slope %.3f over %zu halvings, target 2 +/- 0.2", slope, ld.size());

  // Without the jump-time correction (Xi = DR) the error is first order.
  const Matrix naive = (A2 * (T - ts)).exp().topLeftCorner(4, 4) * clamp.jacobian(x_minus) *
                       (A1 * ts).exp().topLeftCorner(4, 4);
  const double e_naive = (through(x0 + 1e-5 * dir) - base - naive * (1e-5 * dir)).norm();
  o.note("reference: reset Jacobian alone leaves error " + std::to_string(e_naive) + " at delta = 1e-5");

  // Time-driven guard: the saltation matrix is the reset Jacobian itself.
  const auto ha = inverter_automaton(InverterParams{}, VoltageProfile::reference_dip());
  const auto& edge = ha.edge(0);
  const Vector x_jump = Eigen::Vector4d(2.0, -1.5, 0.8, 0.1);
  const auto xi_time = estimation::saltation_matrix(edge, ha.mode(0).flow, ha.mode(1).flow, x_jump, 0.054);
  const Matrix dr = edge.reset.jacobian(x_jump);
  o.require(xi_time.matrix == dr, "state-independent guard: Xi == D_x R bitwise (%s)",
            xi_time.matrix == dr ? "identical" : "differs");
  return o;
}

Outcome smib_identity_switch() {
  Outcome o;
  power::SmibParams p;
  p.p_min = 1.9;  // keep line 2 in service after the trip
  p.p_max = 2.0;
  const Vector x0 = Eigen::Vector3d(0.6, 0.0, 1.0);
  const auto base = simulate(power::smib_system(p), x0, opts(2.0, 1e-3));
  p.forced_trip = 0.1;
  const auto sw = simulate(power::smib_system(p), x0, opts(2.0, 1e-3));
  o.require(base.jump_count() == 0 && sw.jump_count() == 1, "jumps: unswitched %zu, switched %zu (expected 0, 1)",
            base.jump_count(), sw.jump_count());
  const auto grid = time_grid(0.0, 2.0, 1e-3);
  const auto a = base.states_on_grid(grid);
  const auto b = sw.states_on_grid(grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) worst = std::max(worst, max_abs((a[k] - b[k]).head(2)));
  o.require(worst <= 1e-9, "max-norm difference of (delta, omega) over 2 s: %.3e <= 1e-9", worst);
  return o;
}

Outcome event_localization() {
  Outcome o;
  const auto ramp = [](double t) { return 1.0 - 25.0 * (t - 0.04); };
  const auto t = locate_event([&](double t) { return 0.8 - ramp(t); }, 0.04, 0.06);
  const double e_ramp = t ? std::abs(*t - 0.048) : 1.0;
  o.require(e_ramp <= 1e-9, "ramp crossing: |t - 0.048| = %.3e <= 1e-9", e_ramp);

  const auto ha = power::inverter_automaton(power::InverterParams{}, power::VoltageProfile::reference_dip());
  const auto traj = simulate(ha, power::kGfl, Eigen::Vector4d(0, 0, 1, 0), opts(0.2, 1e-4));
  const bool two = traj.jump_count() == 2;
  o.require(two, "reference scenario jumps: %zu (expected 2)", traj.jump_count());
  if (two) {
    const double e1 = std::abs(traj.jumps[0].t - 0.054);
    const double e2 = std::abs(traj.jumps[1].t - 0.128);
    o.require(e1 <= 1e-9, "GFL->GFM at %.12f, error %.3e <= 1e-9", traj.jumps[0].t, e1);
    o.require(e2 <= 1e-9, "GFM->GFL at %.12f, error %.3e <= 1e-9", traj.jumps[1].t, e2);
  }
  // State-driven guard on a smooth flow: x' = cos(t), guard x >= 0.5 hit at asin(0.5).
  FlowJumpSystem sys;
  sys.dim = 1;
  sys.flow_map = [](const Vector&, double t) { return Vector::Constant(1, std::cos(t)); };
  sys.jump_margin = [](const Vector& x, double) { return x[0] - 0.5; };
  sys.jump_map = Reset{[](const Vector& x) { return (x * 0.0).eval(); }, {}};
  const auto sj = simulate(sys, Vector::Zero(1), opts(1.0, 1e-2));
  const double e3 = sj.jump_count() ? std::abs(sj.jumps[0].t - std::asin(0.5)) : 1.0;
  o.require(e3 <= 1e-9, "state guard on x' = cos t: |t - asin(0.5)| = %.3e <= 1e-9", e3);
  return o;
}

Outcome structural_invariants() {
  Outcome o;
  Rng rng(77);
  const auto profile = [&] {
    const double t1 = rng.uniform(0.005, 0.02), t2 = t1 + rng.uniform(0.001, 0.01);
    const double t3 = t2 + rng.uniform(0.0, 0.02), t4 = t3 + rng.uniform(0.001, 0.01);
    const double floor = rng.uniform(0.3, 1.0);
    return power::VoltageProfile({{t1, 1.0}, {t2, floor}, {t3, floor}, {t4, rng.uniform(0.5, 1.1)}});
  };
  const int cases = 100;

  // Hybrid-time monotonicity on random inverter runs.
  int bad = 0;
  for (int c = 0; c < cases; ++c) {
    const auto ha = power::inverter_automaton(power::InverterParams{}, profile());
    const Vector x0 = Eigen::Vector4d(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0, 1.2), rng.uniform(-0.2, 0.2));
    if (!check_time_domain(simulate(ha, power::kGfl, x0, opts(0.06, 1e-4))).empty()) ++bad;
  }
  o.require(bad == 0, "hybrid-time monotonicity: %d/%d violations", bad, cases);

  // Flow containment and jump legality on random SMIB runs.
  bad = 0;
  int jumps = 0;
  for (int c = 0; c < cases;) {
    power::SmibParams p;
    p.i_max = rng.uniform(0.6, 1.6);
    p.p_min = rng.uniform(0.5, 0.8);
    p.p_max = p.p_min + rng.uniform(0.05, 0.3);
    const auto sys = power::smib_system(p);
    const Vector x0 = Eigen::Vector3d(rng.uniform(0.0, 0.6), rng.uniform(-1.0, 1.0), 1.0);
    if (sys.in_jump_set(x0, 0.0)) continue;
    ++c;
    const auto traj = simulate(sys, x0, opts(1.0, 1e-3));
    jumps += static_cast<int>(traj.jump_count());
    for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
      const auto& s = traj.samples[i];
      const double m = sys.jump_margin(s.state, s.time.t);
      const bool pre_jump = traj.samples[i + 1].time.j != s.time.j;
      if ((pre_jump && m < -1e-6) || (!pre_jump && m > 1e-6)) {
        ++bad;
        break;
      }
    }
  }
  o.require(bad == 0, "flow containment / jump legality: %d/%d violations (%d jumps exercised)", bad, cases, jumps);

  // Covariance symmetry and PSD along random filter runs.
  bad = 0;
  for (int c = 0; c < cases; ++c) {
    auto s = power::reference_scenario();
    s.horizon = 0.03;
    s.profile = profile();
    s.seed = rng.next_u64();
    s.noise.Q *= std::pow(10.0, rng.uniform(-3.0, 1.0));
    s.noise.R *= std::pow(10.0, rng.uniform(-2.0, 2.0));
    const auto d = power::generate_truth_and_measurements(s);
    const auto ha = power::inverter_automaton(s.params, s.profile);
    estimation::FilterOptions fo;
    fo.horizon = s.horizon;
    fo.dt = s.dt;
    const estimation::GaussianBelief b0{s.x0, s.p0};
    const auto r = c % 2 == 0
                       ? estimation::run_ekf(estimation::HybridProcess{&ha, power::kGfl}, b0, s.noise, d.measurements, fo)
                       : estimation::run_ekf(estimation::ContinuousProcess{power::blended_field(s.params, s.profile)}, b0,
                                             s.noise, d.measurements, fo);
    for (const auto& b : r.beliefs) {
      if (!b.check_invariants().empty()) {
        ++bad;
        break;
      }
    }
  }
  o.require(bad == 0, "covariance symmetric (1e-12) and PSD (-1e-10): %d/%d runs violated", bad, cases);

  // Lift equivalence.
  double worst_lift = 0.0;
  for (int c = 0; c < cases; ++c) {
    SwitchedSystem sw;
    sw.dim = 1 + rng.next_u64() % 3;
    const std::size_t modes = 1 + rng.next_u64() % 5;
    for (std::size_t m = 0; m < modes; ++m) {
      Matrix A(sw.dim, sw.dim);
      for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = rng.uniform(-3.0, 3.0);
      sw.subsystems.push_back([A](const Vector& x, double) { return (A * x).eval(); });
    }
    sw.initial_mode = rng.next_u64() % modes;
    double t = 0.0;
    for (std::size_t k = 0, n = rng.next_u64() % 11; k < n; ++k) {
      t += rng.uniform(0.001, 0.05);
      sw.switches.push_back({t, static_cast<std::size_t>(rng.next_u64() % modes)});
    }
    Vector z0(sw.dim);
    for (Eigen::Index i = 0; i < z0.size(); ++i) z0[i] = rng.uniform(-1.0, 1.0);
    const auto lifted = simulate(lift_switched(sw), lift_state(sw, z0), opts(0.6, 1e-3));
    const auto direct = simulate_switched(sw, z0, opts(0.6, 1e-3));
    if (lifted.samples.size() != direct.samples.size()) {
      worst_lift = INFINITY;
      continue;
    }
    for (std::size_t k = 0; k < direct.samples.size(); ++k) {
      worst_lift = std::max(worst_lift, std::abs(lifted.samples[k].time.t - direct.samples[k].time.t));
      worst_lift = std::max(worst_lift, max_abs(lifted.samples[k].state.head(sw.dim) - direct.samples[k].state));
    }
  }
  o.require(worst_lift <= 1e-12, "lift vs direct switched simulation: max difference %.3e <= 1e-12 over %d systems",
            worst_lift, cases);

  // PWA coverage on random grid partitions.
  bad = 0;
  for (int c = 0; c < cases; ++c) {
    std::vector<double> xs{0.0}, ys{0.0};
    const int nx = 1 + static_cast<int>(rng.next_u64() % 4), ny = 1 + static_cast<int>(rng.next_u64() % 4);
    for (int i = 1; i < nx; ++i) xs.push_back(xs.back() + rng.uniform(0.05, 1.0 / nx));
    for (int i = 1; i < ny; ++i) ys.push_back(ys.back() + rng.uniform(0.05, 1.0 / ny));
    xs.push_back(1.0);
    ys.push_back(1.0);
    std::vector<PwaRegion> regions;
    std::vector<AffineDynamics> dyn;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
        Matrix P(4, 2);
        P << 1, 0, -1, 0, 0, 1, 0, -1;
        regions.push_back({P, Vector(Eigen::Vector4d(-xs[i + 1], xs[i], -ys[j + 1], ys[j]))});
        dyn.push_back({Matrix::Identity(2, 2), Matrix::Zero(2, 1), Vector::Zero(2)});
      }
    const PwaSystem sys(regions, dyn);
    const std::size_t r = rng.next_u64() % sys.size();
    const auto& q = sys.region(r).q;
    const Vector x = Eigen::Vector2d(rng.uniform(q[1] + 1e-6, -q[0] - 1e-6), rng.uniform(q[3] + 1e-6, -q[2] - 1e-6));
    const auto hits = sys.regions_containing(x);
    if (hits.size() != 1 || hits[0] != r) ++bad;
  }
  o.require(bad == 0, "PWA interior points in exactly one region: %d/%d violations", bad, cases);

  // MLD feasibility: constraints with slack are accepted, a violated row is named.
  bad = 0;
  for (int c = 0; c < cases; ++c) {
    const Eigen::Index nx = 2, nu = 1, nd = 2, nz = 1, ny = 1, nc = 3;
    const auto rnd = [&](Eigen::Index r, Eigen::Index cc) {
      Matrix m(r, cc);
      for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-1.0, 1.0);
      return m;
    };
    MldSystem s{rnd(nx, nx), rnd(nx, nu), rnd(nx, nd), rnd(nx, nz), rnd(ny, nx), rnd(ny, nu), rnd(ny, nd),
                rnd(ny, nz), rnd(nc, nu), rnd(nc, nd), rnd(nc, nz), rnd(nc, nx), Vector::Zero(nc)};
    const Vector x = rnd(nx, 1), u = rnd(nu, 1), z = rnd(nz, 1);
    Vector d(nd);
    for (Eigen::Index i = 0; i < nd; ++i) d[i] = static_cast<double>(rng.next_u64() % 2);
    const Vector lhs = s.E2 * d + s.E3 * z - s.E1 * u - s.E4 * x;
    s.E5 = lhs + Vector::Constant(nc, 1e-3);
    try {
      const auto step = mld_step(s, x, u, d, z);
      if (max_abs(step.x_next - (s.A * x + s.B1 * u + s.B2 * d + s.B3 * z)) > 1e-12) ++bad;
    } catch (const std::exception&) {
      ++bad;
      continue;
    }
    const auto row = static_cast<Eigen::Index>(rng.next_u64() % nc);
    s.E5[row] = lhs[row] - 1e-3;
    try {
      mld_step(s, x, u, d, z);
      ++bad;
    } catch (const InfeasibleError& e) {
      if (e.rows() != std::vector<std::size_t>{static_cast<std::size_t>(row)}) ++bad;
    }
  }
  o.require(bad == 0, "MLD feasibility check: %d/%d violations", bad, cases);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  Outcome o;
  const auto root = fs::temp_directory_path() / "hds_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::vector<fs::path>> runs;
  for (const char* sub : {"a", "b"}) {
    const std::string out = (root / sub).string();
    const char* argv[] = {"hds", "compare", "--seed", "42", "--out", out.c_str()};
    std::ostringstream so, se;
    const int code = harness::cli_main(6, argv, so, se);
    o.require(code == 0, "compare --seed 42 --out %s exit code %d", sub, code);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(root / sub)) files.push_back(e.path().filename());
    std::sort(files.begin(), files.end());
    runs.push_back(files);
  }
  o.require(runs[0] == runs[1] && runs[0].size() == 3, "both runs wrote the same %zu files", runs[0].size());
  for (const auto& f : runs[0]) {
    const bool same = slurp(root / "a" / f) == slurp(root / "b" / f);
    o.require(same, "%s byte-identical", f.string().c_str());
  }
  fs::remove_all(root);
  return o;
}

}  // namespace

int main() {
  report("headline: hybrid vs continuous EKF RMSE on the reference dip", headline);
  report("linear oracle: EKF equals closed-form discrete Kalman filter over 1000 steps", linear_oracle);
  report("GFM analytic: simulation matches the matrix exponential over 0.2 s", gfm_analytic);
  report("saltation: quadratic first-order error and Xi = DR for time-driven guards", saltation_consistency);
  report("SMIB identical-line switch leaves the trajectory unchanged", smib_identity_switch);
  report("event localization within 1e-9 s", event_localization);
  report("structural invariants on randomized cases", structural_invariants);
  report("compare with seed 42 is byte-identical across runs", determinism);
  std::printf("%d criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
