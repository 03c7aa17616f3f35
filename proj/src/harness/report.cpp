#include "hds/harness/report.hpp"

#include "hds/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hds::harness {

Vector rmse(const std::vector<double>& times, const std::vector<Vector>& estimates,
            const std::vector<Vector>& truth, const std::vector<Interval>& windows) {
  if (estimates.size() != truth.size() || times.size() != truth.size())
    throw ArgumentError("rmse: series lengths differ (" + std::to_string(times.size()) + " times, " +
                        std::to_string(estimates.size()) + " estimates, " +
                        std::to_string(truth.size()) + " truth)");
  if (truth.empty()) throw ArgumentError("rmse: empty series");
  const auto n = truth.front().size();
  Vector sum = Vector::Zero(n);
  std::size_t count = 0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    if (estimates[k].size() != n || truth[k].size() != n)
      throw ArgumentError("rmse: state dimension changes at sample " + std::to_string(k));
    const double t = times[k];
    if (!windows.empty() && std::none_of(windows.begin(), windows.end(), [t](const Interval& w) {
          return t >= w.first && t <= w.second;
        }))
      continue;
    sum += (estimates[k] - truth[k]).cwiseAbs2();
    ++count;
  }
  if (count == 0) throw ArgumentError("rmse: no samples inside the requested windows");
  return (sum / static_cast<double>(count)).cwiseSqrt();
}

std::vector<Interval> near_switch_windows(const std::vector<double>& instants, double w, double horizon) {
  std::vector<Interval> out;
  for (double t : instants) out.emplace_back(std::max(0.0, t - w), std::min(horizon, t + w));
  return out;
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::string report_table(const RmseReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %-12s", "filter", "window");
  os << line;
  for (const auto& s : kInverterStateNames) {
    std::snprintf(line, sizeof line, " %11s", s.c_str());
    os << line;
  }
  os << '\n';
  for (const auto& f : report.filters) {
    for (const auto* which : {"overall", "near-switch"}) {
      const Vector& v = std::string(which) == "overall" ? f.overall : f.near_switch;
      if (v.size() == 0) continue;
      std::snprintf(line, sizeof line, "%-12s %-12s", f.filter.c_str(), which);
      os << line;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::snprintf(line, sizeof line, " %11s", sci(v[i]).c_str());
        os << line;
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string report_csv(const RmseReport& report) {
  std::ostringstream os;
  for (const auto& [k, v] : report.config_echo) os << "# " << k << " = " << v << '\n';
  os << "# switching_instants =";
  for (std::size_t i = 0; i < report.switching_instants.size(); ++i)
    os << (i ? ", " : " ") << format_double(report.switching_instants[i]);
  os << '\n';
  std::istringstream table(report_table(report));
  for (std::string line; std::getline(table, line);) os << "# " << line << '\n';
  os << "filter,state,window,rmse\n";
  for (const auto& f : report.filters) {
    for (const auto* which : {"overall", "near_switch"}) {
      const Vector& v = std::string(which) == "overall" ? f.overall : f.near_switch;
      for (Eigen::Index i = 0; i < v.size(); ++i)
        os << f.filter << ',' << kInverterStateNames.at(i) << ',' << which << ','
           << format_double(v[i]) << '\n';
    }
  }
  return os.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream is(text);
  bool have_header = false;
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
    } else {
      if (cells.size() != table.header.size())
        throw ArgumentError("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(table.header.size()));
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_csv(text.str());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::string trajectory_csv(const HybridTrajectory& traj, const std::vector<std::string>& state_names) {
  std::ostringstream os;
  os << "t,j,mode";
  for (const auto& s : state_names) os << ',' << s;
  os << '\n';
  for (const auto& s : traj.samples) {
    os << format_double(s.time.t) << ',' << s.time.j << ',' << traj.mode_name(s.mode);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(state_names.size()); ++i)
      os << ',' << format_double(s.state[i]);
    os << '\n';
  }
  return os.str();
}

std::string estimate_csv(const std::vector<double>& grid, const HybridTrajectory& truth,
                         const std::vector<Vector>& truth_on_grid, const estimation::FilterResult& result) {
  if (grid.size() != truth_on_grid.size() || grid.size() != result.beliefs.size())
    throw ArgumentError("estimate_csv: grid, truth and filter lengths differ");
  const auto idx = truth.indices_on_grid(grid);
  std::ostringstream os;
  os << "t,j,mode,i_d,i_q,v_d,v_q,ihat_d,ihat_q,vhat_d,vhat_q,p_trace\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& s = truth.samples[idx[k]];
    os << format_double(grid[k]) << ',' << s.time.j << ',' << truth.mode_name(s.mode);
    for (Eigen::Index i = 0; i < 4; ++i) os << ',' << format_double(truth_on_grid[k][i]);
    const auto& b = result.beliefs[k];
    for (Eigen::Index i = 0; i < 4; ++i) os << ',' << format_double(b.mean[i]);
    os << ',' << format_double(b.covariance.trace()) << '\n';
  }
  return os.str();
}

}  // namespace hds::harness
