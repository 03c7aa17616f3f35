#include "hds/harness/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace hds::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    throw ConfigError("'" + key + "': expected a finite number, got '" + text + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || s[0] == '+' || end != s.c_str() + s.size() || errno == ERANGE)
    throw ConfigError("'" + key + "': expected a non-negative integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_double(key, part));
  return out;
}

/// One value broadcast to all four entries, or four values.
Vector parse_diag4(const std::string& key, const std::string& text) {
  const auto v = parse_list(key, text);
  if (v.size() == 1) return Vector::Constant(4, v[0]);
  if (v.size() == 4) return Eigen::Map<const Vector>(v.data(), 4);
  throw ConfigError("'" + key + "': expected 1 or 4 values");
}

std::string join(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

struct Field {
  std::string key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

Field number(std::string key, double ExperimentConfig::*member) {
  const std::string k = key;
  return {std::move(key), [k, member](ExperimentConfig& c, const std::string& v) { c.*member = parse_double(k, v); },
          [member](const ExperimentConfig& c) { return format_double(c.*member); }};
}

Field inverter_number(std::string key, double power::InverterParams::*member) {
  const std::string k = key;
  return {std::move(key),
          [k, member](ExperimentConfig& c, const std::string& v) { c.inverter.params.*member = parse_double(k, v); },
          [member](const ExperimentConfig& c) { return format_double(c.inverter.params.*member); }};
}

Field smib_number(std::string key, double power::SmibParams::*member) {
  const std::string k = key;
  return {std::move(key),
          [k, member](ExperimentConfig& c, const std::string& v) { c.smib.*member = parse_double(k, v); },
          [member](const ExperimentConfig& c) { return format_double(c.smib.*member); }};
}

Field verify_number(std::string key, double VerifySettings::*member) {
  const std::string k = key;
  return {std::move(key),
          [k, member](ExperimentConfig& c, const std::string& v) { c.verify.*member = parse_double(k, v); },
          [member](const ExperimentConfig& c) { return format_double(c.verify.*member); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    using power::InverterParams;
    using power::SmibParams;
    std::vector<Field> f;
    f.push_back({"model",
                 [](ExperimentConfig& c, const std::string& v) {
                   if (v == "inverter") c.model = ModelKind::Inverter;
                   else if (v == "smib") c.model = ModelKind::Smib;
                   else throw ConfigError("'model': expected inverter or smib, got '" + v + "'");
                 },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.model)); }});
    f.push_back({"filter",
                 [](ExperimentConfig& c, const std::string& v) {
                   if (v == "hybrid") c.filter = FilterChoice::Hybrid;
                   else if (v == "continuous") c.filter = FilterChoice::Continuous;
                   else if (v == "both") c.filter = FilterChoice::Both;
                   else throw ConfigError("'filter': expected hybrid, continuous or both, got '" + v + "'");
                 },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.filter)); }});
    f.push_back({"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = parse_u64("seed", v); },
                 [](const ExperimentConfig& c) { return std::to_string(c.seed); }});
    f.push_back(number("near_switch_window", &ExperimentConfig::near_switch_window));
    f.push_back({"output.dir", [](ExperimentConfig& c, const std::string& v) { c.out_dir = v; },
                 [](const ExperimentConfig& c) { return c.out_dir.string(); }});

    f.push_back({"inverter.horizon",
                 [](ExperimentConfig& c, const std::string& v) { c.inverter.horizon = parse_double("inverter.horizon", v); },
                 [](const ExperimentConfig& c) { return format_double(c.inverter.horizon); }});
    f.push_back({"inverter.dt",
                 [](ExperimentConfig& c, const std::string& v) { c.inverter.dt = parse_double("inverter.dt", v); },
                 [](const ExperimentConfig& c) { return format_double(c.inverter.dt); }});
    f.push_back(inverter_number("inverter.l_pu", &InverterParams::l_pu));
    f.push_back(inverter_number("inverter.r_pu", &InverterParams::r_pu));
    f.push_back(inverter_number("inverter.omega", &InverterParams::omega));
    f.push_back(inverter_number("inverter.v_ref", &InverterParams::v_ref));
    f.push_back(inverter_number("inverter.i_lim", &InverterParams::i_lim));
    f.push_back(inverter_number("inverter.v_low", &InverterParams::v_low));
    f.push_back(inverter_number("inverter.v_high", &InverterParams::v_high));
    f.push_back(inverter_number("inverter.k", &InverterParams::k));
    f.push_back(inverter_number("inverter.v_th", &InverterParams::v_th));
    f.push_back(inverter_number("inverter.tau_v", &InverterParams::tau_v));
    f.push_back(inverter_number("inverter.tau_i", &InverterParams::tau_i));
    f.push_back({"inverter.x0",
                 [](ExperimentConfig& c, const std::string& v) {
                   const auto xs = parse_list("inverter.x0", v);
                   if (xs.size() != 4) throw ConfigError("'inverter.x0': expected 4 values");
                   c.inverter.x0 = Eigen::Map<const Vector>(xs.data(), 4);
                 },
                 [](const ExperimentConfig& c) { return join(c.inverter.x0); }});
    f.push_back({"profile.breakpoints",
                 [](ExperimentConfig& c, const std::string& v) {
                   std::vector<std::pair<double, double>> pts;
                   for (const auto& item : split(v, ',')) {
                     const auto tv = split(item, ':');
                     if (tv.size() != 2)
                       throw ConfigError("'profile.breakpoints': expected t:v pairs, got '" + item + "'");
                     pts.emplace_back(parse_double("profile.breakpoints", tv[0]),
                                      parse_double("profile.breakpoints", tv[1]));
                   }
                   try {
                     c.inverter.profile = power::VoltageProfile(std::move(pts));
                   } catch (const ArgumentError& e) {
                     throw ConfigError(std::string("'profile.breakpoints': ") + e.what());
                   }
                 },
                 [](const ExperimentConfig& c) {
                   std::string out;
                   for (const auto& [t, v] : c.inverter.profile.breakpoints()) {
                     if (!out.empty()) out += ", ";
                     out += format_double(t) + ":" + format_double(v);
                   }
                   return out;
                 }});
    f.push_back({"noise.q",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.inverter.noise.Q = parse_diag4("noise.q", v).asDiagonal();
                 },
                 [](const ExperimentConfig& c) { return join(c.inverter.noise.Q.diagonal()); }});
    f.push_back({"noise.q_period",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.inverter.noise.q_period = parse_double("noise.q_period", v);
                 },
                 [](const ExperimentConfig& c) { return format_double(c.inverter.noise.q_period); }});
    f.push_back({"noise.r",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.inverter.noise.R = parse_diag4("noise.r", v).asDiagonal();
                 },
                 [](const ExperimentConfig& c) { return join(c.inverter.noise.R.diagonal()); }});
    f.push_back({"noise.p0",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.inverter.p0 = parse_diag4("noise.p0", v).asDiagonal();
                 },
                 [](const ExperimentConfig& c) { return join(c.inverter.p0.diagonal()); }});

    f.push_back(number("smib.horizon", &ExperimentConfig::smib_horizon));
    f.push_back(number("smib.dt", &ExperimentConfig::smib_dt));
    f.push_back(smib_number("smib.m", &SmibParams::m));
    f.push_back(smib_number("smib.d", &SmibParams::d));
    f.push_back(smib_number("smib.p_m", &SmibParams::p_m));
    f.push_back(smib_number("smib.e", &SmibParams::e));
    f.push_back(smib_number("smib.v", &SmibParams::v));
    f.push_back(smib_number("smib.x_line", &SmibParams::x_line));
    f.push_back(smib_number("smib.i_max", &SmibParams::i_max));
    f.push_back(smib_number("smib.p_min", &SmibParams::p_min));
    f.push_back(smib_number("smib.p_max", &SmibParams::p_max));
    f.push_back({"smib.forced_trip",
                 [](ExperimentConfig& c, const std::string& v) {
                   if (v == "none") c.smib.forced_trip.reset();
                   else c.smib.forced_trip = parse_double("smib.forced_trip", v);
                 },
                 [](const ExperimentConfig& c) {
                   return c.smib.forced_trip ? format_double(*c.smib.forced_trip) : std::string("none");
                 }});
    f.push_back({"smib.x0",
                 [](ExperimentConfig& c, const std::string& v) {
                   const auto xs = parse_list("smib.x0", v);
                   if (xs.size() != 2) throw ConfigError("'smib.x0': expected 2 values (delta, omega)");
                   c.smib_x0 = Eigen::Map<const Vector>(xs.data(), 2);
                 },
                 [](const ExperimentConfig& c) { return join(c.smib_x0); }});
    f.push_back({"verify.samples",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.verify.samples = static_cast<std::size_t>(parse_u64("verify.samples", v));
                 },
                 [](const ExperimentConfig& c) { return std::to_string(c.verify.samples); }});
    f.push_back(verify_number("verify.delta_lo", &VerifySettings::delta_lo));
    f.push_back(verify_number("verify.delta_hi", &VerifySettings::delta_hi));
    f.push_back(verify_number("verify.omega_lo", &VerifySettings::omega_lo));
    f.push_back(verify_number("verify.omega_hi", &VerifySettings::omega_hi));
    return f;
  }();
  return table;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view to_string(ModelKind m) { return m == ModelKind::Inverter ? "inverter" : "smib"; }

std::string_view to_string(FilterChoice f) {
  switch (f) {
    case FilterChoice::Hybrid: return "hybrid";
    case FilterChoice::Continuous: return "continuous";
    case FilterChoice::Both: return "both";
  }
  return "?";
}

std::map<std::string, std::string> parse_key_values(const std::string& text, const std::string& source) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!out.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return out;
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.smib_x0 = Vector(2);
  c.smib_x0 << 0.5, 0.0;
  return c;
}

void ExperimentConfig::validate() const {
  if (!(near_switch_window > 0.0)) throw ConfigError("near_switch_window must be positive");
  try {
    if (model == ModelKind::Inverter) {
      inverter.validate();
    } else {
      smib.validate();
      if (!(smib_horizon > 0.0) || !(smib_dt > 0.0))
        throw ConfigError("smib.horizon and smib.dt must be positive");
      if (verify.samples == 0) throw ConfigError("verify.samples must be positive");
      if (!(verify.delta_lo <= verify.delta_hi) || !(verify.omega_lo <= verify.omega_hi))
        throw ConfigError("verify box bounds must satisfy lo <= hi");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) out.emplace_back(f.key, f.get(*this));
  return out;
}

ExperimentConfig config_from_entries(const std::map<std::string, std::string>& entries,
                                     std::optional<std::uint64_t> env_seed) {
  ExperimentConfig c = default_config();
  if (env_seed) c.seed = *env_seed;
  for (const auto& [key, value] : entries) {
    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->set(c, value);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> env_seed) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return config_from_entries(parse_key_values(text.str(), path.string()), env_seed);
}

}  // namespace hds::harness
