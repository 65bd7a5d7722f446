#include "wavemc/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace wavemc {

const std::string& TomlValue::as_string() const {
  if (!is_string()) throw std::runtime_error("config value is not a string");
  return std::get<std::string>(v_);
}
bool TomlValue::as_bool() const {
  if (!std::holds_alternative<bool>(v_)) throw std::runtime_error("config value is not a bool");
  return std::get<bool>(v_);
}
std::int64_t TomlValue::as_int() const {
  if (std::holds_alternative<std::int64_t>(v_)) return std::get<std::int64_t>(v_);
  if (std::holds_alternative<double>(v_)) {
    const double d = std::get<double>(v_);
    if (d == std::floor(d)) return static_cast<std::int64_t>(d);
  }
  throw std::runtime_error("config value is not an integer");
}
double TomlValue::as_double() const {
  if (std::holds_alternative<double>(v_)) return std::get<double>(v_);
  if (std::holds_alternative<std::int64_t>(v_))
    return static_cast<double>(std::get<std::int64_t>(v_));
  throw std::runtime_error("config value is not a number");
}
const TomlValue::Array& TomlValue::as_array() const {
  if (!is_array()) throw std::runtime_error("config value is not an array");
  return std::get<Array>(v_);
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
};

TomlValue parse_value(Cursor& c);

TomlValue parse_array(Cursor& c) {
  // c.peek() == '['
  ++c.pos;
  TomlValue::Array arr;
  for (;;) {
    c.skip_ws();
    if (c.done()) throw std::runtime_error("unterminated array");
    if (c.peek() == ']') {
      ++c.pos;
      break;
    }
    arr.push_back(parse_value(c));
    c.skip_ws();
    if (!c.done() && c.peek() == ',') ++c.pos;
  }
  return TomlValue(std::move(arr));
}

TomlValue parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done()) throw std::runtime_error("missing value");
  const char ch = c.peek();
  if (ch == '[') return parse_array(c);
  if (ch == '"') {
    ++c.pos;
    std::string out;
    while (!c.done() && c.peek() != '"') {
      if (c.peek() == '\\' && c.pos + 1 < c.s.size()) ++c.pos;
      out += c.s[c.pos++];
    }
    if (c.done()) throw std::runtime_error("unterminated string");
    ++c.pos;
    return TomlValue(std::move(out));
  }
  std::string tok;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != ' ' &&
         c.peek() != '\t')
    tok += c.s[c.pos++];
  if (tok == "true") return TomlValue(true);
  if (tok == "false") return TomlValue(false);
  if (tok.find_first_of(".eE") == std::string::npos ||
      (tok.size() > 2 && tok[0] == '0' && tok[1] == 'x')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used, 0);
      if (used == tok.size()) return TomlValue(static_cast<std::int64_t>(v));
    } catch (...) {
    }
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used == tok.size()) return TomlValue(v);
  } catch (...) {
  }
  throw std::runtime_error("cannot parse config value: " + tok);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

TomlDocument TomlDocument::parse(const std::string& text) {
  TomlDocument doc;
  std::istringstream in(text);
  std::string line, prefix;
  while (std::getline(in, line)) {
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.size() >= 4 && line[1] == '[') {
        const auto end = line.find("]]");
        if (end == std::string::npos) throw std::runtime_error("bad table header: " + line);
        const std::string name = trim(line.substr(2, end - 2));
        const int idx = doc.table_counts_[name]++;
        prefix = name + "." + std::to_string(idx) + ".";
      } else {
        const auto end = line.find(']');
        if (end == std::string::npos) throw std::runtime_error("bad table header: " + line);
        prefix = trim(line.substr(1, end - 1)) + ".";
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    std::string rhs = trim(line.substr(eq + 1));
    // allow arrays to continue across lines until brackets balance
    auto depth = [](const std::string& s) {
      int d = 0;
      bool in_str = false;
      for (char ch : s) {
        if (ch == '"') in_str = !in_str;
        if (in_str) continue;
        if (ch == '[') ++d;
        if (ch == ']') --d;
      }
      return d;
    };
    while (depth(rhs) > 0) {
      std::string more;
      if (!std::getline(in, more)) throw std::runtime_error("unterminated array");
      rhs += " " + trim(strip_comment(more));
    }
    Cursor c{rhs};
    doc.values_[prefix + key] = parse_value(c);
  }
  return doc;
}

const TomlValue& TomlDocument::at(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::runtime_error("missing config key: " + key);
  return it->second;
}
double TomlDocument::number_or(const std::string& key, double fallback) const {
  return has(key) ? at(key).as_double() : fallback;
}
std::int64_t TomlDocument::int_or(const std::string& key, std::int64_t fallback) const {
  return has(key) ? at(key).as_int() : fallback;
}
bool TomlDocument::bool_or(const std::string& key, bool fallback) const {
  return has(key) ? at(key).as_bool() : fallback;
}
std::string TomlDocument::string_or(const std::string& key,
                                    const std::string& fallback) const {
  return has(key) ? at(key).as_string() : fallback;
}
int TomlDocument::table_array_size(const std::string& prefix) const {
  const auto it = table_counts_.find(prefix);
  return it == table_counts_.end() ? 0 : it->second;
}
void TomlDocument::set_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error("override must be key=value: " + assignment);
  const std::string key = trim(assignment.substr(0, eq));
  const std::string rhs = trim(assignment.substr(eq + 1));
  Cursor c{rhs};
  values_[key] = parse_value(c);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace {

std::array<int, 3> to_index3(const TomlValue& v) {
  const auto& arr = v.as_array();
  if (arr.size() != 3) throw std::runtime_error("grid point needs 3 indices");
  return {static_cast<int>(arr[0].as_int()), static_cast<int>(arr[1].as_int()),
          static_cast<int>(arr[2].as_int())};
}

std::string canonical(const TomlDocument& doc) {
  std::ostringstream out;
  for (const auto& [k, v] : doc.entries()) {
    out << k << '=';
    std::function<void(const TomlValue&)> dump = [&](const TomlValue& val) {
      if (val.is_array()) {
        out << '[';
        for (const auto& e : val.as_array()) {
          dump(e);
          out << ',';
        }
        out << ']';
      } else if (val.is_string()) {
        out << '"' << val.as_string() << '"';
      } else if (val.is_number()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", val.as_double());
        out << buf;
      } else {
        out << (val.as_bool() ? "true" : "false");
      }
    };
    dump(v);
    out << '\n';
  }
  return out.str();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& toml_text,
                                         const std::vector<std::string>& overrides) {
  ExperimentConfig cfg;
  cfg.doc = TomlDocument::parse(toml_text);
  for (const std::string& o : overrides) cfg.doc.set_override(o);
  const TomlDocument& d = cfg.doc;
  cfg.config_hash = fnv1a64(canonical(d));

  cfg.n = static_cast<int>(d.at("lattice.n").as_int());
  cfg.h = d.at("lattice.h").as_double();

  const std::string kind = d.string_or("measure.kind", "example");
  if (kind == "example")
    cfg.kind = MeasureKind::example;
  else if (kind == "gibbs_smoothed")
    cfg.kind = MeasureKind::gibbs_smoothed;
  else if (kind == "non_gaussian")
    cfg.kind = MeasureKind::non_gaussian;
  else
    throw std::runtime_error("unknown measure.kind: " + kind);

  cfg.r0 = d.number_or("measure.r0", 1.5);
  cfg.n_exp = static_cast<int>(d.int_or("measure.n_exp", 1));
  cfg.amp_minus = d.number_or("measure.amp_minus", 1.0);
  cfg.amp_plus = d.number_or("measure.amp_plus", 1.0);
  cfg.balanced = d.bool_or("measure.balanced", true);
  cfg.u_weight = d.number_or("measure.u_weight", 0.5);
  cfg.half_width_a = d.number_or("measure.half_width_a", 1.0);
  cfg.temp_minus = d.number_or("measure.T_minus", 1.0);
  cfg.temp_plus = d.number_or("measure.T_plus", 1.0);
  cfg.r_theta = d.number_or("measure.r_theta", 1.0);
  cfg.theta_amp = d.number_or("measure.theta_amp", 1.0);
  cfg.tanh_scale0 = d.number_or("measure.tanh_scale0", 1.0);
  cfg.tanh_scale1 = d.number_or("measure.tanh_scale1", 1.0);

  for (const auto& t : d.at("schedule.times").as_array()) cfg.times.push_back(t.as_double());
  cfg.samples = static_cast<int>(d.at("schedule.samples").as_int());
  cfg.seed = static_cast<std::uint64_t>(d.at("schedule.seed").as_int());
  cfg.workers = static_cast<int>(d.int_or("schedule.workers", 1));

  cfg.transverse_average = d.bool_or("probes.transverse_average", true);
  if (d.has("probes.pairs")) {
    for (const auto& pv : d.at("probes.pairs").as_array()) {
      const auto& pa = pv.as_array();
      if (pa.size() != 2) throw std::runtime_error("pair probe needs two points");
      const auto x = to_index3(pa[0]);
      const auto y = to_index3(pa[1]);
      cfg.pairs.push_back({x[0], x[1], x[2], y[0], y[1], y[2]});
    }
  }
  if (d.has("probes.current_points"))
    for (const auto& pv : d.at("probes.current_points").as_array())
      cfg.current_pts.push_back(to_index3(pv));
  if (d.has("probes.energy_radii"))
    for (const auto& rv : d.at("probes.energy_radii").as_array())
      cfg.energy_radii.push_back(rv.as_double());
  const int nf = d.table_array_size("probes.functional");
  for (int i = 0; i < nf; ++i) {
    const std::string p = "probes.functional." + std::to_string(i) + ".";
    ExperimentConfig::FunctionalSpec f;
    f.component = static_cast<int>(d.int_or(p + "component", 1));
    if (d.has(p + "center")) {
      const auto& c = d.at(p + "center").as_array();
      for (int a = 0; a < 3; ++a) f.center[a] = c[a].as_double();
    }
    f.radius = d.number_or(p + "radius", 1.0);
    f.amplitude = d.number_or(p + "amplitude", 1.0);
    cfg.functionals.push_back(f);
  }

  auto& ck = cfg.checks;
  ck.q11_convergence = d.bool_or("checks.q11_convergence", false);
  ck.q11_band_rel = d.number_or("checks.q11_band_rel", 0.02);
  ck.current_match = d.bool_or("checks.current_match", false);
  ck.current_band_rel = d.number_or("checks.current_band_rel", 0.05);
  ck.current_sign = d.bool_or("checks.current_sign", false);
  ck.current_sign_min_z = d.number_or("checks.current_sign_min_z", 5.0);
  ck.transverse_current_zero = d.bool_or("checks.transverse_current_zero", false);
  ck.currents_zero = d.bool_or("checks.currents_zero", false);
  ck.cross_corr_zero = d.bool_or("checks.cross_corr_zero", false);
  ck.zero_band_sigmas = d.number_or("checks.zero_band_sigmas", 3.0);
  ck.char_functional = d.bool_or("checks.char_functional", false);
  ck.char_band_factor = d.number_or("checks.char_band_factor", 5.0);
  ck.gaussianity = d.bool_or("checks.gaussianity", false);
  ck.gauss_ref_sigmas = d.number_or("checks.gauss_ref_sigmas", 5.0);
  ck.kurtosis_nonzero_t0 = d.bool_or("checks.kurtosis_nonzero_t0", false);
  ck.kurtosis_min_z = d.number_or("checks.kurtosis_min_z", 5.0);

  validate_wrap_safety(cfg);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path,
                                        const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), overrides);
}

void validate_wrap_safety(const ExperimentConfig& cfg) {
  const Lattice lat(cfg.n, cfg.h);
  const double half = cfg.side() / 2.0;
  double t_max = 0.0;
  for (double t : cfg.times) t_max = std::max(t_max, std::abs(t));

  auto check = [&](double x3, const std::string& what) {
    if (t_max + std::abs(x3) + cfg.half_width_a >= half)
      throw std::runtime_error("wrap-safety violated for " + what +
                               ": t + |x3| + a must stay below L/2");
  };
  for (const auto& p : cfg.pairs) {
    check(lat.coord(lat.wrap(p[2])), "pair probe");
    check(lat.coord(lat.wrap(p[5])), "pair probe");
  }
  for (const auto& p : cfg.current_pts) check(lat.coord(lat.wrap(p[2])), "current probe");
  for (const auto& f : cfg.functionals) check(std::abs(f.center[2]) + f.radius, "functional");
}

}  // namespace wavemc
