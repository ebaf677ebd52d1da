#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mpade/cli.hpp"
#include "mpade/error.hpp"

namespace mpade::cli {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(path + key, "missing");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "not finite");
  return x;
}

double number_or(const json& j, const std::string& key, double fallback, const std::string& path) {
  return j.contains(key) ? number(j.at(key), path + key) : fallback;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

Complex complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return number(j, path);
  if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected [re, im]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

Measure parse_measure(const json& j) {
  if (!j.is_object()) throw ConfigError("measure", "expected an object");
  const auto iv_list = number_list(require(j, "interval", "measure."), "measure.interval");
  if (iv_list.size() != 2 || !(iv_list[0] < iv_list[1])) throw ConfigError("measure.interval", "expected [alpha, beta] with alpha < beta");
  const Interval iv{iv_list[0], iv_list[1]};
  const std::string type = j.value("type", j.contains("points") ? "discrete" : "weight");
  try {
    if (type == "discrete") {
      return Measure::discrete(iv, number_list(require(j, "points", "measure."), "measure.points"),
                               number_list(require(j, "masses", "measure."), "measure.masses"));
    }
    if (type != "weight") throw ConfigError("measure.type", "expected \"discrete\" or \"weight\"");
    WeightSpec spec;
    const json& name = require(j, "name", "measure.");
    if (!name.is_string()) throw ConfigError("measure.name", "expected a string");
    const std::string n = name.get<std::string>();
    if (n == "chebyshev1")
      spec.name = WeightName::Chebyshev1;
    else if (n == "uniform")
      spec.name = WeightName::Uniform;
    else if (n == "jacobi")
      spec.name = WeightName::Jacobi;
    else
      throw ConfigError("measure.name", "unknown weight \"" + n + "\"");
    if (j.contains("params")) {
      spec.a = number_or(j.at("params"), "a", 0.0, "measure.params.");
      spec.b = number_or(j.at("params"), "b", 0.0, "measure.params.");
    }
    if (j.contains("quad_order")) spec.quad_order = integer(j.at("quad_order"), "measure.quad_order");
    return Measure::weight(iv, spec);
  } catch (const Error& e) {
    throw ConfigError("measure", e.what());
  }
}

std::vector<Complex> parse_grid(const json& j, const Interval& iv) {
  std::vector<Complex> g;
  if (j.contains("points")) {
    const json& p = j.at("points");
    if (!p.is_array()) throw ConfigError("grid.points", "expected an array");
    for (std::size_t i = 0; i < p.size(); ++i) g.push_back(complex_value(p[i], "grid.points[" + std::to_string(i) + "]"));
  } else if (j.contains("circle")) {
    const json& c = j.at("circle");
    const Complex centre = c.contains("center") ? complex_value(c.at("center"), "grid.circle.center") : Complex{};
    const double radius = number(require(c, "radius", "grid.circle."), "grid.circle.radius");
    const int count = integer(require(c, "count", "grid.circle."), "grid.circle.count");
    if (count < 1 || !(radius > 0)) throw ConfigError("grid.circle", "needs count >= 1 and radius > 0");
    for (int k = 0; k < count; ++k) g.push_back(centre + std::polar(radius, 2.0 * M_PI * (k + 0.5) / count));
  } else {
    throw ConfigError("grid", "expected \"points\" or \"circle\"");
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    if (iv.dist(g[i]) <= 1e-10) throw ConfigError("grid[" + std::to_string(i) + "]", "probe lies on the interval");
  return g;
}

}  // namespace

NodeSequence generate_nodes(const json& j, const Interval& iv, int default_count) {
  if (!j.is_object()) throw ConfigError("nodes", "expected an object");
  NodeSequence ns;
  if (j.contains("list")) {
    const json& l = j.at("list");
    if (!l.is_array()) throw ConfigError("nodes.list", "expected an array");
    for (std::size_t i = 0; i < l.size(); ++i) ns.z.push_back(complex_value(l[i], "nodes.list[" + std::to_string(i) + "]"));
  } else {
    const json& pat = require(j, "pattern", "nodes.");
    if (!pat.is_string()) throw ConfigError("nodes.pattern", "expected a string");
    const std::string p = pat.get<std::string>();
    const double base = number_or(j, "base", 1.0, "nodes.");
    const int count = j.contains("count") ? integer(j.at("count"), "nodes.count") : default_count;
    if (count < 0) throw ConfigError("nodes.count", "negative");
    if (!(base > 0)) throw ConfigError("nodes.base", "must be positive");
    const double c = 0.5 * (iv.alpha + iv.beta), half = 0.5 * (iv.beta - iv.alpha);
    if (p == "vertical") {
      const double spacing = number_or(j, "spacing", 1.0, "nodes.");
      for (int k = 0; k < count; ++k) ns.z.push_back(Complex(c, base * (1.0 + k * spacing)));
    } else if (p == "arc") {
      for (int k = 0; k < count; ++k) ns.z.push_back(c + std::polar(base, M_PI * (k + 0.5) / count));
    } else if (p == "strip") {
      const double width = number_or(j, "width", 0.9, "nodes.");
      for (int k = 0; k < count; ++k) {
        const int i = k % 2 == 0 ? k / 2 : count - 1 - k / 2;
        ns.z.push_back(Complex(c + width * half * std::cos(M_PI * (i + 0.5) / count), base));
      }
    } else {
      throw ConfigError("nodes.pattern", "unknown pattern \"" + p + "\"");
    }
  }
  double lowest = INFINITY;
  for (Complex z : ns.z) lowest = std::min(lowest, z.imag());
  ns.delta = j.contains("delta") ? number(j.at("delta"), "nodes.delta") : (ns.z.empty() ? 1.0 : 0.5 * lowest);
  try {
    ns.validate();
  } catch (const Error& e) {
    throw ConfigError("nodes", e.what());
  }
  return ns;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  ExperimentConfig cfg;
  cfg.measure = parse_measure(require(j, "measure", ""));
  cfg.n_max = integer(require(j, "n_max", ""), "n_max");
  if (cfg.n_max < 0) throw ConfigError("n_max", "negative");
  cfg.nodes = generate_nodes(require(j, "nodes", ""), cfg.measure.interval(), cfg.n_max + 1);
  cfg.grid = parse_grid(require(j, "grid", ""), cfg.measure.interval());
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("tolerances", "expected an object");
    cfg.eps_degenerate = number_or(t, "eps_degenerate", cfg.eps_degenerate, "tolerances.");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed", "expected a nonnegative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("fault")) {
    const json& f = j.at("fault");
    FaultSpec fs;
    fs.step = integer(require(f, "step", "fault."), "fault.step");
    const json& field = require(f, "field", "fault.");
    if (!field.is_string()) throw ConfigError("fault.field", "expected a string");
    fs.field = field.get<std::string>();
    if (fs.field != "a1" && fs.field != "a2" && fs.field != "b") throw ConfigError("fault.field", "expected a1, a2 or b");
    fs.delta = number(require(f, "delta", "fault."), "fault.delta");
    cfg.fault = fs;
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

void apply_overrides(ExperimentConfig& cfg, const Options& opt) {
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.tol) {
    if (!(*opt.tol > 0)) throw ConfigError("--tol", "must be positive");
    cfg.eps_degenerate = *opt.tol;
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace mpade::cli
