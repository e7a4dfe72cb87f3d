#include "hkbec_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>

#include "hkbec/bounds.hpp"
#include "hkbec/error.hpp"

namespace hkbec::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Reads the fields of one JSON object; any key not in `allowed` is an error.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path, std::initializer_list<const char*> allowed)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
    for (const auto& item : obj_.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* k) { return item.key() == k; });
      if (!known) throw ConfigError(path_ + ": unknown key '" + item.key() + "'");
    }
  }

  template <class T>
  void get(const char* key, T& dst) const {
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      dst = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path_ + "." + key + ": wrong type");
    }
  }

  void get_optional(const char* key, std::optional<double>& dst) const {
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    if (it->is_null()) {
      dst.reset();
      return;
    }
    double v = 0.0;
    get(key, v);
    dst = v;
  }

  const json* child(const char* key) const {
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const std::string& path() const { return path_; }

 private:
  const json& obj_;
  std::string path_;
};

void parse_verify(const json& j, VerifyConfig& c) {
  ObjectReader r(j, "verify",
                 {"checks", "grid_points", "i1_tolerance", "k_rep_tolerance", "gr_tolerance",
                  "free_gas_duality_tolerance", "trace_duality_tolerance", "golden_file"});
  r.get("checks", c.checks);
  r.get("grid_points", c.grid_points);
  r.get("i1_tolerance", c.i1_tolerance);
  r.get("k_rep_tolerance", c.k_rep_tolerance);
  r.get("gr_tolerance", c.gr_tolerance);
  r.get("free_gas_duality_tolerance", c.free_gas_duality_tolerance);
  r.get("trace_duality_tolerance", c.trace_duality_tolerance);
  r.get("golden_file", c.golden_file);
}

void parse_quadrature(const json& j, bogoliubov::QuadratureConfig& q) {
  ObjectReader r(j, "sweep.quadrature",
                 {"rel_tol", "t_split", "tail_cut_factor", "k_max", "thermal_zero_mode"});
  r.get("rel_tol", q.rel_tol);
  r.get("t_split", q.t_split);
  r.get("tail_cut_factor", q.tail_cut_factor);
  r.get("k_max", q.k_max);
  r.get("thermal_zero_mode", q.thermal_zero_mode);
}

void parse_sweep(const json& j, SweepRunConfig& c) {
  ObjectReader r(j, "sweep",
                 {"quantities", "sizes", "etas", "u0", "n0", "beta", "trace_time",
                  "free_gas_density_ratio", "quadrature"});
  r.get("quantities", c.quantities);
  r.get("sizes", c.sizes);
  r.get("etas", c.etas);
  r.get("u0", c.u0);
  r.get("n0", c.n0);
  r.get_optional("beta", c.beta);
  r.get("trace_time", c.trace_time);
  r.get("free_gas_density_ratio", c.free_gas_density_ratio);
  if (const json* q = r.child("quadrature")) parse_quadrature(*q, c.quadrature);
}

void parse_pathria(const json& j, PathriaConfig& c) {
  ObjectReader r(j, "pathria", {"sizes", "density_ratios", "lambda"});
  r.get("sizes", c.sizes);
  r.get("density_ratios", c.density_ratios);
  r.get("lambda", c.lambda);
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("format must be 'csv' or 'json', got '" + s + "'");
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

const std::vector<std::string>& VerifyConfig::all_checks() {
  static const std::vector<std::string> names{
      "i1_identity",      "k_integral_rep",   "gr6682", "trace_duality",
      "free_gas_duality", "angelescu_nenciu", "brown",  "goldens"};
  return names;
}

RunConfig default_config() {
  RunConfig c;
  c.verify.checks = VerifyConfig::all_checks();
#ifdef HKBEC_DEFAULT_GOLDEN
  c.verify.golden_file = HKBEC_DEFAULT_GOLDEN;
#endif
  return c;
}

RunConfig parse_config(const json& doc, RunConfig base) {
  ObjectReader r(doc, "config",
                 {"format", "jobs", "out", "timestamp", "quiet", "verify", "sweep", "pathria"});
  std::string fmt = to_string(base.format);
  r.get("format", fmt);
  base.format = parse_format(fmt);
  r.get("jobs", base.jobs);
  if (const json* o = r.child("out")) {
    std::string dir;
    r.get("out", dir);
    if (!o->is_null()) base.out = dir;
  }
  r.get("timestamp", base.timestamp);
  r.get("quiet", base.quiet);
  if (const json* v = r.child("verify")) parse_verify(*v, base.verify);
  if (const json* s = r.child("sweep")) parse_sweep(*s, base.sweep);
  if (const json* p = r.child("pathria")) parse_pathria(*p, base.pathria);
  require(base.jobs >= 1, "jobs must be >= 1");
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return parse_config(doc, std::move(base));
}

void validate_verify(const VerifyConfig& c) {
  require(!c.checks.empty(), "verify.checks is empty: nothing to run");
  for (const auto& name : c.checks) {
    const auto& all = VerifyConfig::all_checks();
    require(std::find(all.begin(), all.end(), name) != all.end(),
            "verify.checks: unknown check '" + name + "'");
  }
  require(c.grid_points >= 2, "verify.grid_points must be >= 2");
  for (double t : {c.i1_tolerance, c.k_rep_tolerance, c.gr_tolerance,
                   c.free_gas_duality_tolerance, c.trace_duality_tolerance}) {
    require(positive(t), "verify tolerances must be positive");
  }
}

void validate_sweep(const SweepRunConfig& c) {
  require(!c.quantities.empty(), "sweep.quantities is empty");
  for (const auto& q : c.quantities) {
    require(bounds::parse_quantity(q).has_value(), "sweep.quantities: unknown quantity '" + q + "'");
  }
  require(c.sizes.size() >= 3, "sweep.sizes needs at least 3 sizes");
  for (std::size_t i = 0; i < c.sizes.size(); ++i) {
    require(positive(c.sizes[i]), "sweep.sizes must be positive");
    require(i == 0 || c.sizes[i] > c.sizes[i - 1], "sweep.sizes must be strictly increasing");
  }
  require(!c.etas.empty(), "sweep.etas is empty");
  for (double e : c.etas) require(e > 0.0 && e < 1.0, "sweep.etas must lie in (0, 1)");
  require(positive(c.u0) && positive(c.n0), "sweep.u0 and sweep.n0 must be positive");
  require(!c.beta || positive(*c.beta), "sweep.beta must be positive");
  require(positive(c.trace_time), "sweep.trace_time must be positive");
  require(c.free_gas_density_ratio > 1.0, "sweep.free_gas_density_ratio must exceed 1");
  try {
    c.quadrature.validate();
  } catch (const hkbec::Error& e) {
    throw ConfigError(std::string("sweep.quadrature: ") + e.what());
  }
}

void validate_pathria(const PathriaConfig& c) {
  require(!c.sizes.empty(), "pathria.sizes is empty");
  require(!c.density_ratios.empty(), "pathria.density_ratios is empty");
  for (double s : c.sizes) require(positive(s), "pathria.sizes must be positive");
  for (double r : c.density_ratios) require(positive(r), "pathria.density_ratios must be positive");
  require(positive(c.lambda), "pathria.lambda must be positive");
}

ordered_json to_json(const VerifyConfig& c) {
  ordered_json j;
  j["checks"] = c.checks;
  j["grid_points"] = c.grid_points;
  j["i1_tolerance"] = c.i1_tolerance;
  j["k_rep_tolerance"] = c.k_rep_tolerance;
  j["gr_tolerance"] = c.gr_tolerance;
  j["free_gas_duality_tolerance"] = c.free_gas_duality_tolerance;
  j["trace_duality_tolerance"] = c.trace_duality_tolerance;
  j["golden_file"] = c.golden_file;
  return j;
}

ordered_json to_json(const SweepRunConfig& c) {
  ordered_json j;
  j["quantities"] = c.quantities;
  j["sizes"] = c.sizes;
  j["etas"] = c.etas;
  j["u0"] = c.u0;
  j["n0"] = c.n0;
  j["beta"] = c.beta ? ordered_json(*c.beta) : ordered_json(nullptr);
  j["trace_time"] = c.trace_time;
  j["free_gas_density_ratio"] = c.free_gas_density_ratio;
  j["quadrature"] = {{"rel_tol", c.quadrature.rel_tol},
                     {"t_split", c.quadrature.t_split},
                     {"tail_cut_factor", c.quadrature.tail_cut_factor},
                     {"k_max", c.quadrature.k_max},
                     {"thermal_zero_mode", c.quadrature.thermal_zero_mode}};
  return j;
}

ordered_json to_json(const PathriaConfig& c) {
  ordered_json j;
  j["sizes"] = c.sizes;
  j["density_ratios"] = c.density_ratios;
  j["lambda"] = c.lambda;
  return j;
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

}  // namespace hkbec::cli
