#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <cstdio>

#include "hkbec/bogoliubov.hpp"
#include "hkbec/bounds.hpp"
#include "hkbec/free_gas.hpp"
#include "hkbec/geometry.hpp"
#include "hkbec/heat_kernel.hpp"
#include "hkbec/specfun.hpp"
#include "hkbec_cli/commands.hpp"

namespace hkbec::cli {
namespace {

using geometry::ConvexDomain;
namespace hk = heat_kernel;

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// A row passes when value <= tolerance; NaN never passes.
CheckRow row(const std::string& group, const std::string& name, double value, double tol) {
  return {group, name, value, tol, value <= tol};
}

void i1_identity(const VerifyConfig& c, std::vector<CheckRow>& out) {
  for (double u : log_grid(1e-2, 1e2, c.grid_points)) {
    out.push_back(row("i1_identity", "u=" + num(u), specfun::residual_i1_identity(u),
                      c.i1_tolerance));
  }
}

void k_integral_rep(const VerifyConfig& c, std::vector<CheckRow>& out) {
  for (double nu : {0.25, 0.5, 0.75}) {
    for (double x : log_grid(0.05, 10.0, c.grid_points)) {
      out.push_back(row("k_integral_rep", "nu=" + num(nu) + " x=" + num(x),
                        specfun::residual_k_integral_rep(nu, x), c.k_rep_tolerance));
    }
  }
}

void gr6682(const VerifyConfig& c, std::vector<CheckRow>& out) {
  const std::pair<double, double> orders[] = {{0.0, 0.0},   {0.5, 0.0},  {1.0, 0.0},
                                              {0.25, 0.25}, {0.75, 0.25}, {0.0, 0.5},
                                              {0.5, 0.5}};
  for (const auto& [mu, nu] : orders) {
    for (double x : log_grid(1e-2, 10.0, c.grid_points)) {
      out.push_back(row("gr6682", "mu=" + num(mu) + " nu=" + num(nu) + " x=" + num(x),
                        specfun::residual_gr6682(mu, nu, x), c.gr_tolerance));
    }
  }
}

void trace_duality(const VerifyConfig& c, std::vector<CheckRow>& out) {
  for (double len : {0.5, 1.0, 2.0, 4.0}) {
    for (double s : log_grid(1e-4, 1e2, 30)) {
      for (auto bc : {hk::Boundary::neumann, hk::Boundary::dirichlet}) {
        const double spec =
            hk::interval_trace(len, {bc, s, hk::Representation::spectral});
        const double img = hk::interval_trace(len, {bc, s, hk::Representation::image});
        // Once the Dirichlet trace is exponentially small the image sum cancels
        // down to it from O(w); compare on the scale of its terms there.
        const double w = len / std::sqrt(4.0 * std::numbers::pi * s);
        const bool relative = bc == hk::Boundary::neumann || s <= len * len / std::numbers::pi;
        const double scale = relative ? std::abs(spec) : w + 0.5;
        const std::string name = std::string(bc == hk::Boundary::neumann ? "neumann" : "dirichlet") +
                                 " L=" + num(len) + " s=" + num(s);
        out.push_back(row("trace_duality", name, std::abs(spec - img) / scale,
                          c.trace_duality_tolerance));
      }
    }
  }
}

void free_gas_duality(const VerifyConfig& c, std::vector<CheckRow>& out) {
  for (double ratio : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (double mb : {-5.0, -2.0, -0.5, -0.1, -0.01}) {
      const free_gas::FreeGasState st{ratio, 1.0, mb, std::nullopt};
      const double d = free_gas::particle_number_direct(st);
      const double p = free_gas::particle_number_poisson(st);
      out.push_back(row("free_gas_duality", "L/lambda=" + num(ratio) + " mu_beta=" + num(mb),
                        std::abs(d - p) / std::abs(d), c.free_gas_duality_tolerance));
    }
  }
}

void angelescu_nenciu(const VerifyConfig&, std::vector<CheckRow>& out) {
  for (double len : {1.0, 2.0, 4.0}) {
    const std::pair<std::string, ConvexDomain> shapes[] = {
        {"cube " + num(len), ConvexDomain::cube(len)},
        {"box " + num(len) + "x" + num(2 * len) + "x" + num(4 * len),
         ConvexDomain::box(len, 2 * len, 4 * len)},
        {"box " + num(len) + "x" + num(len) + "x" + num(3 * len),
         ConvexDomain::box(len, len, 3 * len)}};
    for (const auto& [label, dom] : shapes) {
      for (double s : log_grid(1e-3, 10.0, 30)) {
        const auto chk = bounds::angelescu_nenciu_check(dom, s);
        out.push_back(row("angelescu_nenciu", label + " s=" + num(s), chk.lhs / chk.rhs, 1.0));
      }
    }
  }
}

void brown(const VerifyConfig&, std::vector<CheckRow>& out) {
  const ConvexDomain base = ConvexDomain::cube(2.0);
  for (double eta : {0.25, 0.5, 0.75}) {
    const bounds::EtaParameter e(eta);
    const double cst = bounds::estimate_brown_constant(base, e, bounds::BrownGrid::standard(base));
    out.push_back(row("brown", "C_eta finite eta=" + num(eta), std::isfinite(cst) ? 0.0 : 1.0,
                      0.0));
    for (double len : {4.0, 8.0}) {
      const ConvexDomain d = ConvexDomain::cube(len);
      const auto dom = bounds::check_brown_dominance(d, e, bounds::BrownGrid::standard(d), cst);
      out.push_back(row("brown", "violations eta=" + num(eta) + " L=" + num(len),
                        static_cast<double>(dom.violations), 0.0));
    }
  }
}

void goldens(const VerifyConfig& c, std::vector<CheckRow>& out) {
  for (const auto& [name, g] : load_goldens(c.golden_file)) {
    const double v = evaluate_golden(name);
    out.push_back(row("goldens", name, std::abs(v - g.value) / std::abs(g.value), g.rel_tol));
  }
}

bogoliubov::BogoliubovParams params(double a, std::optional<double> beta = std::nullopt) {
  return {a, 1.0, beta};
}

const std::map<std::string, std::function<double()>>& golden_table() {
  static const std::map<std::string, std::function<double()>> table{
      {"bessel_k_nu0.25_x1", [] { return specfun::bessel_k(0.25, 1.0); }},
      {"bessel_i1_scaled_x1", [] { return specfun::bessel_i_scaled(1.0, 1.0); }},
      {"bose_g_s1.5_z0.5", [] { return specfun::bose_g(1.5, 0.5); }},
      {"zeta_1.5", [] { return specfun::bose_g(1.5, 1.0); }},
      {"theta_1", [] { return free_gas::theta(1.0); }},
      {"interval_trace_neumann_L1_s0.01",
       [] { return hk::interval_trace(1.0, {hk::Boundary::neumann, 0.01}); }},
      {"box_trace_neumann_cube1_s0.01",
       [] { return hk::box_trace(ConvexDomain::cube(1.0), {hk::Boundary::neumann, 0.01}); }},
      {"coarea_cube1_inv_sqrt",
       [] {
         return geometry::coarea_integral(ConvexDomain::cube(1.0),
                                          [](double z) { return 1.0 / std::sqrt(z); });
       }},
      {"energy_constant_j", [] { return bogoliubov::energy_constant_j(); }},
      {"depletion_constant_xi", [] { return bogoliubov::depletion_constant_xi(); }},
      {"bulk_energy_density_a1", [] { return bogoliubov::bulk_energy_density(params(1.0)); }},
      {"bulk_depletion_zero_T_a1",
       [] { return bogoliubov::bulk_depletion_zero_T(params(1.0)); }},
      {"bulk_depletion_finite_T_a0.5_beta1",
       [] { return bogoliubov::bulk_depletion_finite_T(params(0.5, 1.0)); }},
      {"bulk_depletion_finite_T_a1_beta1",
       [] { return bogoliubov::bulk_depletion_finite_T(params(1.0, 1.0)); }},
      {"brown_constant_cube2_eta0.5",
       [] {
         const ConvexDomain d = ConvexDomain::cube(2.0);
         return bounds::estimate_brown_constant(d, bounds::EtaParameter(0.5),
                                                bounds::BrownGrid::standard(d));
       }},
      {"pathria_c_estimate_ratio2_L20",
       [] {
         const double n = 2.0 * free_gas::critical_number(20.0, 1.0);
         return free_gas::condensate_decomposition(n, 20.0, 1.0).c_estimate;
       }},
  };
  return table;
}

}  // namespace

bool VerifyResult::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
}

std::vector<CheckRow> VerifyResult::failures() const {
  std::vector<CheckRow> f;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(f),
               [](const CheckRow& r) { return !r.passed; });
  return f;
}

std::map<std::string, GoldenEntry> load_goldens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open golden file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("golden file '" + path + "': " + e.what());
  }
  if (!doc.contains("schema_version") || doc["schema_version"] != kSchemaVersion ||
      !doc.contains("values") || !doc["values"].is_object()) {
    throw ConfigError("golden file '" + path + "': unsupported layout");
  }
  std::map<std::string, GoldenEntry> out;
  for (const auto& item : doc["values"].items()) {
    try {
      out[item.key()] = {item.value().at("value").get<double>(),
                         item.value().at("rel_tol").get<double>()};
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("golden file: entry '" + item.key() + "' needs value and rel_tol");
    }
  }
  return out;
}

double evaluate_golden(const std::string& name) {
  const auto& table = golden_table();
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("no evaluator for golden value '" + name + "'");
  return it->second();
}

VerifyResult run_verify(const VerifyConfig& c) {
  validate_verify(c);
  using Runner = void (*)(const VerifyConfig&, std::vector<CheckRow>&);
  static const std::map<std::string, Runner> runners{
      {"i1_identity", i1_identity},         {"k_integral_rep", k_integral_rep},
      {"gr6682", gr6682},                   {"trace_duality", trace_duality},
      {"free_gas_duality", free_gas_duality}, {"angelescu_nenciu", angelescu_nenciu},
      {"brown", brown},                     {"goldens", goldens}};
  VerifyResult r;
  for (const auto& name : c.checks) runners.at(name)(c, r.rows);
  return r;
}

Report verify_report(const VerifyResult& r) {
  Report rep;
  rep.stem = "verify";
  rep.table.columns = {"group", "check", "value", "tolerance", "passed"};
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    rep.table.rows.push_back({row.group, row.name, row.value, row.tolerance,
                              static_cast<long>(row.passed)});
    checks.push_back({{"group", row.group},
                      {"check", row.name},
                      {"value", row.value},
                      {"tolerance", row.tolerance},
                      {"passed", row.passed}});
  }
  rep.body["passed"] = r.passed();
  rep.body["failures"] = static_cast<long>(r.failures().size());
  rep.body["checks"] = checks;
  return rep;
}

}  // namespace hkbec::cli
