#include <algorithm>

#include "hkbec_cli/commands.hpp"

namespace hkbec::cli {

bool SweepResult::dominance_holds() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const bounds::ConvergenceReport& r) { return r.dominance_holds(); });
}

SweepResult run_sweep(const SweepRunConfig& c, unsigned jobs) {
  validate_sweep(c);
  bounds::SweepConfig cfg;
  cfg.params = {c.u0, c.n0, c.beta};
  cfg.quadrature = c.quadrature;
  cfg.trace_time = c.trace_time;
  cfg.free_gas_density_ratio = c.free_gas_density_ratio;
  cfg.jobs = jobs;
  SweepResult out;
  for (const auto& name : c.quantities) {
    const auto q = *bounds::parse_quantity(name);
    for (double eta : c.etas) {
      out.reports.push_back(bounds::convergence_sweep(q, c.sizes, cfg, bounds::EtaParameter(eta)));
    }
  }
  return out;
}

Report sweep_report(const bounds::ConvergenceReport& r) {
  const bool free_gas = r.quantity == bounds::SweepQuantity::free_gas_residual;
  Report rep;
  char eta[32];
  std::snprintf(eta, sizeof eta, "%g", r.eta);
  rep.stem = "sweep_" + bounds::to_string(r.quantity) + "_eta" + eta;
  rep.table.columns = {"size", "value", "bulk_ref", "abs_diff", "envelope", "ratio"};
  if (free_gas) rep.table.columns.push_back("c_estimate");

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.sizes.size(); ++i) {
    std::vector<Cell> cells{r.sizes[i],     r.values[i],    r.bulk_ref,
                            r.abs_diffs[i], r.envelopes[i], r.ratios[i]};
    nlohmann::ordered_json j{{"size", r.sizes[i]},         {"value", r.values[i]},
                             {"abs_diff", r.abs_diffs[i]}, {"envelope", r.envelopes[i]},
                             {"ratio", r.ratios[i]}};
    if (free_gas) {
      cells.push_back(r.c_estimates[i]);
      j["c_estimate"] = r.c_estimates[i];
    }
    rep.table.rows.push_back(std::move(cells));
    rows.push_back(std::move(j));
  }

  auto& b = rep.body;
  b["quantity"] = bounds::to_string(r.quantity);
  b["eta"] = r.eta;
  b["bulk_ref"] = r.bulk_ref;
  b["fitted_exponent"] = r.fitted_exponent;
  b["fit_r2"] = r.fit_r2;
  b["fit_points"] = r.fit_points;
  b["guaranteed_exponent"] = r.guaranteed_exponent;
  b["envelope_constant"] = r.envelope_constant;
  b["max_ratio"] = r.max_ratio;
  b["noise_floor"] = r.noise_floor;
  b["floor_limited"] = r.floor_limited;
  b["dominance_holds"] = r.dominance_holds();
  b["violations"] = r.violations;
  b["rows"] = rows;
  return rep;
}

}  // namespace hkbec::cli
