#pragma once

#include <map>
#include <string>
#include <vector>

#include "hkbec/bounds.hpp"
#include "hkbec_cli/config.hpp"
#include "hkbec_cli/output.hpp"

namespace hkbec::cli {

struct CheckRow {
  std::string group;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyResult {
  std::vector<CheckRow> rows;
  bool passed() const;
  std::vector<CheckRow> failures() const;
};

struct GoldenEntry {
  double value = 0.0;
  double rel_tol = 0.0;
};

/// data/golden.json: {"schema_version": 1, "values": {name: {"value", "rel_tol", ...}}}
std::map<std::string, GoldenEntry> load_goldens(const std::string& path);

/// Recomputes a named golden quantity. Throws ConfigError for unknown names.
double evaluate_golden(const std::string& name);

VerifyResult run_verify(const VerifyConfig& c);
Report verify_report(const VerifyResult& r);

struct SweepResult {
  std::vector<bounds::ConvergenceReport> reports;
  bool dominance_holds() const;
};

SweepResult run_sweep(const SweepRunConfig& c, unsigned jobs);
Report sweep_report(const bounds::ConvergenceReport& r);

struct PathriaRow {
  double l_over_lambda = 0.0;
  double density_ratio = 0.0;
  double n_target = 0.0;
  double mu_beta = 0.0;
  double n_condensate = 0.0;
  double condensate_fraction = 0.0;
  double n_bulk = 0.0;
  double residual = 0.0;
  double c_estimate = 0.0;
  double duality_rel_diff = 0.0;
  bool condensed = false;
};

std::vector<PathriaRow> run_pathria(const PathriaConfig& c, unsigned jobs);
Report pathria_report(const std::vector<PathriaRow>& rows);

}  // namespace hkbec::cli
