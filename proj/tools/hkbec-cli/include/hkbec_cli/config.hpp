#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkbec/bogoliubov.hpp"

namespace hkbec::cli {

/// Malformed or inconsistent configuration. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct VerifyConfig {
  std::vector<std::string> checks;   // defaults to all_checks()
  std::size_t grid_points = 20;
  double i1_tolerance = 1e-8;
  double k_rep_tolerance = 1e-7;
  double gr_tolerance = 1e-8;
  double free_gas_duality_tolerance = 1e-10;
  double trace_duality_tolerance = 1e-12;
  std::string golden_file;

  static const std::vector<std::string>& all_checks();
};

struct SweepRunConfig {
  std::vector<std::string> quantities{"energy_density"};
  std::vector<double> sizes{4.0, 8.0, 16.0, 32.0};
  std::vector<double> etas{0.25};
  double u0 = 0.5;
  double n0 = 1.0;
  std::optional<double> beta = 1.0;
  double trace_time = 1.0;
  double free_gas_density_ratio = 2.0;
  bogoliubov::QuadratureConfig quadrature{};
};

struct PathriaConfig {
  std::vector<double> sizes{10.0, 20.0, 40.0};   // L / lambda
  std::vector<double> density_ratios{2.0};        // N / N_critical
  double lambda = 1.0;
};

struct RunConfig {
  VerifyConfig verify;
  SweepRunConfig sweep;
  PathriaConfig pathria;
  Format format = Format::csv;
  unsigned jobs = 1;
  std::optional<std::string> out;
  bool timestamp = true;
  bool quiet = false;
};

/// Defaults, with the golden file pointing at the shipped data.
RunConfig default_config();

/// Overlays a JSON document on `base`. Unknown keys and wrong types throw ConfigError.
RunConfig parse_config(const nlohmann::json& doc, RunConfig base);
RunConfig load_config(const std::string& path, RunConfig base);

/// Range checks that need more than one field. Throws ConfigError.
void validate_verify(const VerifyConfig& c);
void validate_sweep(const SweepRunConfig& c);
void validate_pathria(const PathriaConfig& c);

nlohmann::ordered_json to_json(const VerifyConfig& c);
nlohmann::ordered_json to_json(const SweepRunConfig& c);
nlohmann::ordered_json to_json(const PathriaConfig& c);

std::string to_string(Format f);

}  // namespace hkbec::cli
