#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkbec_cli/config.hpp"

namespace hkbec::cli {

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// One output file: a flat table for CSV and a structured body for JSON.
struct Report {
  std::string stem;                 // file name without extension
  Table table;
  nlohmann::ordered_json body;      // merged under the top-level JSON object
};

struct Provenance {
  std::string command;
  nlohmann::ordered_json config;
  bool timestamp = true;
};

/// %.16e: 17 significant digits, '.' decimal point regardless of locale.
std::string format_double(double v);

void write_csv(std::ostream& os, const Report& r, const Provenance& p);
void write_json(std::ostream& os, const Report& r, const Provenance& p);

/// Writes each report to out_dir/<stem>.<ext>, or to `fallback` when out_dir is empty.
void emit(const std::vector<Report>& reports, const Provenance& p, Format format,
          const std::string& out_dir, std::ostream& fallback);

}  // namespace hkbec::cli
