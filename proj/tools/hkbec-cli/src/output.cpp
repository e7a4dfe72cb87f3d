#include "hkbec_cli/output.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace hkbec::cli {
namespace {

#ifndef HKBEC_VERSION
#define HKBEC_VERSION "unknown"
#endif

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::ordered_json provenance_json(const Provenance& p) {
  nlohmann::ordered_json j;
  j["tool"] = "hkbec-cli";
  j["version"] = HKBEC_VERSION;
  j["command"] = p.command;
  if (p.timestamp) j["timestamp"] = utc_timestamp();
  j["config"] = p.config;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  if (const long* l = std::get_if<long>(&c)) return std::to_string(*l);
  return csv_field(std::get<std::string>(c));
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Report& r, const Provenance& p) {
  os << "# schema_version: " << kSchemaVersion << '\n';
  const auto prov = provenance_json(p);
  for (const auto& item : prov.items()) {
    os << "# " << item.key() << ": "
       << (item.value().is_string() ? item.value().get<std::string>() : item.value().dump())
       << '\n';
  }
  for (const auto& item : r.body.items()) {
    const auto& v = item.value();
    if (v.is_array() || v.is_object()) continue;
    os << "# " << item.key() << ": ";
    if (v.is_number_float()) {
      os << format_double(v.get<double>());
    } else if (v.is_string()) {
      os << v.get<std::string>();
    } else {
      os << v.dump();
    }
    os << '\n';
  }
  for (std::size_t i = 0; i < r.table.columns.size(); ++i) {
    os << (i ? "," : "") << r.table.columns[i];
  }
  os << '\n';
  for (const auto& row : r.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Report& r, const Provenance& p) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["provenance"] = provenance_json(p);
  for (const auto& item : r.body.items()) j[item.key()] = item.value();
  os << j.dump(2) << '\n';
}

void emit(const std::vector<Report>& reports, const Provenance& p, Format format,
          const std::string& out_dir, std::ostream& fallback) {
  const auto write = [&](std::ostream& os, const Report& r) {
    if (format == Format::csv) {
      write_csv(os, r, p);
    } else {
      write_json(os, r, p);
    }
  };
  if (out_dir.empty()) {
    for (const auto& r : reports) write(fallback, r);
    return;
  }
  std::filesystem::create_directories(out_dir);
  for (const auto& r : reports) {
    const auto path = std::filesystem::path(out_dir) / (r.stem + "." + to_string(format));
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write(os, r);
  }
}

}  // namespace hkbec::cli
