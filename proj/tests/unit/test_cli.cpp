#include <cmath>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "hkbec_cli/app.hpp"
#include "hkbec_cli/commands.hpp"
#include "hkbec_cli/config.hpp"
#include "hkbec_cli/output.hpp"

namespace fs = std::filesystem;
namespace cli = hkbec::cli;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("hkbec_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
  return cells;
}

const std::string kSmallSweep =
    R"({"sweep": {"quantities": ["trace_density"], "sizes": [2, 4, 8], "etas": [0.5]}})";

}  // namespace

TEST(CliVerify, DefaultPasses) {
  const Invocation r = run({"verify", "--no-timestamp"});
  EXPECT_EQ(r.code, cli::kExitPass) << r.err;
  EXPECT_EQ(r.err.find("FAIL"), std::string::npos);
}

TEST(CliVerify, TightToleranceFails) {
  TempDir dir;
  const auto cfg = dir.write(
      "c.json", R"({"verify": {"checks": ["k_integral_rep"], "k_rep_tolerance": 1e-14}})");
  const Invocation r = run({"verify", "--config", cfg});
  EXPECT_EQ(r.code, cli::kExitCheckFailure);
  EXPECT_NE(r.err.find("FAIL k_integral_rep"), std::string::npos) << r.err;
}

TEST(CliConfig, EmptyChecksIsUsageError) {
  TempDir dir;
  const auto cfg = dir.write("c.json", R"({"verify": {"checks": []}})");
  EXPECT_EQ(run({"verify", "--config", cfg}).code, cli::kExitUsage);
}

TEST(CliConfig, SingleSizeSweepIsUsageError) {
  TempDir dir;
  const auto cfg = dir.write("c.json", R"({"sweep": {"sizes": [4]}})");
  EXPECT_EQ(run({"sweep", "--config", cfg}).code, cli::kExitUsage);
}

TEST(CliConfig, UnknownKeysAreRejected) {
  TempDir dir;
  EXPECT_EQ(run({"verify", "--config", dir.write("a.json", R"({"verbose": true})")}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--config", dir.write("b.json", R"({"sweep": {"size": [1, 2, 3]}})")}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--config", dir.write("c.json", "{not json")}).code, cli::kExitUsage);
}

TEST(CliArgs, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--config", "/nonexistent/config.json"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitPass);
}

TEST(CliSweep, CsvLayout) {
  TempDir dir;
  const Invocation r = run({"sweep", "--config", dir.write("c.json", kSmallSweep), "--no-timestamp"});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  EXPECT_EQ(r.out.rfind("# schema_version: 1", 0), 0u) << r.out.substr(0, 80);
  EXPECT_NE(r.out.find("# command: sweep"), std::string::npos);
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "size,value,bulk_ref,abs_diff,envelope,ratio");
  const std::regex sci(R"(-?\d\.\d{16}e[+-]\d{2,3})");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i]);
    ASSERT_EQ(cells.size(), 6u);
    for (const auto& c : cells) EXPECT_TRUE(std::regex_match(c, sci)) << c;
  }
}

TEST(CliSweep, JsonCarriesSchemaAndProvenance) {
  TempDir dir;
  const Invocation r = run({"sweep", "--config", dir.write("c.json", kSmallSweep), "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("provenance").at("command"), "sweep");
  EXPECT_TRUE(j.at("provenance").contains("timestamp"));
  EXPECT_EQ(j.at("provenance").at("config").at("sweep").at("sizes").size(), 3u);
  EXPECT_EQ(j.at("rows").size(), 3u);
}

TEST(CliSweep, OutputIsReproducibleWithoutTimestamp) {
  TempDir dir;
  const auto cfg = dir.write("c.json", kSmallSweep);
  const Invocation a = run({"sweep", "--config", cfg, "--no-timestamp", "--jobs", "3"});
  const Invocation b = run({"sweep", "--config", cfg, "--no-timestamp", "--jobs", "3"});
  const Invocation serial = run({"sweep", "--config", cfg, "--no-timestamp", "--jobs", "1"});
  ASSERT_EQ(a.code, cli::kExitPass);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(data_lines(a.out), data_lines(serial.out));
}

TEST(CliSweep, WritesFilesToOutDirectory) {
  TempDir dir;
  const auto out = (dir.path() / "out").string();
  const Invocation r = run({"sweep", "--config", dir.write("c.json", kSmallSweep), "--out", out});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(out)) {
    ++files;
    EXPECT_EQ(e.path().extension(), ".csv");
    EXPECT_EQ(e.path().filename().string().rfind("sweep_trace_density_eta", 0), 0u);
  }
  EXPECT_EQ(files, 1u);
}

TEST(CliPathria, CondensateFractionGrowsWithSize) {
  cli::PathriaConfig c;
  c.sizes = {10.0, 20.0, 40.0};
  c.density_ratios = {2.0, 0.5};
  const auto rows = cli::run_pathria(c, 2);
  ASSERT_EQ(rows.size(), 6u);
  std::vector<double> fractions;
  for (const auto& r : rows) {
    EXPECT_LE(r.duality_rel_diff, 1e-10);
    if (r.density_ratio == 2.0) {
      EXPECT_TRUE(r.condensed);
      EXPECT_LT(r.mu_beta, 0.0);
      EXPECT_NEAR(r.n_condensate + r.n_bulk + r.residual, r.n_target, 1e-9 * r.n_target);
      fractions.push_back(r.condensate_fraction);
    } else {
      EXPECT_FALSE(r.condensed);
      EXPECT_LT(r.condensate_fraction, 0.02);
    }
  }
  ASSERT_EQ(fractions.size(), 3u);
  EXPECT_LT(fractions[0], fractions[1]);
  EXPECT_LT(fractions[1], fractions[2]);
  EXPECT_LT(fractions[2], 0.5);
}

TEST(CliPathria, SubcriticalPointsAreNoted) {
  TempDir dir;
  const auto cfg = dir.write("c.json", R"({"pathria": {"sizes": [10, 20], "density_ratios": [0.5, 2]}})");
  const Invocation r = run({"pathria", "--config", cfg});
  EXPECT_EQ(r.code, cli::kExitPass) << r.err;
  EXPECT_NE(r.err.find("not condensed"), std::string::npos);
}

TEST(CliGoldens, LoadErrors) {
  TempDir dir;
  EXPECT_THROW(cli::load_goldens((dir.path() / "missing.json").string()), cli::ConfigError);
  EXPECT_THROW(cli::load_goldens(dir.write("a.json", R"({"schema_version": 2, "values": {}})")),
               cli::ConfigError);
  EXPECT_THROW(cli::load_goldens(dir.write("b.json", R"({"schema_version": 1})")), cli::ConfigError);
  EXPECT_THROW(cli::evaluate_golden("no_such_quantity"), cli::ConfigError);
}

TEST(CliGoldens, ShippedFileMatchesRecomputation) {
  const auto goldens = cli::load_goldens(HKBEC_TEST_GOLDEN);
  EXPECT_GE(goldens.size(), 16u);
  for (const auto& [name, g] : goldens) {
    const double v = cli::evaluate_golden(name);
    EXPECT_LE(std::abs(v - g.value), g.rel_tol * std::abs(g.value)) << name;
  }
}

TEST(CliOutput, FormatDoubleIsScientific16) {
  EXPECT_EQ(cli::format_double(1.0), "1.0000000000000000e+00");
  EXPECT_EQ(cli::format_double(-2.5e-300), "-2.5000000000000000e-300");
}
