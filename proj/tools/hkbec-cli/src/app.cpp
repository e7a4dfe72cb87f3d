#include "hkbec_cli/app.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "hkbec/error.hpp"
#include "hkbec_cli/commands.hpp"

namespace hkbec::cli {
namespace {

struct Flags {
  std::string config_path;
  std::string out;
  std::string format;
  bool no_timestamp = false;
  unsigned jobs = 0;
  bool quiet = false;
};

RunConfig resolve(const Flags& f) {
  RunConfig c = default_config();
  if (!f.config_path.empty()) c = load_config(f.config_path, std::move(c));
  if (!f.format.empty()) c.format = f.format == "json" ? Format::json : Format::csv;
  if (!f.out.empty()) c.out = f.out;
  if (f.no_timestamp) c.timestamp = false;
  if (f.jobs > 0) c.jobs = f.jobs;
  if (f.quiet) c.quiet = true;
  return c;
}

Provenance provenance(const std::string& command, const RunConfig& c,
                      nlohmann::ordered_json section) {
  Provenance p;
  p.command = command;
  p.timestamp = c.timestamp;
  p.config["format"] = to_string(c.format);
  p.config["jobs"] = c.jobs;
  p.config[command] = std::move(section);
  return p;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const VerifyResult r = run_verify(c.verify);
  emit({verify_report(r)}, provenance("verify", c, to_json(c.verify)), c.format,
       c.out.value_or(""), out);
  const auto failures = r.failures();
  for (const auto& f : failures) {
    err << "FAIL " << f.group << ": " << f.name << " value=" << format_double(f.value)
        << " tolerance=" << format_double(f.tolerance) << '\n';
  }
  if (!c.quiet) err << "verify: " << r.rows.size() << " checks, " << failures.size() << " failed\n";
  return failures.empty() ? kExitPass : kExitCheckFailure;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const SweepResult r = run_sweep(c.sweep, c.jobs);
  std::vector<Report> reports;
  for (const auto& rep : r.reports) reports.push_back(sweep_report(rep));
  emit(reports, provenance("sweep", c, to_json(c.sweep)), c.format, c.out.value_or(""), out);
  for (const auto& rep : r.reports) {
    if (!c.quiet) {
      err << "sweep " << bounds::to_string(rep.quantity) << " eta=" << rep.eta
          << ": exponent=" << rep.fitted_exponent << " r2=" << rep.fit_r2
          << " guaranteed=" << rep.guaranteed_exponent << '\n';
    }
    for (std::size_t i : rep.violations) {
      err << "VIOLATION " << bounds::to_string(rep.quantity) << " eta=" << rep.eta
          << " size=" << rep.sizes[i] << " abs_diff=" << format_double(rep.abs_diffs[i])
          << " bound=" << format_double(rep.envelope_constant * rep.envelopes[i]) << '\n';
    }
  }
  return r.dominance_holds() ? kExitPass : kExitCheckFailure;
}

int cmd_pathria(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto rows = run_pathria(c.pathria, c.jobs);
  emit({pathria_report(rows)}, provenance("pathria", c, to_json(c.pathria)), c.format,
       c.out.value_or(""), out);
  bool ok = true;
  for (const auto& r : rows) {
    if (!r.condensed && !c.quiet) {
      err << "note: L/lambda=" << r.l_over_lambda << " ratio=" << r.density_ratio
          << " is not condensed\n";
    }
    if (!(r.duality_rel_diff <= 1e-10)) {
      ok = false;
      err << "FAIL duality L/lambda=" << r.l_over_lambda << " ratio=" << r.density_ratio
          << " rel_diff=" << format_double(r.duality_rel_diff) << '\n';
    }
  }
  return ok ? kExitPass : kExitCheckFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat-kernel traces, Bogoliubov quantities and thermodynamic-limit sweeps",
               "hkbec-cli"};
  app.fallthrough();
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", f.out, "Output directory (default: standard output)");
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--no-timestamp", f.no_timestamp, "Omit the timestamp from provenance");
  app.add_option("--jobs", f.jobs, "Concurrent evaluations")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", f.quiet, "Only report failures on stderr");
  auto* verify = app.add_subcommand("verify", "Identity, duality, inequality and golden checks");
  auto* sweep = app.add_subcommand("sweep", "Thermodynamic-limit convergence sweeps");
  auto* pathria = app.add_subcommand("pathria", "Free-gas condensate decomposition table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "hkbec-cli: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const RunConfig c = resolve(f);
    if (verify->parsed()) return cmd_verify(c, out, err);
    if (sweep->parsed()) return cmd_sweep(c, out, err);
    if (pathria->parsed()) return cmd_pathria(c, out, err);
  } catch (const ConfigError& e) {
    err << "hkbec-cli: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "hkbec-cli: invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "hkbec-cli: " << e.what() << '\n';
    return kExitCheckFailure;
  }
  return kExitUsage;
}

}  // namespace hkbec::cli
