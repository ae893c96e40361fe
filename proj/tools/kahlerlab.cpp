// kahlerlab: run the verification suite and inspect curvature quantities.
//
// Exit status: 0 all selected checks pass, 1 some check fails, 2 invalid
// configuration or inadmissible input, 3 internal evaluation error.

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "kahler/diastasis.hpp"
#include "kahler/error.hpp"
#include "kahler/metric.hpp"
#include "kahler/report.hpp"
#include "kahler/verify.hpp"

namespace {

using namespace kahler;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

struct RunOptions {
  bool all = false;
  std::vector<std::string> checks;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<int> n;
  std::optional<unsigned> jobs;
  std::vector<std::string> tolerances;  // tier=value
  std::optional<std::string> format;
  std::optional<std::string> output;
  std::string config_path;
  bool timing = false;
};

struct EvalOptions {
  std::string metric;
  std::string kind;
  std::string point;
  std::string center;
  std::string direction;
};

std::uint64_t parse_seed(std::string_view s, std::string_view source) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError("invalid seed '" + std::string(s) + "' from " + std::string(source));
  return v;
}

/// Resolved configuration; precedence is flag > config file > environment > default.
struct Resolved {
  std::vector<std::string> ids;
  verify::SuiteConfig suite;
  report::Format format = report::Format::Json;
  std::optional<std::string> output;
  bool timing = false;
};

Resolved resolve(const RunOptions& opt) {
  Resolved r;
  bool all = opt.all;
  std::vector<std::string> checks = opt.checks;

  if (const char* env = std::getenv("KAHLER_SEED"); env != nullptr && *env != '\0')
    r.suite.seed = parse_seed(env, "KAHLER_SEED");

  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError("cannot read config file '" + opt.config_path + "'");
    nlohmann::json cfg;
    try {
      cfg = nlohmann::json::parse(in);
      if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");
      for (const auto& [key, value] : cfg.items()) {
        if (key == "checks") {
          if (value.is_string() && value.get<std::string>() == "all") all = true;
          else if (checks.empty() && !all) checks = value.get<std::vector<std::string>>();
        } else if (key == "seed") {
          r.suite.seed = value.get<std::uint64_t>();
        } else if (key == "samples") {
          r.suite.samples = value.get<int>();
        } else if (key == "n") {
          r.suite.n = value.get<int>();
        } else if (key == "jobs") {
          r.suite.jobs = value.get<unsigned>();
        } else if (key == "tolerances") {
          for (const auto& [tier, tol] : value.items()) r.suite.tol.set(tier, tol.get<double>());
        } else if (key == "format") {
          r.format = report::parse_format(value.get<std::string>());
        } else if (key == "output") {
          r.output = value.get<std::string>();
        } else if (key == "timing") {
          r.timing = value.get<bool>();
        } else {
          throw ConfigError("unknown config field '" + key + "'");
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file '" + opt.config_path + "': " + e.what());
    }
  }

  if (opt.seed) r.suite.seed = *opt.seed;
  if (opt.samples) r.suite.samples = *opt.samples;
  if (opt.n) r.suite.n = *opt.n;
  if (opt.jobs) r.suite.jobs = *opt.jobs;
  for (const auto& t : opt.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol expects tier=value, got '" + t + "'");
    double v = 0.0;
    const std::string num = t.substr(eq + 1);
    const auto res = std::from_chars(num.data(), num.data() + num.size(), v);
    if (num.empty() || res.ec != std::errc{} || res.ptr != num.data() + num.size())
      throw ConfigError("invalid tolerance value in '" + t + "'");
    r.suite.tol.set(t.substr(0, eq), v);
  }
  if (opt.format) r.format = report::parse_format(*opt.format);
  if (opt.output) r.output = opt.output;
  r.timing = r.timing || opt.timing;

  if (all && !checks.empty()) throw ConfigError("--all and --check are mutually exclusive");
  if (!all && checks.empty()) throw ConfigError("select checks with --all or --check");
  r.ids = all ? verify::all_check_ids() : checks;
  r.suite.validate();
  for (const auto& id : r.ids) (void)verify::find_check(id);
  return r;
}

int run_verify(const RunOptions& opt) {
  Resolved cfg;
  std::ofstream file;
  try {
    cfg = resolve(opt);
    if (cfg.output) {
      file.open(*cfg.output, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("cannot open output path '" + *cfg.output + "' for writing");
    }
  } catch (const Error& e) {
    std::cerr << "kahlerlab: " << e.what() << "\n";
    return kExitConfig;
  }

  std::vector<verify::CheckReport> reports;
  try {
    reports = verify::run_checks(cfg.ids, cfg.suite);
  } catch (const ConfigError& e) {
    std::cerr << "kahlerlab: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "kahlerlab: evaluation error: " << e.what() << "\n";
    return kExitInternal;
  }

  const std::string text = report::render(reports, cfg.format, {cfg.timing});
  if (cfg.output) {
    file << text;
    file.close();
    if (!file) {
      std::cerr << "kahlerlab: failed writing '" << *cfg.output << "'\n";
      return kExitConfig;
    }
  } else {
    std::cout << text;
  }
  for (const auto& r : reports)
    if (!r.pass) return kExitFail;
  return 0;
}

KahlerPotential metric_for(const std::string& name, int n) {
  if (name == "flat") return potentials::flat(n);
  if (name == "fs") return potentials::fubini_study(n);
  if (name == "s") return potentials::simanca(n);
  if (name == "eh") {
    if (n != 2) throw ConfigError("the Eguchi-Hanson metric needs a point in C^2");
    return potentials::eguchi_hanson();
  }
  throw ConfigError("unknown metric '" + name + "' (expected flat, fs, s or eh)");
}

int run_eval(const EvalOptions& opt) {
  try {
    const Point p = report::parse_point(opt.point);
    const auto phi = metric_for(opt.metric, static_cast<int>(p.size()));
    if (opt.kind == "metric") {
      std::cout << report::format_matrix(metric::metric_at(phi, p)) << "\n";
    } else if (opt.kind == "ricci") {
      std::cout << report::format_matrix(metric::ricci_at(phi, p)) << "\n";
    } else if (opt.kind == "scalar") {
      std::cout << report::format_real(metric::scalar_trace(phi, p)) << "\n";
    } else if (opt.kind == "hsc") {
      if (opt.direction.empty()) throw ConfigError("--kind hsc needs --direction");
      std::cout << report::format_real(metric::hsc_at(phi, p, report::parse_point(opt.direction))) << "\n";
    } else if (opt.kind == "diastasis") {
      if (opt.center.empty()) throw ConfigError("--kind diastasis needs --center");
      const Point q = report::parse_point(opt.center);
      if (q.size() != p.size()) throw ConfigError("--center and --point differ in dimension");
      std::cout << report::format_real(diastasis::diastasis_from_potential(phi, q)(p)) << "\n";
    } else {
      throw ConfigError("unknown kind '" + opt.kind + "' (expected metric, ricci, scalar, hsc or diastasis)");
    }
  } catch (const ConfigError& e) {
    std::cerr << "kahlerlab: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "kahlerlab: inadmissible input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "kahlerlab: evaluation error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}

int run_list() {
  for (const auto& spec : verify::registry()) {
    std::cout << spec.id << "\t" << spec.default_samples << (spec.is_probe ? " restarts" : " samples") << "\t"
              << spec.description << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kahler curvature and diastasis verification suite"};
  app.require_subcommand(1);

  RunOptions run;
  auto* verify_cmd = app.add_subcommand("verify", "run registered checks and write a report");
  verify_cmd->add_flag("--all", run.all, "run every registered check");
  verify_cmd->add_option("--check", run.checks, "check id (repeatable)")->delimiter(',');
  verify_cmd->add_option("--seed", run.seed, "base seed (default: $KAHLER_SEED or 42)");
  verify_cmd->add_option("--samples", run.samples, "samples per check, at least 10");
  verify_cmd->add_option("--n", run.n, "dimension for the Burns-Simanca checks (2-4)");
  verify_cmd->add_option("--jobs", run.jobs, "concurrent checks (0: one per hardware thread)");
  verify_cmd->add_option("--tol", run.tolerances, "tolerance override tier=value (repeatable)");
  verify_cmd->add_option("--format", run.format, "json, csv or text");
  verify_cmd->add_option("--output", run.output, "report path (default: stdout)");
  verify_cmd->add_option("--config", run.config_path, "JSON run configuration");
  verify_cmd->add_flag("--timing", run.timing, "publish measured wall times");

  EvalOptions ev;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a curvature quantity at a point");
  eval_cmd->add_option("--metric", ev.metric, "flat, fs, s or eh")->required();
  eval_cmd->add_option("--kind", ev.kind, "metric, ricci, scalar, hsc or diastasis")->required();
  eval_cmd->add_option("--point", ev.point, "comma-separated complex coordinates, e.g. 0.7,0.3i")->required();
  eval_cmd->add_option("--center", ev.center, "diastasis center");
  eval_cmd->add_option("--direction", ev.direction, "tangent direction for hsc");

  auto* list_cmd = app.add_subcommand("list-checks", "list registered checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (verify_cmd->parsed()) return run_verify(run);
  if (eval_cmd->parsed()) return run_eval(ev);
  if (list_cmd->parsed()) return run_list();
  return kExitConfig;
}
