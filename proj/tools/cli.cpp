#include "cli.hpp"
#include "config.hpp"

#include "dslab/genfun.hpp"
#include "dslab/montecarlo.hpp"
#include "dslab/parallel.hpp"
#include "dslab/suites.hpp"
#include "dslab/walks.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

namespace dslab::cli {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct Flags {
  std::string output;
  std::string format = "json";
  std::string config_path;
  int threads = 0;
  unsigned long long seed = 42;
  double rel_tol = 0.0, abs_tol = 0.0;
  long report_limit = 10000;

  std::string suite;
  long mu_max = 20, nu_max = 20, r_max = 50, order = 60;

  std::string law;
  std::string kind = "pm";
  std::string p = "1/2";
  long n = 10, a = 1, horizon = 1000, mu = 1, nu = 0, r = 4, j = 0;
  long samples = 1000000;
  double alpha = 1e-3;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

WalkKind parse_kind(const std::string& s) {
  if (s == "pm" || s == "plus_minus" || s == "PLUS_MINUS") return WalkKind::plus_minus;
  if (s == "nd" || s == "non_decreasing" || s == "NON_DECREASING") return WalkKind::non_decreasing;
  throw UsageError("unknown walk kind '" + s + "' (use pm or nd)");
}

WalkParams walk_from(const Flags& f) {
  WalkParams w{BigRational::parse(f.p), parse_kind(f.kind)};
  w.validate();
  return w;
}

void emit(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.output, std::ios::binary);
  if (!file) throw UsageError("cannot write output file '" + f.output + "'");
  file << text;
  if (!file) throw UsageError("failed writing output file '" + f.output + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Failing reports are always kept; passing ones until the limit is reached.
std::vector<const VerificationReport*> select_reports(const std::vector<VerificationReport>& all, long limit,
                                                      long& kept_passing) {
  std::vector<const VerificationReport*> out;
  for (const auto& r : all) {
    if (!r.pass) {
      out.push_back(&r);
    } else if (kept_passing < limit) {
      out.push_back(&r);
      ++kept_passing;
    }
  }
  return out;
}

int cmd_verify(const Flags& f, const SuiteOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (f.suite == "all")
    names = suite_names();
  else
    names = {f.suite};

  bool passed = true;
  long kept_passing = 0;
  json suites = json::array();
  std::vector<VerificationReport> csv_rows;
  for (const auto& name : names) {
    const SuiteResult res = run_suite(name, opts);
    passed = passed && res.summary.all_passed();
    json reports = json::array();
    for (const VerificationReport* r : select_reports(res.reports, f.report_limit, kept_passing)) {
      reports.push_back(to_json(*r));
      csv_rows.push_back(*r);
    }
    const bool complete = res.reports_complete && reports.size() == res.summary.total;
    suites.push_back({{"suite", name},
                      {"total", res.summary.total},
                      {"failures", res.summary.failures},
                      {"max_residual", to_json(Quantity{res.summary.max_residual})},
                      {"passed", res.summary.all_passed()},
                      {"runtime_ms", res.runtime_ms},
                      {"reports_complete", complete},
                      {"reports", std::move(reports)}});
    err << name << ": " << res.summary.total << " checks, " << res.summary.failures << " failures ("
        << res.runtime_ms / 1000.0 << " s)\n";
  }
  if (f.format == "csv") {
    emit(f, reports_to_csv(csv_rows), out);
  } else {
    const json doc = {{"schema_version", kSchemaVersion},
                      {"tool", "dslab"},
                      {"command", "verify " + f.suite},
                      {"settings",
                       {{"rel_tol", opts.quadrature.rel_tol},
                        {"abs_tol", opts.quadrature.abs_tol},
                        {"max_subdivisions", opts.quadrature.max_subdivisions},
                        {"laplace_truncation", opts.quadrature.laplace_truncation},
                        {"mu_max", opts.mu_max},
                        {"nu_max", opts.nu_max},
                        {"r_max", opts.r_max},
                        {"genfun_order", opts.genfun_order},
                        {"threads", max_threads()},
                        {"report_limit", f.report_limit}}},
                      {"passed", passed},
                      {"suites", std::move(suites)}};
    emit(f, dump(doc), out);
  }
  return passed ? kPass : kFail;
}

int cmd_pmf(const Flags& f, std::ostream& out) {
  Pmf pmf;
  if (f.law == "negbin") {
    const BigRational p = BigRational::parse(f.p);
    pmf = pmf_negative_binomial(f.mu, p, f.horizon);
  } else {
    const WalkParams w = walk_from(f);
    if (f.law == "S") {
      pmf = pmf_S(w, f.n);
    } else if (f.law == "T") {
      pmf = pmf_T(w, f.a, f.horizon);
    } else if (f.mu == 1 && f.nu == 0) {
      // The mu = 1, nu = 0 bridge is reported as the first-return law of the
      // bridge of length 2r.
      pmf = bridge_return_law(w, f.r);
    } else {
      pmf = bridge_first_passage(w, f.mu, f.nu, f.r);
    }
  }
  emit(f, f.format == "csv" ? pmf_to_csv(pmf) : dump(pmf_to_json(pmf)), out);
  return kPass;
}

int cmd_simulate(const Flags& f, bool horizon_given, std::ostream& out) {
  SimConfig cfg;
  cfg.seed = f.seed;
  cfg.samples = f.samples;
  cfg.params = walk_from(f);
  cfg.horizon = f.horizon;
  EmpiricalLaw emp;
  Pmf exact;
  if (f.law == "S") {
    if (!horizon_given) cfg.horizon = std::max(cfg.horizon, f.n);
    emp = simulate_S(cfg, f.n);
    exact = pmf_S(cfg.params, f.n);
  } else if (f.law == "T") {
    emp = simulate_T(cfg, f.a);
    exact = pmf_T(cfg.params, f.a, cfg.horizon);
  } else {
    if (!horizon_given) cfg.horizon = std::max(cfg.horizon, 2 * f.r);
    emp = simulate_bridge(cfg, f.r);
    exact = bridge_return_law(cfg.params, f.r);
  }
  VerificationReport chi = chi_square_check(emp, exact, f.alpha);
  // No wall-clock fields, so a rerun with the same seed is byte-identical.
  chi.runtime_ms = 0.0;
  if (f.format == "csv") {
    emit(f, reports_to_csv({chi}), out);
  } else {
    const json doc = {{"schema_version", kSchemaVersion},
                      {"tool", "dslab"},
                      {"command", "simulate " + f.law},
                      {"rng", rng_description()},
                      {"passed", chi.pass},
                      {"empirical", empirical_to_json(emp)},
                      {"exact", pmf_to_json(exact)},
                      {"chi_square", to_json(chi)}};
    emit(f, dump(doc), out);
  }
  return chi.pass ? kPass : kFail;
}

int cmd_series(const Flags& f, std::ostream& out) {
  const WalkParams w = walk_from(f);
  const TruncatedSeries s = f.law == "G" ? genfun_G(w, f.j, f.order) : genfun_T(w, f.a, f.order);
  if (f.format == "csv") {
    std::ostringstream os;
    os << "n,coefficient\n";
    for (long i = 0; i <= s.order(); ++i) os << i << ',' << s[i].str() << '\n';
    emit(f, os.str(), out);
  } else {
    json doc = series_to_json(s);
    doc["series"] = f.law;
    doc["kind"] = std::string(walk_kind_name(w.kind));
    doc["p"] = w.p.str();
    doc["level"] = f.law == "G" ? f.j : f.a;
    emit(f, dump(doc), out);
  }
  return kPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Exact and numerical verification of Bessel convolution identities, Gamma summation "
               "formulas and random-walk convolution laws.",
               "dslab"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  auto* o_output = app.add_option("-o,--output", f.output, "Write results to this file instead of stdout");
  auto* o_format = app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", f.config_path, "Flat key-value config file ([section] key = value)");
  auto* o_threads = app.add_option("--threads", f.threads, "Worker threads (default: DSLAB_THREADS, then OpenMP)")
                        ->check(CLI::PositiveNumber);
  auto* o_seed = app.add_option("--seed", f.seed, "Simulation seed (64-bit unsigned)");
  auto* o_rel = app.add_option("--rel-tol", f.rel_tol, "Relative tolerance for quadrature checks")
                    ->check(CLI::PositiveNumber);
  auto* o_abs = app.add_option("--abs-tol", f.abs_tol, "Absolute tolerance for quadrature checks")
                    ->check(CLI::PositiveNumber);
  auto* o_limit = app.add_option("--report-limit", f.report_limit,
                                 "Maximum number of passing reports written (failures are always written)")
                      ->check(CLI::NonNegativeNumber);
  (void)o_output;

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->fallthrough();
  verify->add_option("suite", f.suite, "integrals | laplace | gamma | walks | genfun | all")
      ->required()
      ->check(CLI::IsMember({"integrals", "laplace", "gamma", "walks", "genfun", "all"}));
  auto* o_mu_max = verify->add_option("--mu-max", f.mu_max, "Gamma sweep: largest mu")->check(CLI::PositiveNumber);
  auto* o_nu_max = verify->add_option("--nu-max", f.nu_max, "Gamma sweep: largest nu")->check(CLI::PositiveNumber);
  auto* o_r_max = verify->add_option("--r-max", f.r_max, "Gamma sweep: largest r")->check(CLI::NonNegativeNumber);
  auto* o_order = verify->add_option("--order", f.order, "Series order for the genfun suite")->check(CLI::NonNegativeNumber);

  auto* pmf = app.add_subcommand("pmf", "Print an exact probability table");
  pmf->fallthrough();
  pmf->add_option("law", f.law, "S | T | bridge | negbin")->required()->check(CLI::IsMember({"S", "T", "bridge", "negbin"}));
  pmf->add_option("--kind", f.kind, "pm (+/-1 steps) or nd (0/1 steps)");
  pmf->add_option("--p", f.p, "Up-step probability as num/den");
  pmf->add_option("--n", f.n, "Time for S");
  pmf->add_option("--a", f.a, "Level for T");
  pmf->add_option("--horizon", f.horizon, "Largest time tabulated for T and negbin");
  pmf->add_option("--mu", f.mu, "Bridge level / negbin order");
  pmf->add_option("--nu", f.nu, "Bridge offset");
  pmf->add_option("--r", f.r, "Bridge size");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run checked against the exact law");
  simulate->fallthrough();
  simulate->add_option("law", f.law, "S | T | bridge")->required()->check(CLI::IsMember({"S", "T", "bridge"}));
  simulate->add_option("--kind", f.kind, "pm or nd");
  simulate->add_option("--p", f.p, "Up-step probability as num/den");
  simulate->add_option("--n", f.n, "Time for S");
  simulate->add_option("--a", f.a, "Level for T");
  simulate->add_option("--r", f.r, "Bridge half-length");
  auto* o_samples = simulate->add_option("--samples", f.samples, "Number of trajectories");
  auto* o_horizon = simulate->add_option("--horizon", f.horizon, "Censoring time");
  auto* o_alpha = simulate->add_option("--alpha", f.alpha, "Chi-square significance level");

  auto* series = app.add_subcommand("series", "Dump a generating function as a truncated series");
  series->fallthrough();
  series->add_option("which", f.law, "G (occupation) or T (passage)")->required()->check(CLI::IsMember({"G", "T"}));
  series->add_option("--kind", f.kind, "pm or nd");
  series->add_option("--p", f.p, "Up-step probability as num/den");
  series->add_option("--j", f.j, "Level for G");
  series->add_option("--a", f.a, "Level for T");
  series->add_option("--order", f.order, "Series order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'dslab --help' for usage\n";
    return kUsage;
  }

  try {
    ConfigMap cfg;
    if (!f.config_path.empty()) cfg = load_config(f.config_path);

    // Config values first, explicit flags override them.
    SuiteOptions opts;
    opts.quadrature.rel_tol = o_rel->count() ? f.rel_tol : config_double(cfg, "quadrature.rel_tol", opts.quadrature.rel_tol);
    opts.quadrature.abs_tol = o_abs->count() ? f.abs_tol : config_double(cfg, "quadrature.abs_tol", opts.quadrature.abs_tol);
    opts.quadrature.max_subdivisions = static_cast<int>(
        config_long(cfg, "quadrature.max_subdivisions", opts.quadrature.max_subdivisions));
    opts.quadrature.laplace_truncation =
        config_double(cfg, "quadrature.laplace_truncation", opts.quadrature.laplace_truncation);
    opts.quadrature.validate();
    opts.mu_max = o_mu_max->count() ? f.mu_max : config_long(cfg, "gamma.mu_max", opts.mu_max);
    opts.nu_max = o_nu_max->count() ? f.nu_max : config_long(cfg, "gamma.nu_max", opts.nu_max);
    opts.r_max = o_r_max->count() ? f.r_max : config_long(cfg, "gamma.r_max", opts.r_max);
    opts.genfun_order = o_order->count() ? f.order : config_long(cfg, "genfun.order", opts.genfun_order);
    if (f.law.empty() || app.got_subcommand(verify)) f.order = opts.genfun_order;
    else if (!series->get_option("--order")->count()) f.order = config_long(cfg, "genfun.order", f.order);

    if (!o_format->count() && cfg.count("run.format")) {
      f.format = cfg.at("run.format");
      if (f.format != "json" && f.format != "csv") throw ConfigError("config: run.format must be json or csv");
    }
    if (!o_seed->count()) f.seed = config_u64(cfg, "run.seed", f.seed);
    if (!o_limit->count()) f.report_limit = config_long(cfg, "run.report_limit", f.report_limit);
    if (f.report_limit < 0) throw ConfigError("config: run.report_limit must be non-negative");
    if (!o_samples->count()) f.samples = config_long(cfg, "simulate.samples", f.samples);
    if (!o_horizon->count()) f.horizon = config_long(cfg, "simulate.horizon", f.horizon);
    if (!o_alpha->count()) f.alpha = config_double(cfg, "simulate.alpha", f.alpha);

    std::optional<int> threads;
    if (o_threads->count())
      threads = f.threads;
    else if (cfg.count("run.threads"))
      threads = static_cast<int>(config_long(cfg, "run.threads", 1));
    set_thread_count(resolve_thread_count(threads));

    if (app.got_subcommand(verify)) return cmd_verify(f, opts, out, err);
    if (app.got_subcommand(pmf)) return cmd_pmf(f, out);
    if (app.got_subcommand(simulate)) return cmd_simulate(f, o_horizon->count() > 0 || cfg.count("simulate.horizon"), out);
    return cmd_series(f, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace dslab::cli
