// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "dslab/gamma_identities.hpp"
#include "dslab/genfun.hpp"
#include "dslab/integral_verify.hpp"
#include "dslab/montecarlo.hpp"
#include "dslab/walks.hpp"

#include "oracles/paths.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace dslab;
using Clock = std::chrono::steady_clock;

const BigRational kProbabilities[] = {BigRational(1, 2), BigRational(1, 3), BigRational(2, 5)};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Counts checks and remembers the first failing one.
struct Tally {
  long total = 0;
  long failures = 0;
  std::string first_failure;

  void add(bool ok, const std::string& what) {
    ++total;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  void add(const VerificationReport& r) { add(r.pass, r.identity_id); }
  Outcome outcome(const std::string& extra = {}) const {
    std::ostringstream s;
    s << total << " checks, " << failures << " failures";
    if (failures) s << " (first: " << first_failure << ")";
    if (!extra.empty()) s << ", " << extra;
    return {failures == 0 && total > 0, s.str()};
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome gamma_sweep() {
  const auto start = Clock::now();
  const SweepSummary s = identity_sweep_summary(20, 20, 50);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = s.total == 5u * 400u * 51u && s.failures == 0 && s.max_residual == 0.0 && secs < 60.0;
  return {ok, std::to_string(s.total) + " checks, " + std::to_string(s.failures) + " failures, max residual " +
                  fmt("%g", s.max_residual) + ", " + fmt("%.2f s", secs)};
}

double relative_residual(const VerificationReport& r) {
  for (const auto& [key, value] : r.details)
    if (key == "relative_residual" && std::holds_alternative<double>(value)) return std::get<double>(value);
  return std::numeric_limits<double>::quiet_NaN();
}

Outcome integral_grid(const std::vector<IntegralCase>& grid, double time_limit) {
  const auto start = Clock::now();
  const auto reports = sweep(grid, QuadratureConfig{});
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Tally t;
  double worst = 0.0;
  for (const auto& r : reports) {
    const double rel = relative_residual(r);
    t.add(r.pass && rel <= 1e-8, r.identity_id);
    if (!(rel <= worst)) worst = rel;
  }
  Outcome o = t.outcome("max relative residual " + fmt("%.3g", worst) + ", " + fmt("%.2f s", secs));
  o.pass = o.pass && secs < time_limit;
  return o;
}

Outcome duplication() {
  Tally t;
  for (long k = 1; k <= 40; ++k) {
    const VerificationReport r = check_duplication(BigRational(k, 2));
    const auto* res = std::get_if<BigRational>(&r.residual);
    t.add(r.pass && res && res->is_zero(), "k = " + std::to_string(k));
  }
  return t.outcome();
}

Outcome darling_siegert() {
  Tally t;
  for (const WalkKind kind : {WalkKind::plus_minus, WalkKind::non_decreasing})
    for (const BigRational& p : kProbabilities) {
      const WalkParams w{p, kind};
      const long step = kind == WalkKind::plus_minus ? 2 : 1;
      for (long a = 1; a <= 5; ++a)
        for (long b = 1; b <= 5; ++b)
          for (long n = a + b; n <= 30; ++n) {
            t.add(check_darling_siegert(w, a, b, n));
            if ((n - a - b) % step) continue;
            for (const CorollaryForm f : {CorollaryForm::occupation, CorollaryForm::passage})
              t.add(check_corollary(w, f, a, b, (n - a - b) / step));
          }
    }
  return t.outcome();
}

bool same_law(const Pmf& pmf, const oracle::Law& law) {
  for (const auto& [n, m] : law)
    if (pmf.at(n) != BigRational::from_raw(m)) return false;
  for (const auto& [n, m] : pmf.mass) {
    const auto it = law.find(n);
    if (it == law.end() || BigRational::from_raw(it->second) != m) return false;
  }
  return true;
}

Outcome brute_force() {
  Tally t;
  for (const BigRational& p : kProbabilities)
    for (const WalkKind kind : {WalkKind::plus_minus, WalkKind::non_decreasing}) {
      const WalkParams w{p, kind};
      const bool pm = kind == WalkKind::plus_minus;
      const oracle::Walk ow{p.raw(), pm};
      const std::string tag = std::string(walk_kind_name(kind)) + " p=" + p.str();
      for (int n = 0; n <= 14; ++n)
        t.add(same_law(pmf_S(w, n), oracle::law_S(ow, n)), tag + " S_" + std::to_string(n));
      for (long a = pm ? -4 : 1; a <= 4; ++a) {
        if (!pm && a == 0) continue;
        t.add(same_law(pmf_T(w, a, 14), oracle::law_T(ow, a, 14)), tag + " T_" + std::to_string(a));
      }
      if (!pm) continue;
      for (long mu = 1; mu <= 4; ++mu)
        for (long nu = 0; nu <= 3; ++nu)
          for (long r = 0; 2 * r + mu + nu <= 14; ++r)
            t.add(same_law(bridge_first_passage(w, mu, nu, r), oracle::law_bridge_passage(ow, mu, nu, r)),
                  tag + " bridge");
      for (long r = 1; r <= 7; ++r)
        t.add(same_law(bridge_return_law(w, r), oracle::law_bridge_return(ow, r)), tag + " bridge return");
    }
  return t.outcome();
}

Outcome generating_functions() {
  Tally t;
  for (const WalkKind kind : {WalkKind::plus_minus, WalkKind::non_decreasing})
    for (const BigRational& p : kProbabilities) {
      const WalkParams w{p, kind};
      const bool pm = kind == WalkKind::plus_minus;
      for (long j = pm ? -6 : 0; j <= 6; ++j) {
        t.add(check_genfun_coefficients(w, j, 60));
        if (j != 0) t.add(check_quotient_relation(w, j, 60));
      }
    }
  return t.outcome();
}

Outcome bridge_law() {
  Tally t;
  const WalkParams half{BigRational(1, 2), WalkKind::plus_minus};
  const WalkParams third{BigRational(1, 3), WalkKind::plus_minus};
  for (long r = 1; r <= 15; ++r) {
    t.add(check_bridge_return(half, r));
    t.add(check_bridge_return(third, r));
    t.add(bridge_return_law(half, r).mass == bridge_return_law(third, r).mass,
          "p-independence r = " + std::to_string(r));
  }
  return t.outcome();
}

Outcome hitting() {
  const VerificationReport r =
      check_hitting_partial_sum({BigRational(2, 5), WalkKind::plus_minus}, 1, 10000, BigRational(1, 1000000));
  std::ostringstream s;
  s << "|partial sum - 2/3| = " << r.residual_magnitude();
  return {r.pass, s.str()};
}

Outcome monte_carlo() {
  const auto start = Clock::now();
  SimConfig cfg;
  cfg.seed = 42;
  cfg.samples = 1000000;
  cfg.horizon = 1000;
  cfg.params = {BigRational(1, 2), WalkKind::plus_minus};

  struct Job {
    std::string name;
    std::function<EmpiricalLaw()> simulate;
    Pmf exact;
  };
  const std::vector<Job> jobs = {
      {"S_10", [&] { return simulate_S(cfg, 10); }, pmf_S(cfg.params, 10)},
      {"T_1", [&] { return simulate_T(cfg, 1); }, pmf_T(cfg.params, 1, cfg.horizon)},
      {"bridge r=4", [&] { return simulate_bridge(cfg, 4); }, bridge_return_law(cfg.params, 4)},
  };
  Tally t;
  std::string stats;
  for (const Job& job : jobs) {
    const EmpiricalLaw first = job.simulate();
    const EmpiricalLaw again = job.simulate();
    const VerificationReport chi = chi_square_check(first, job.exact, 1e-3);
    t.add(chi.pass, job.name + " chi-square");
    t.add(first == again, job.name + " rerun");
    stats += (stats.empty() ? "" : "; ") + job.name + " chi2 " + fmt("%.2f", chi.residual_magnitude()) +
             " < " + fmt("%.2f", chi.tolerance);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o = t.outcome(stats + ", " + fmt("%.2f s", secs) + " including reruns");
  o.pass = o.pass && secs < 120.0;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"gamma identity sweep, mu, nu <= 20, r <= 50, zero residual, < 60 s", gamma_sweep},
      {"convolution integrals, relative residual <= 1e-8, < 60 s",
       [] { return integral_grid(default_convolution_grid(), 60.0); }},
      {"Laplace transforms with tail bound, relative residual <= 1e-8",
       [] { return integral_grid(default_laplace_grid(), 1e300); }},
      {"duplication formula, x = k/2, k = 1..40, zero residual", duplication},
      {"Darling-Siegert convolutions and corollaries, both walks, n <= 30", darling_siegert},
      {"exhaustive path enumeration, n <= 14, three p", brute_force},
      {"generating-function coefficients and quotient to order 60", generating_functions},
      {"bridge first-return law r <= 15, p-independent", bridge_law},
      {"hitting partial sum at p = 2/5 to horizon 10^4 within 1e-6 of 2/3", hitting},
      {"Monte Carlo chi-square S_10, T_1, bridge r=4, seed 42, 10^6 samples, < 120 s", monte_carlo},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s [%2d] %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed ? 1 : 0;
}
