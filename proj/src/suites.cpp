#include "dslab/suites.hpp"
#include "dslab/bessel.hpp"
#include "dslab/gamma_identities.hpp"
#include "dslab/genfun.hpp"
#include "dslab/walks.hpp"

#include <chrono>
#include <functional>
#include <limits>
#include <stdexcept>

namespace dslab {

namespace {

const BigRational kProbabilities[] = {BigRational(1, 2), BigRational(1, 3), BigRational(2, 5)};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// A job that throws becomes a failing report carrying the message.
VerificationReport run_guarded(const std::function<VerificationReport()>& job) {
  try {
    return job();
  } catch (const std::exception& e) {
    VerificationReport r;
    r.identity_id = "CHECK_ERROR";
    r.method = "exact";
    r.lhs = r.rhs = r.residual = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    r.notes.push_back(e.what());
    return r;
  }
}

// Runs jobs in order (in parallel when requested), keeping report order.
std::vector<VerificationReport> run_jobs(const std::vector<std::function<VerificationReport()>>& jobs, Exec exec) {
  std::vector<VerificationReport> out(jobs.size());
  const long n = static_cast<long>(jobs.size());
  if (exec == Exec::serial) {
    for (long i = 0; i < n; ++i) out[i] = run_guarded(jobs[i]);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) out[i] = run_guarded(jobs[i]);
  }
  return out;
}

void absorb(SuiteResult& s, std::vector<VerificationReport> reports) {
  for (auto& r : reports) {
    s.summary.add(r);
    s.reports.push_back(std::move(r));
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"integrals", "laplace", "gamma", "walks", "genfun"};
  return names;
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& opts) {
  if (name == "integrals") return run_integrals_suite(opts);
  if (name == "laplace") return run_laplace_suite(opts);
  if (name == "gamma") return run_gamma_suite(opts);
  if (name == "walks") return run_walks_suite(opts);
  if (name == "genfun") return run_genfun_suite(opts);
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

SuiteResult run_integrals_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteResult s;
  s.name = "integrals";
  absorb(s, sweep(default_convolution_grid(), opts.quadrature, opts.exec));
  std::vector<std::function<VerificationReport()>> jobs;
  for (double mu : {2.0, 2.5, 3.0, 5.0})
    for (double x : {0.5, 1.0, 5.0, 20.0}) jobs.push_back([=] { return check_recurrences(mu, x); });
  for (int mu : {0, 1, 2, 5})
    for (double x : {0.5, 2.0, 10.0}) jobs.push_back([=] { return check_integral_form(mu, x); });
  absorb(s, run_jobs(jobs, opts.exec));
  s.runtime_ms = elapsed_ms(start);
  return s;
}

SuiteResult run_laplace_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteResult s;
  s.name = "laplace";
  absorb(s, sweep(default_laplace_grid(), opts.quadrature, opts.exec));
  std::vector<std::function<VerificationReport()>> jobs;
  for (double nu : {0.5, 1.0, 2.0, 3.0})
    for (double alpha0 : {0.5, 2.0}) jobs.push_back([=] { return check_laplace_alpha_integral(nu, alpha0, 1.0); });
  absorb(s, run_jobs(jobs, opts.exec));
  s.runtime_ms = elapsed_ms(start);
  return s;
}

SuiteResult run_gamma_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteResult s;
  s.name = "gamma";
  s.summary = identity_sweep_summary(opts.mu_max, opts.nu_max, opts.r_max, opts.exec);
  s.reports = s.summary.failed;
  s.reports_complete = false;
  std::vector<std::function<VerificationReport()>> jobs;
  for (long k = 1; k <= 40; ++k) jobs.push_back([=] { return check_duplication(BigRational(k, 2)); });
  for (long mu = 1; mu <= 6; ++mu)
    for (long nu = 0; nu <= 6; ++nu)
      for (long r = 0; r <= 20; ++r) jobs.push_back([=] { return check_conditional_normalization(mu, nu, r); });
  absorb(s, run_jobs(jobs, opts.exec));
  s.runtime_ms = elapsed_ms(start);
  return s;
}

SuiteResult run_walks_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteResult s;
  s.name = "walks";
  std::vector<std::function<VerificationReport()>> jobs;
  for (const WalkKind kind : {WalkKind::plus_minus, WalkKind::non_decreasing}) {
    for (const BigRational& p : kProbabilities) {
      const WalkParams w{p, kind};
      const bool pm = kind == WalkKind::plus_minus;
      const long step = pm ? 2 : 1;
      for (long a = 1; a <= 5; ++a)
        for (long b = 1; b <= 5; ++b)
          for (long n = a + b; n <= 30; ++n) {
            jobs.push_back([=] { return check_darling_siegert(w, a, b, n); });
            if (pm) jobs.push_back([=] { return check_darling_siegert(w, -a, -b, n); });
            jobs.push_back([=] { return check_ds_equivalence(w, a, b, n); });
            const long rest = n - a - b;
            if (rest % step == 0)
              for (const CorollaryForm f : {CorollaryForm::occupation, CorollaryForm::passage})
                jobs.push_back([=] { return check_corollary(w, f, a, b, rest / step); });
          }
      for (long mu = 1; mu <= 4; ++mu)
        for (long nu = 1; nu <= 4; ++nu)
          for (long r = 0; r <= 8; ++r) {
            if (pm) {
              jobs.push_back([=] { return check_gamma_universality(w, GammaIdentity::sum_s, mu, nu, r); });
              jobs.push_back([=] { return check_gamma_universality(w, GammaIdentity::sum_d, mu, nu, r); });
            } else {
              jobs.push_back([=] { return check_gamma_universality(w, GammaIdentity::beta_b, mu, nu, r); });
            }
          }
      if (!pm) continue;
      for (long j = 1; j <= 5; ++j)
        for (long n = 1; n <= 20; ++n) jobs.push_back([=] { return check_reflection(w, j, n); });
      for (long mu = 1; mu <= 4; ++mu)
        for (long nu = 0; nu <= 3; ++nu)
          for (long r = 0; r <= 10; ++r) jobs.push_back([=] { return check_bridge_closed_form(w, mu, nu, r); });
      for (long r = 1; r <= 15; ++r) jobs.push_back([=] { return check_bridge_return(w, r); });
    }
  }
  for (const BigRational& p : kProbabilities)
    for (long mu = 1; mu <= 4; ++mu)
      for (long nu = 1; nu <= 4; ++nu)
        for (long r = 0; r <= 10; ++r) jobs.push_back([=] { return check_negbin_additivity(mu, nu, p, r); });
  jobs.push_back([] {
    return check_hitting_partial_sum({BigRational(2, 5), WalkKind::plus_minus}, 1, 10000, BigRational(1, 1000000));
  });
  absorb(s, run_jobs(jobs, opts.exec));
  s.runtime_ms = elapsed_ms(start);
  return s;
}

SuiteResult run_genfun_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteResult s;
  s.name = "genfun";
  const long order = opts.genfun_order;
  std::vector<std::function<VerificationReport()>> jobs;
  for (const WalkKind kind : {WalkKind::plus_minus, WalkKind::non_decreasing})
    for (const BigRational& p : kProbabilities) {
      const WalkParams w{p, kind};
      const bool pm = kind == WalkKind::plus_minus;
      for (long j = pm ? -6 : 0; j <= 6; ++j) {
        jobs.push_back([=] { return check_genfun_coefficients(w, j, order); });
        if (j == 0) continue;
        jobs.push_back([=] { return check_quotient_relation(w, j, order); });
        if (pm) jobs.push_back([=] { return check_G_recurrence(w, j, order); });
      }
      for (long a = 1; a <= 3; ++a)
        for (long b = 1; b <= 3; ++b) {
          jobs.push_back([=] { return check_passage_product(w, a, b, order); });
          if (pm) jobs.push_back([=] { return check_passage_product(w, -a, -b, order); });
        }
    }
  for (const BigRational& c : {BigRational(1), BigRational(8, 9), BigRational(24, 25)})
    jobs.push_back([=] { return check_sqrt_routes(c, order); });
  absorb(s, run_jobs(jobs, opts.exec));
  s.runtime_ms = elapsed_ms(start);
  return s;
}

}  // namespace dslab
