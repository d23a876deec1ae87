#pragma once

// Named verification suites shared by the command-line tool and the
// acceptance binary.

#include "dslab/integral_verify.hpp"
#include "dslab/parallel.hpp"
#include "dslab/report.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dslab {

struct SuiteOptions {
  QuadratureConfig quadrature;
  long mu_max = 20;
  long nu_max = 20;
  long r_max = 50;
  long genfun_order = 60;
  Exec exec = Exec::parallel;
};

struct SuiteResult {
  std::string name;
  SweepSummary summary;
  /// Every report, except for suites run in summary mode (gamma), which
  /// keep only the failing ones here.
  std::vector<VerificationReport> reports;
  bool reports_complete = true;
  double runtime_ms = 0.0;
};

/// "integrals", "laplace", "gamma", "walks", "genfun".
const std::vector<std::string>& suite_names();

/// std::invalid_argument for an unknown name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& opts);

SuiteResult run_integrals_suite(const SuiteOptions& opts);
SuiteResult run_laplace_suite(const SuiteOptions& opts);
SuiteResult run_gamma_suite(const SuiteOptions& opts);
SuiteResult run_walks_suite(const SuiteOptions& opts);
SuiteResult run_genfun_suite(const SuiteOptions& opts);

}  // namespace dslab
