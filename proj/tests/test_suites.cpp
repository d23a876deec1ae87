#include "dslab/suites.hpp"

#include <doctest.h>

using namespace dslab;

TEST_CASE("every suite passes and serial and parallel runs agree") {
  SuiteOptions opts;
  opts.mu_max = 4;
  opts.nu_max = 4;
  opts.r_max = 6;
  opts.genfun_order = 30;
  for (const auto& name : suite_names()) {
    opts.exec = Exec::parallel;
    const SuiteResult par = run_suite(name, opts);
    opts.exec = Exec::serial;
    const SuiteResult ser = run_suite(name, opts);
    CHECK_MESSAGE(par.summary.all_passed(), name);
    CHECK(par.summary.total > 0);
    CHECK(par.summary.total == ser.summary.total);
    CHECK(par.name == name);
    REQUIRE(par.reports.size() == ser.reports.size());
    for (std::size_t i = 0; i < par.reports.size(); ++i) {
      CHECK(par.reports[i].identity_id == ser.reports[i].identity_id);
      CHECK(to_json(par.reports[i].params) == to_json(ser.reports[i].params));
    }
    if (name == "gamma") {
      CHECK_FALSE(par.reports_complete);
    } else {
      CHECK(par.reports_complete);
      CHECK(par.reports.size() == par.summary.total);
    }
  }
  CHECK_THROWS_AS(run_suite("bogus", opts), std::invalid_argument);
}
