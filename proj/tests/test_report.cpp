#include "dslab/report.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace dslab;

namespace {

VerificationReport sample(bool pass, Quantity residual) {
  VerificationReport r;
  r.identity_id = "EQ_S";
  r.method = "exact";
  r.params = {{"mu", std::int64_t{2}}, {"p", std::string("1/3")}, {"a", 0.5}};
  r.lhs = BigRational(3, 7);
  r.rhs = SqrtPiMultiple{BigRational(-3, 4), 1};
  r.residual = std::move(residual);
  r.pass = pass;
  return r;
}

}  // namespace

TEST_CASE("report JSON fields") {
  const auto j = to_json(sample(true, 1e-3));
  CHECK(j["identity_id"] == "EQ_S");
  CHECK(j["params"]["mu"] == 2);
  CHECK(j["params"]["p"] == "1/3");
  CHECK(j["params"]["a"] == 0.5);
  CHECK(j["lhs"] == "3/7");
  CHECK(j["rhs"]["coeff"] == "-3/4");
  CHECK(j["rhs"]["sqrt_pi"] == 1);
  CHECK(j["residual"] == 1e-3);
  CHECK(j["pass"] == true);
  CHECK_FALSE(j.contains("notes"));
  for (const char* key : {"tolerance", "subdivisions", "runtime_ms"}) CHECK(j.contains(key));
  CHECK(to_json(Quantity{std::numeric_limits<double>::quiet_NaN()}) == "nan");
  CHECK(to_json(Quantity{-std::numeric_limits<double>::infinity()}) == "-inf");
}

TEST_CASE("summary keeps failures and the largest residual") {
  SweepSummary s;
  s.add(sample(true, 1e-3));
  s.add(sample(false, BigRational(-1, 2)));
  s.add(sample(true, SqrtPiMultiple{BigRational(1, 100), 1}));
  CHECK(s.total == 3);
  CHECK(s.failures == 1);
  CHECK(s.failed.size() == 1);
  CHECK(s.max_residual == 0.5);
  CHECK_FALSE(s.all_passed());

  SweepSummary other;
  other.add(sample(true, std::numeric_limits<double>::quiet_NaN()));
  s.merge(other);
  CHECK(s.total == 4);
  CHECK(std::isnan(s.max_residual));
  // NaN is sticky once seen.
  s.add(sample(true, 10.0));
  CHECK(std::isnan(s.max_residual));

  const SweepSummary all = summarize({sample(true, 0.0), sample(true, 0.25)});
  CHECK(all.all_passed());
  CHECK(all.max_residual == 0.25);
}

TEST_CASE("CSV has the report columns and escapes embedded commas") {
  const std::string csv = reports_to_csv({sample(false, BigRational(1, 3))});
  CHECK(csv.rfind("identity_id,params,lhs,rhs,residual,tolerance,pass,subdivisions,runtime_ms\n", 0) == 0);
  CHECK(csv.find("\"{\"\"a\"\":0.5,\"\"mu\"\":2,\"\"p\"\":\"\"1/3\"\"}\"") != std::string::npos);
  CHECK(csv.find(",3/7,") != std::string::npos);
  CHECK(csv.find("-3/4*sqrt(pi)^1") != std::string::npos);
  CHECK(csv.find(",false,") != std::string::npos);
}
