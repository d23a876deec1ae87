#include "dslab/gamma_identities.hpp"
#include "dslab/walks.hpp"
#include "oracles/combinatorics.hpp"

#include <doctest.h>

#include <algorithm>

using namespace dslab;
namespace o = oracle;

namespace {

// Both sides of each identity straight from factorials in mpq_class.
struct Sides {
  mpq_class lhs, rhs;
};

Sides oracle_sides(GammaIdentity id, long mu, long nu, long r) {
  Sides s;
  s.lhs = 0;
  for (long k = 0; k <= r; ++k) {
    const long j = r - k;
    switch (id) {
      case GammaIdentity::sum_s:
        s.lhs += mpq_class(o::gamma_int(2 * k + mu) * o::gamma_int(2 * j + nu),
                           o::factorial(k) * o::gamma_int(k + mu + 1) * o::factorial(j) * o::gamma_int(j + nu));
        break;
      case GammaIdentity::sum_d:
        s.lhs += mpq_class(o::gamma_int(2 * k + mu) * o::gamma_int(2 * j + nu),
                           o::factorial(k) * o::gamma_int(k + mu + 1) * o::factorial(j) * o::gamma_int(j + nu + 1));
        break;
      case GammaIdentity::beta_b:
        s.lhs += mpq_class(o::gamma_int(k + mu) * o::gamma_int(j + nu), o::factorial(k) * o::factorial(j));
        break;
      case GammaIdentity::binom:
        s.lhs += o::binomial(k + mu - 1, mu - 1) * o::binomial(j + nu - 1, nu - 1);
        break;
      case GammaIdentity::pascal_conv:
        break;
    }
  }
  const long n = r + mu + nu;
  switch (id) {
    case GammaIdentity::sum_s:
      s.rhs = mpq_class(o::gamma_int(2 * r + mu + nu), mu * o::factorial(r) * o::gamma_int(r + mu + nu));
      break;
    case GammaIdentity::sum_d:
      s.rhs = (mpq_class(1, mu) + mpq_class(1, nu)) *
              mpq_class(o::gamma_int(2 * r + mu + nu), o::factorial(r) * o::gamma_int(r + mu + nu + 1));
      break;
    case GammaIdentity::beta_b:
      s.rhs = mpq_class(o::gamma_int(mu) * o::gamma_int(nu), o::gamma_int(mu + nu)) *
              mpq_class(o::gamma_int(r + mu + nu), o::factorial(r));
      break;
    case GammaIdentity::binom:
      s.rhs = o::binomial(r + mu + nu - 1, mu + nu - 1);
      break;
    case GammaIdentity::pascal_conv:
      for (long k = mu; k <= n - nu; ++k) s.lhs += o::binomial(k - 1, mu - 1) * o::binomial(n - k, nu);
      s.rhs = o::binomial(n, mu + nu);
      break;
  }
  s.lhs.canonicalize();
  s.rhs.canonicalize();
  return s;
}

BigRational to_big(const mpq_class& q) { return BigRational::from_raw(q); }

}  // namespace

TEST_CASE("spec examples for the three Gamma identities and the binomial form") {
  const VerificationReport s = check_identity({GammaIdentity::sum_s, 1, 1, 1});
  CHECK(s.pass);
  CHECK(std::get<BigRational>(s.lhs) == BigRational(3));
  CHECK(std::get<BigRational>(s.rhs) == to_big(mpq_class(o::gamma_int(4), o::factorial(1) * o::gamma_int(3))));

  const VerificationReport d = check_identity({GammaIdentity::sum_d, 1, 1, 1});
  CHECK(d.pass);
  CHECK(std::get<BigRational>(d.lhs) == BigRational(2));

  const VerificationReport b = check_identity({GammaIdentity::beta_b, 1, 1, 2});
  CHECK(b.pass);
  CHECK(std::get<BigRational>(b.lhs) == BigRational(3));
  CHECK(std::get<BigRational>(b.rhs) == to_big(mpq_class(o::gamma_int(4), 2)));

  const VerificationReport bin = check_identity({GammaIdentity::binom, 1, 1, 2});
  CHECK(bin.pass);
  CHECK(std::get<BigRational>(bin.rhs) == to_big(mpq_class(o::binomial(3, 1))));
  CHECK(bin.identity_id == "EQ_BINOM");
}

TEST_CASE("library sides match the factorial oracle on a grid") {
  for (const GammaIdentity id : kAllGammaIdentities)
    for (long mu = 1; mu <= 6; ++mu)
      for (long nu = 1; nu <= 6; ++nu)
        for (long r = 0; r <= 12; ++r) {
          const IdentityInstance inst{id, mu, nu, r};
          const Sides o = oracle_sides(id, mu, nu, r);
          BigRational lhs;
          for (const auto& t : identity_summands(inst)) lhs += t;
          CHECK(lhs == to_big(o.lhs));
          CHECK(identity_rhs(inst) == to_big(o.rhs));
          CHECK(o.lhs == o.rhs);
        }
}

TEST_CASE("reports carry exact rational strings and zero residual") {
  const VerificationReport r = check_identity({GammaIdentity::sum_d, 3, 4, 7});
  const auto j = to_json(r);
  CHECK(j["lhs"].is_string());
  CHECK(j["rhs"].is_string());
  CHECK(j["residual"] == "0/1");
  CHECK(j["tolerance"] == 0.0);
  CHECK(j["method"] == "exact");
}

TEST_CASE("symmetry of the beta identity under mu <-> nu") {
  for (long mu = 1; mu <= 7; ++mu)
    for (long nu = 1; nu <= 7; ++nu)
      for (long r = 0; r <= 10; ++r) {
        const IdentityInstance a{GammaIdentity::beta_b, mu, nu, r}, b{GammaIdentity::beta_b, nu, mu, r};
        CHECK(identity_rhs(a) == identity_rhs(b));
        auto sa = identity_summands(a);
        const auto sb = identity_summands(b);
        std::reverse(sa.begin(), sa.end());
        CHECK(sa == sb);
      }
}

TEST_CASE("beta and binomial forms agree after the factorial rewrite") {
  // Gamma(k + mu) / k! = (mu - 1)! C(k + mu - 1, mu - 1), so each beta summand
  // is (mu - 1)! (nu - 1)! times the binomial summand.
  for (long mu = 1; mu <= 8; ++mu)
    for (long nu = 1; nu <= 8; ++nu)
      for (long r = 0; r <= 12; ++r) {
        const auto sb = identity_summands({GammaIdentity::beta_b, mu, nu, r});
        const auto sn = identity_summands({GammaIdentity::binom, mu, nu, r});
        const BigRational scale = gamma_int(mu) * gamma_int(nu);
        REQUIRE(sb.size() == sn.size());
        for (std::size_t k = 0; k < sb.size(); ++k) CHECK(sb[k] == scale * sn[k]);
        CHECK(check_identity({GammaIdentity::beta_b, mu, nu, r}).pass ==
              check_identity({GammaIdentity::binom, mu, nu, r}).pass);
      }
}

TEST_CASE("conditional weights: examples, normalization and positivity") {
  const auto w = conditional_weights(1, 0, 1);
  REQUIRE(w.size() == 2);
  // p_0 = C(1,0) C(2,1) / C(3,1) = 2/3, p_1 = C(1,1) C(2,2) / C(3,3) / 3 = 1/3.
  CHECK(w[0] == BigRational(2, 3));
  CHECK(w[1] == BigRational(1, 3));
  CHECK(check_conditional_normalization(1, 0, 1).pass);
  CHECK(check_conditional_normalization(2, 3, 5).pass);
  const auto w0 = conditional_weights(1, 0, 0);
  REQUIRE(w0.size() == 1);
  CHECK(w0[0] == BigRational(1));
  for (long mu = 1; mu <= 6; ++mu)
    for (long nu = 0; nu <= 6; ++nu)
      for (long r = 0; r <= 15; ++r) {
        CHECK(check_conditional_normalization(mu, nu, r).pass);
        for (long k = 0; k <= r; ++k) {
          const mpq_class oracle_w(o::binomial(r, k) * o::binomial(r + mu + nu, k + mu) * mu,
                                   o::binomial(2 * r + mu + nu, 2 * k + mu) * (2 * k + mu));
          CHECK(conditional_weights(mu, nu, r)[k] == to_big(oracle_w));
        }
      }
}

TEST_CASE("conditional weights equal the walk quotient for every tested p") {
  for (const char* p : {"1/2", "1/3", "2/5", "7/9"}) {
    const WalkParams w{BigRational::parse(p), WalkKind::plus_minus};
    for (long mu = 1; mu <= 4; ++mu)
      for (long nu = 0; nu <= 3; ++nu)
        for (long r = 0; r <= 6; ++r) {
          const auto weights = conditional_weights(mu, nu, r);
          const BigRational denom = prob_S(w, 2 * r + mu + nu, mu + nu);
          for (long k = 0; k <= r; ++k) {
            const BigRational quotient = prob_T(w, mu, 2 * k + mu) * prob_S(w, 2 * r - 2 * k + nu, nu) / denom;
            CHECK(quotient == weights[k]);
          }
        }
  }
}

TEST_CASE("identity sweep counts, order and outcome") {
  const auto small = identity_sweep(1, 1, 0, Exec::serial);
  CHECK(small.size() == 5);
  for (const auto& r : small) CHECK(r.pass);

  // r runs over 0..r_max, so (3, 3, 3) has 3 * 3 * 4 grid points.
  const auto reports = identity_sweep(3, 3, 3, Exec::serial);
  CHECK(reports.size() == 5 * 3 * 3 * 4);
  CHECK(reports[0].identity_id == "EQ_S");
  CHECK(reports[4].identity_id == "EQ_PASCAL_CONV");
  for (const auto& r : reports) CHECK(r.pass);

  const auto par = identity_sweep(3, 3, 3, Exec::parallel);
  REQUIRE(par.size() == reports.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].identity_id == reports[i].identity_id);
    CHECK(to_json(par[i].params) == to_json(reports[i].params));
    CHECK(to_json(par[i].lhs) == to_json(reports[i].lhs));
  }

  const SweepSummary s = identity_sweep_summary(6, 6, 10, Exec::parallel);
  CHECK(s.total == 5 * 6 * 6 * 11);
  CHECK(s.failures == 0);
  CHECK(s.max_residual == 0.0);
  CHECK_THROWS_AS(identity_sweep(0, 1, 1), std::invalid_argument);
}

TEST_CASE("invalid instances are rejected") {
  CHECK_THROWS_AS(check_identity({GammaIdentity::sum_s, 0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(check_identity({GammaIdentity::sum_s, 1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(check_identity({GammaIdentity::sum_s, 1, 1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(check_identity({static_cast<GammaIdentity>(17), 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(parse_gamma_identity("EQ_X"), std::invalid_argument);
  CHECK(parse_gamma_identity("EQ_B") == GammaIdentity::beta_b);
}
