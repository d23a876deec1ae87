#include "dslab/walks.hpp"
#include "oracles/paths.hpp"

#include <doctest.h>

using namespace dslab;

namespace {

const char* const kProbabilities[] = {"1/2", "1/3", "2/5"};

WalkParams pm(const char* p) { return {BigRational::parse(p), WalkKind::plus_minus}; }
WalkParams nd(const char* p) { return {BigRational::parse(p), WalkKind::non_decreasing}; }

BigRational big(const mpq_class& q) { return BigRational::from_raw(q); }

oracle::Walk oracle_walk(const WalkParams& w) {
  return {w.p.raw(), w.kind == WalkKind::plus_minus};
}

// Every point in either map carries the same mass in the other (absent = 0).
void check_same_law(const Pmf& pmf, const oracle::Law& law) {
  for (const auto& [n, m] : law) CHECK_MESSAGE(pmf.at(n) == big(m), "n = ", n);
  for (const auto& [n, m] : pmf.mass) {
    const auto it = law.find(n);
    CHECK_MESSAGE(m == (it == law.end() ? BigRational(0) : big(it->second)), "n = ", n);
  }
}

}  // namespace

TEST_CASE("pmf_S examples") {
  CHECK(pmf_S(pm("1/2"), 3).at(1) == BigRational(3, 8));
  const Pmf zero = pmf_S(pm("2/5"), 0);
  CHECK(zero.mass.size() == 1);
  CHECK(zero.at(0) == BigRational(1));
  const Pmf s = pmf_S(nd("1/3"), 2);
  CHECK(s.at(0) == BigRational(4, 9));
  CHECK(s.at(1) == BigRational(4, 9));
  CHECK(s.at(2) == BigRational(1, 9));
  CHECK(s.total() == BigRational(1));
  CHECK_FALSE(s.truncated);
}

TEST_CASE("pmf_T examples") {
  CHECK(pmf_T(pm("1/2"), 1, 9).at(3) == BigRational(1, 8));
  CHECK(pmf_T(pm("1/3"), 0, 4).at(2) == BigRational(4, 9));
  CHECK(pmf_T(nd("1/2"), 2, 5).at(3) == BigRational(1, 4));
  CHECK_THROWS_AS(pmf_T(nd("1/2"), 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(pmf_T(pm("1/2"), 5, 3), std::invalid_argument);
}

TEST_CASE("exhaustive path enumeration reproduces S, T and bridge laws for n <= 14") {
  for (const char* p : kProbabilities) {
    for (const WalkParams& w : {pm(p), nd(p)}) {
      const oracle::Walk ow = oracle_walk(w);
      for (int n = 0; n <= 14; ++n) check_same_law(pmf_S(w, n), oracle::law_S(ow, n));
      const long lo = w.kind == WalkKind::plus_minus ? -4 : 1;
      for (long a = lo; a <= 4; ++a) {
        if (w.kind == WalkKind::non_decreasing && a == 0) continue;
        const Pmf t = pmf_T(w, a, 14);
        check_same_law(t, oracle::law_T(ow, a, 14));
      }
    }
    const WalkParams w = pm(p);
    for (long mu = 1; mu <= 4; ++mu)
      for (long nu = 0; nu <= 3; ++nu)
        for (long r = 0; 2 * r + mu + nu <= 14; ++r)
          check_same_law(bridge_first_passage(w, mu, nu, r), oracle::law_bridge_passage(oracle_walk(w), mu, nu, r));
    for (long r = 1; r <= 7; ++r) check_same_law(bridge_return_law(w, r), oracle::law_bridge_return(oracle_walk(w), r));
  }
}

TEST_CASE("hitting probability examples and defective partial sums") {
  CHECK(hitting_probability(pm("2/5"), 1) == BigRational(2, 3));
  CHECK(hitting_probability(pm("1/2"), 7) == BigRational(1));
  CHECK(hitting_probability(pm("2/5"), 0) == BigRational(4, 5));
  // Downward levels are hit with probability 1 when q > p.
  CHECK(hitting_probability(pm("2/5"), -3) == BigRational(1));
  CHECK(hitting_probability(pm("3/5"), -2) == BigRational(4, 9));

  for (const char* p : {"1/3", "2/5"}) {
    const WalkParams w = pm(p);
    for (long a : {1L, 2L, 0L}) {
      const BigRational h = hitting_probability(w, a);
      BigRational previous(0);
      for (long horizon : {10L, 40L, 120L, 200L}) {
        const Pmf t = pmf_T(w, a, horizon);
        const BigRational total = t.total();
        CHECK(total >= previous);
        CHECK(total <= h);
        CHECK(t.truncated);
        CHECK(t.tail_bound == h - total);
        CHECK(total > previous);
        previous = total;
      }
    }
  }
}

TEST_CASE("hitting partial sum to horizon 10^4 at p = 2/5") {
  const VerificationReport r = check_hitting_partial_sum(pm("2/5"), 1, 10000, BigRational(1, 1000000));
  CHECK(r.pass);
  CHECK(r.residual_magnitude() < 1e-6);
}

TEST_CASE("parity") {
  for (const char* p : kProbabilities) {
    const WalkParams w = pm(p);
    for (long n = 0; n <= 20; ++n)
      for (long j = -n - 2; j <= n + 2; ++j) {
        if ((n + j) % 2 != 0) CHECK(prob_S(w, n, j).is_zero());
        if (n >= 1 && (n + j) % 2 != 0) CHECK(prob_T(w, j, n).is_zero());
      }
  }
}

TEST_CASE("reflection examples") {
  const WalkParams w = pm("1/3");
  CHECK(check_reflection(w, 1, 3).pass);
  // P{S_3 = -1} = 3 p q^2 = 4/9 and (q/p) P{S_3 = 1} = 2 * 3 p^2 q = 4/9.
  CHECK(prob_S(w, 3, -1) == BigRational(4, 9));
  CHECK(prob_S(pm("1/2"), 4, -2) == BigRational(1, 4));
  CHECK(prob_S(pm("1/2"), 4, 2) == BigRational(1, 4));
  CHECK(check_reflection(pm("1/2"), 2, 4).pass);
  const VerificationReport odd = check_reflection(w, 2, 3);
  CHECK(odd.pass);
  for (long j = 1; j <= 5; ++j)
    for (long n = 1; n <= 20; ++n) CHECK(check_reflection(pm("2/5"), j, n).pass);
  CHECK_THROWS_AS(check_reflection(nd("1/2"), 1, 3), std::invalid_argument);
}

TEST_CASE("Darling-Siegert examples") {
  CHECK(check_darling_siegert(pm("1/2"), 1, 1, 4).pass);
  CHECK(prob_S(pm("1/2"), 4, 2) == BigRational(1, 4));
  CHECK(check_darling_siegert(nd("1/2"), 1, 1, 3).pass);
  CHECK(prob_T(nd("1/2"), 2, 3) == BigRational(1, 4));
  for (const char* p : kProbabilities) CHECK(check_darling_siegert(pm(p), 1, 0, 1).pass);
  CHECK_THROWS_AS(check_darling_siegert(pm("1/2"), 2, -1, 5), std::invalid_argument);
  CHECK_THROWS_AS(check_darling_siegert(pm("1/2"), -2, 1, 5), std::invalid_argument);
}

TEST_CASE("Darling-Siegert convolution against path enumeration") {
  // Left and right sides rebuilt from oracle laws for short walks.
  for (const char* p : kProbabilities) {
    const oracle::Walk ow{BigRational::parse(p).raw(), true};
    const auto t1 = oracle::law_T(ow, 1, 12);
    const auto t2 = oracle::law_T(ow, 2, 12);
    const auto t3 = oracle::law_T(ow, 3, 12);
    for (int n = 3; n <= 12; ++n) {
      mpq_class conv = 0;
      for (int k = 1; k < n; ++k) {
        const auto a = t1.find(k), b = t2.find(n - k);
        if (a != t1.end() && b != t2.end()) conv += a->second * b->second;
      }
      const auto it = t3.find(n);
      CHECK(conv == (it == t3.end() ? mpq_class(0) : it->second));
    }
  }
}

TEST_CASE("Darling-Siegert identities on the full acceptance grid") {
  long checks = 0;
  for (const char* p : kProbabilities)
    for (const WalkParams& w : {pm(p), nd(p)})
      for (long a = 1; a <= 5; ++a)
        for (long b = 1; b <= 5; ++b)
          for (long n = a + b; n <= 30; ++n) {
            CHECK(check_darling_siegert(w, a, b, n).pass);
            CHECK(check_ds_equivalence(w, a, b, n).pass);
            if (w.kind == WalkKind::plus_minus) CHECK(check_darling_siegert(w, -a, -b, n).pass);
            ++checks;
          }
  // Per (p, kind): sum over a, b of (31 - a - b) = 25 * 31 - 150 = 625.
  CHECK(checks == 3 * 2 * 625);
}

TEST_CASE("corollary forms") {
  for (const char* p : kProbabilities)
    for (const WalkParams& w : {pm(p), nd(p)})
      for (long mu = 1; mu <= 4; ++mu)
        for (long nu = 1; nu <= 4; ++nu)
          for (long r = 0; r <= 8; ++r) {
            CHECK(check_corollary(w, CorollaryForm::occupation, mu, nu, r).pass);
            CHECK(check_corollary(w, CorollaryForm::passage, mu, nu, r).pass);
          }
}

TEST_CASE("ds equivalence examples") {
  CHECK(check_ds_equivalence(pm("1/2"), 1, 1, 3).pass);
  CHECK(prob_T(pm("1/2"), 1, 3) == BigRational(1, 3) * prob_S(pm("1/2"), 3, 1));
  CHECK(prob_T(nd("1/2"), 2, 3) == BigRational(2, 3) * BigRational(3, 8));
  CHECK(check_ds_equivalence(nd("1/2"), 2, 1, 3).pass);
  // a = b = 1, n = 2: 1 * P{T_1=1}^2 = 1/4 = (1 * 2 / 2) P{T_2=2}.
  CHECK(prob_T(pm("1/2"), 1, 1) * prob_T(pm("1/2"), 1, 1) == prob_T(pm("1/2"), 2, 2));
  CHECK(check_ds_equivalence(pm("1/2"), 1, 1, 2).pass);
}

TEST_CASE("bridge laws: examples and p-independence") {
  const Pmf q12 = bridge_return_law(pm("1/2"), 2);
  CHECK(q12.at(2) == BigRational(2, 3));
  CHECK(q12.at(4) == BigRational(1, 3));
  CHECK(q12.total() == BigRational(1));
  const Pmf q13 = bridge_return_law(pm("1/3"), 2);
  CHECK(q13.mass == q12.mass);
  const Pmf point = bridge_first_passage(pm("1/3"), 1, 0, 0);
  CHECK(point.mass.size() == 1);
  CHECK(point.at(1) == BigRational(1));

  for (long r = 1; r <= 15; ++r) {
    CHECK(check_bridge_return(pm("1/2"), r).pass);
    CHECK(check_bridge_return(pm("1/3"), r).pass);
    CHECK(bridge_return_law(pm("1/2"), r).mass == bridge_return_law(pm("1/3"), r).mass);
  }
  for (long mu = 1; mu <= 4; ++mu)
    for (long nu = 0; nu <= 3; ++nu)
      for (long r = 0; r <= 10; ++r) {
        CHECK(check_bridge_closed_form(pm("2/5"), mu, nu, r).pass);
        CHECK(bridge_first_passage(pm("1/2"), mu, nu, r).mass == bridge_first_passage(pm("2/5"), mu, nu, r).mass);
      }
  CHECK_THROWS_AS(bridge_first_passage(nd("1/2"), 1, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(bridge_return_law(pm("1/2"), 0), std::invalid_argument);
}

TEST_CASE("Gamma identity universality across p") {
  for (const char* p : kProbabilities)
    for (long mu = 1; mu <= 4; ++mu)
      for (long nu = 1; nu <= 4; ++nu)
        for (long r = 0; r <= 8; ++r) {
          CHECK(check_gamma_universality(pm(p), GammaIdentity::sum_s, mu, nu, r).pass);
          CHECK(check_gamma_universality(pm(p), GammaIdentity::sum_d, mu, nu, r).pass);
          CHECK(check_gamma_universality(nd(p), GammaIdentity::beta_b, mu, nu, r).pass);
        }
  CHECK_THROWS_AS(check_gamma_universality(pm("1/2"), GammaIdentity::binom, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("negative binomial examples and additivity") {
  const Pmf geo = pmf_negative_binomial(1, BigRational(1, 2), 12);
  for (long n = 0; n <= 12; ++n) CHECK(geo.at(n) == BigRational(1, 2).pow(n + 1));
  CHECK(check_negbin_additivity(2, 3, BigRational(1, 3), 4).pass);
  const Pmf two = pmf_negative_binomial(2, BigRational(1, 2), 0);
  CHECK(two.at(0) == BigRational(1, 4));
  for (long mu = 1; mu <= 4; ++mu)
    for (long nu = 1; nu <= 4; ++nu)
      for (long r = 0; r <= 10; ++r) CHECK(check_negbin_additivity(mu, nu, BigRational(2, 5), r).pass);
}

TEST_CASE("walk parameter validation") {
  CHECK_THROWS_AS(pm("0/1").validate(), std::invalid_argument);
  CHECK_THROWS_AS(pm("1/1").validate(), std::invalid_argument);
  CHECK_THROWS_AS(pm("3/2").validate(), std::invalid_argument);
  CHECK(parse_walk_kind("NON_DECREASING") == WalkKind::non_decreasing);
  CHECK(walk_kind_name(WalkKind::plus_minus) == "PLUS_MINUS");
}

TEST_CASE("pmf serialization") {
  const Pmf t = pmf_T(pm("1/2"), 1, 3);
  const auto j = pmf_to_json(t);
  CHECK(j["kind"] == "PLUS_MINUS");
  CHECK(j["p"] == "1/2");
  CHECK(j["law"] == "T");
  CHECK(j["masses"].size() == 2);
  CHECK(j["masses"][1]["n"] == 3);
  CHECK(j["masses"][1]["mass"] == "1/8");
  CHECK(j["tail_bound"] == "3/8");
  CHECK(pmf_to_csv(pmf_S(nd("1/3"), 1)) == "n,mass_rational,mass_float\n0,2/3,0.66666666666666663\n1,1/3,0.33333333333333331\n");
  CHECK(pmf_to_json(pmf_S(nd("1/3"), 1))["tail_bound"].is_null());
}
