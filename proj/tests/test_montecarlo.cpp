#include "dslab/montecarlo.hpp"
#include "dslab/parallel.hpp"

#include <doctest.h>

#include <cmath>

using namespace dslab;

namespace {

WalkParams pm(const char* p) { return {BigRational::parse(p), WalkKind::plus_minus}; }
WalkParams nd(const char* p) { return {BigRational::parse(p), WalkKind::non_decreasing}; }

SimConfig config(const WalkParams& w, long samples, long horizon = 1000, std::uint64_t seed = 42) {
  SimConfig c;
  c.seed = seed;
  c.samples = samples;
  c.horizon = horizon;
  c.params = w;
  return c;
}

double frequency(const EmpiricalLaw& e, long n) {
  const auto it = e.counts.find(n);
  return it == e.counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(e.samples);
}

// |observed frequency - p| within k binomial standard errors.
bool within_sigma(double freq, double p, long samples, double k) {
  return std::fabs(freq - p) <= k * std::sqrt(p * (1 - p) / static_cast<double>(samples));
}

}  // namespace

TEST_CASE("SplitMix64 reference values") {
  // First outputs for state 0 as published with the generator.
  SplitMix64 g(0);
  CHECK(g.next() == 0xe220a8397b1dcdafULL);
  CHECK(g.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(g.next() == 0x06c45d188009454fULL);
  CHECK_FALSE(rng_description().empty());
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(config(pm("1/2"), 0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(config(pm("1/2"), 10, 0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(simulate_S(config(pm("1/2"), 10, 5), 6), std::invalid_argument);
  CHECK_THROWS_AS(simulate_T(config(pm("1/2"), 10, 2), 3), std::invalid_argument);
  CHECK_THROWS_AS(simulate_T(config(nd("1/2"), 10), 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_bridge(config(nd("1/2"), 10), 2), std::invalid_argument);
}

TEST_CASE("simulate_S examples") {
  const EmpiricalLaw one = simulate_S(config(pm("1/2"), 1000000), 1);
  CHECK(one.counts.size() == 2);
  CHECK(within_sigma(frequency(one, 1), 0.5, one.samples, 4));
  const EmpiricalLaw zero = simulate_S(config(pm("1/3"), 1000), 0);
  CHECK(zero.counts.size() == 1);
  CHECK(zero.counts.at(0) == 1000);
  CHECK(simulate_S(config(pm("1/2"), 5000), 7) == simulate_S(config(pm("1/2"), 5000), 7));
}

TEST_CASE("simulate_T examples") {
  const EmpiricalLaw t1 = simulate_T(config(pm("1/2"), 1000000, 1000), 1);
  CHECK(within_sigma(frequency(t1, 3), 1.0 / 8, t1.samples, 4));
  CHECK(t1.counted() + t1.censored == t1.samples);

  const EmpiricalLaw nd2 = simulate_T(config(nd("1/2"), 200000, 100), 2);
  CHECK(within_sigma(frequency(nd2, 3), 1.0 / 4, nd2.samples, 4));

  // p = 2/5: the fraction of paths that hit 1 approaches 2/3.
  const EmpiricalLaw far = simulate_T(config(pm("2/5"), 100000, 5000), 1);
  const double hit = static_cast<double>(far.counted()) / static_cast<double>(far.samples);
  CHECK(within_sigma(hit, 2.0 / 3, far.samples, 5));
}

TEST_CASE("chi-square acceptance and power") {
  const EmpiricalLaw s10 = simulate_S(config(pm("1/2"), 1000000), 10);
  const VerificationReport ok = chi_square_check(s10, pmf_S(pm("1/2"), 10), 1e-3);
  CHECK(ok.pass);
  const VerificationReport wrong = chi_square_check(s10, pmf_S(pm("3/5"), 10), 1e-3);
  CHECK_FALSE(wrong.pass);
  CHECK(std::get<double>(ok.lhs) < std::get<double>(ok.rhs));
  CHECK_THROWS_AS(chi_square_check(s10, pmf_S(pm("1/2"), 10), 0.0), std::invalid_argument);
}

TEST_CASE("chi-square self-consistency on inverse-CDF samples of the exact law") {
  const Pmf exact = pmf_S(pm("1/3"), 12);
  std::vector<std::pair<long, double>> cdf;
  double acc = 0.0;
  for (const auto& [n, m] : exact.mass) cdf.push_back({n, acc += m.to_double()});
  SplitMix64 rng(2024);
  EmpiricalLaw emp;
  emp.seed = 2024;
  emp.samples = 200000;
  emp.horizon = 12;
  for (long i = 0; i < emp.samples; ++i) {
    const double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    long pick = cdf.back().first;
    for (const auto& [n, c] : cdf)
      if (u < c) {
        pick = n;
        break;
      }
    ++emp.counts[pick];
  }
  CHECK(chi_square_check(emp, exact, 1e-3).pass);
}

TEST_CASE("degenerate and impossible outcomes") {
  const EmpiricalLaw zero = simulate_S(config(pm("1/2"), 100), 0);
  const VerificationReport single = chi_square_check(zero, pmf_S(pm("1/2"), 0));
  CHECK(single.pass);
  CHECK_FALSE(single.notes.empty());

  EmpiricalLaw odd;
  odd.samples = 100;
  odd.horizon = 4;
  odd.counts = {{0, 99}, {1, 1}};
  const VerificationReport impossible = chi_square_check(odd, pmf_S(pm("1/2"), 4));
  CHECK_FALSE(impossible.pass);
}

TEST_CASE("results do not depend on the thread count") {
  const int before = max_threads();
  const SimConfig c = config(pm("2/5"), 50000, 300);
  set_thread_count(1);
  const EmpiricalLaw one = simulate_T(c, 2, Exec::parallel);
  set_thread_count(4);
  const EmpiricalLaw four = simulate_T(c, 2, Exec::parallel);
  set_thread_count(before);
  const EmpiricalLaw serial = simulate_T(c, 2, Exec::serial);
  CHECK(one == four);
  CHECK(one == serial);
  CHECK(empirical_to_json(one).dump() == empirical_to_json(four).dump());
  CHECK_FALSE(simulate_T(config(pm("2/5"), 50000, 300, 43), 2) == one);
}

TEST_CASE("bridge first-return law matches the exact law at two values of p") {
  for (const char* p : {"1/2", "1/3"}) {
    const EmpiricalLaw b = simulate_bridge(config(pm(p), 400000, 8), 4);
    const VerificationReport r = chi_square_check(b, bridge_return_law(pm(p), 4));
    CHECK_MESSAGE(r.pass, "p = ", p);
    CHECK(b.censored > 0);
  }
}

TEST_CASE("censored fraction matches the exact tail within 5 sigma") {
  for (const char* p : {"1/2", "2/5"})
    for (long horizon : {20L, 100L}) {
      const EmpiricalLaw e = simulate_T(config(pm(p), 200000, horizon), 1);
      const Pmf exact = pmf_T(pm(p), 1, horizon);
      const double tail = (BigRational(1) - exact.total()).to_double();
      const double frac = static_cast<double>(e.censored) / static_cast<double>(e.samples);
      CHECK(within_sigma(frac, tail, e.samples, 5));
      CHECK(chi_square_check(e, exact).pass);
    }
}

TEST_CASE("empirical law serialization") {
  const EmpiricalLaw e = simulate_S(config(pm("1/2"), 10), 1);
  const auto j = empirical_to_json(e);
  CHECK(j["seed"] == 42);
  CHECK(j["samples"] == 10);
  CHECK(j["counts"].is_array());
  long total = 0;
  for (const auto& c : j["counts"]) total += c["count"].get<long>();
  CHECK(total + j["censored"].get<long>() == 10);
}
