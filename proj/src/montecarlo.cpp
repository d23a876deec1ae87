#include "dslab/montecarlo.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dslab {

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

SplitMix64 SplitMix64::for_trajectory(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix(seed ^ mix(index + 1)));
}

std::string rng_description() {
  return "splitmix64; trajectory i starts from state mix64(seed ^ mix64(i + 1)); "
         "a step is up (or +1) iff the next 64-bit draw is below floor(p * 2^64)";
}

void SimConfig::validate() const {
  params.validate();
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

long EmpiricalLaw::counted() const {
  long t = 0;
  for (const auto& [n, c] : counts) t += c;
  return t;
}

namespace {

// floor(p * 2^64), saturating just below 2^64.
std::uint64_t step_threshold(const BigRational& p) {
  mpz_class scaled = p.numerator();
  scaled <<= 64;
  scaled /= p.denominator();
  mpz_class cap = 1;
  cap <<= 64;
  if (scaled >= cap) scaled = cap - 1;
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, scaled.get_mpz_t());
  return out;
}

// Outcome of one trajectory; values outside [lo, hi] or nullopt count as censored.
using Trajectory = std::function<std::optional<long>(SplitMix64&)>;

EmpiricalLaw run(const SimConfig& cfg, long lo, long hi, const Trajectory& one, Exec exec) {
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<long> total(width, 0);
  long censored = 0;
  const auto chunk = [&](long begin, long end, std::vector<long>& hist, long& cens) {
    for (long i = begin; i < end; ++i) {
      SplitMix64 rng = SplitMix64::for_trajectory(cfg.seed, static_cast<std::uint64_t>(i));
      const std::optional<long> v = one(rng);
      if (v && *v >= lo && *v <= hi)
        ++hist[static_cast<std::size_t>(*v - lo)];
      else
        ++cens;
    }
  };
  if (exec == Exec::serial) {
    chunk(0, cfg.samples, total, censored);
  } else {
    // Integer counts merged by addition: the result cannot depend on the
    // thread count or scheduling.
#pragma omp parallel
    {
      std::vector<long> hist(width, 0);
      long cens = 0;
#pragma omp for schedule(static)
      for (long i = 0; i < cfg.samples; ++i) chunk(i, i + 1, hist, cens);
#pragma omp critical
      {
        for (std::size_t k = 0; k < width; ++k) total[k] += hist[k];
        censored += cens;
      }
    }
  }
  EmpiricalLaw law;
  law.seed = cfg.seed;
  law.samples = cfg.samples;
  law.horizon = cfg.horizon;
  law.censored = censored;
  for (std::size_t k = 0; k < width; ++k)
    if (total[k] != 0) law.counts.emplace(lo + static_cast<long>(k), total[k]);
  return law;
}

long step(const WalkParams& w, std::uint64_t threshold, SplitMix64& rng) {
  const bool up = rng.next() < threshold;
  if (w.kind == WalkKind::plus_minus) return up ? 1 : -1;
  return up ? 1 : 0;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

EmpiricalLaw simulate_S(const SimConfig& cfg, long n, Exec exec) {
  cfg.validate();
  if (n < 0 || n > cfg.horizon) throw std::invalid_argument("simulate_S: need 0 <= n <= horizon");
  const std::uint64_t threshold = step_threshold(cfg.params.p);
  const WalkParams w = cfg.params;
  const Trajectory one = [&](SplitMix64& rng) -> std::optional<long> {
    long s = 0;
    for (long t = 0; t < n; ++t) s += step(w, threshold, rng);
    return s;
  };
  return run(cfg, w.kind == WalkKind::plus_minus ? -n : 0, n, one, exec);
}

EmpiricalLaw simulate_T(const SimConfig& cfg, long a, Exec exec) {
  cfg.validate();
  if (cfg.params.kind == WalkKind::non_decreasing && a < 1)
    throw std::invalid_argument("simulate_T: the non-decreasing walk needs a >= 1");
  if (cfg.horizon < std::labs(a)) throw std::invalid_argument("simulate_T: horizon must be >= |a|");
  const std::uint64_t threshold = step_threshold(cfg.params.p);
  const WalkParams w = cfg.params;
  const long horizon = cfg.horizon;
  const Trajectory one = [&](SplitMix64& rng) -> std::optional<long> {
    long s = 0;
    for (long t = 1; t <= horizon; ++t) {
      s += step(w, threshold, rng);
      if (s == a) return t;
    }
    return std::nullopt;
  };
  return run(cfg, 1, horizon, one, exec);
}

EmpiricalLaw simulate_bridge(const SimConfig& cfg, long r, Exec exec) {
  cfg.validate();
  if (cfg.params.kind != WalkKind::plus_minus) throw std::invalid_argument("simulate_bridge: +/-1 walk only");
  if (r < 1) throw std::invalid_argument("simulate_bridge: need r >= 1");
  if (cfg.horizon < 2 * r) throw std::invalid_argument("simulate_bridge: horizon must be >= 2r");
  const std::uint64_t threshold = step_threshold(cfg.params.p);
  const WalkParams w = cfg.params;
  const Trajectory one = [&](SplitMix64& rng) -> std::optional<long> {
    long s = 0, first_return = 0;
    for (long t = 1; t <= 2 * r; ++t) {
      s += step(w, threshold, rng);
      if (s == 0 && first_return == 0) first_return = t;
    }
    if (s != 0) return std::nullopt;
    return first_return;
  };
  return run(cfg, 2, 2 * r, one, exec);
}

VerificationReport chi_square_check(const EmpiricalLaw& emp, const Pmf& exact, double alpha_level) {
  if (!(alpha_level > 0.0 && alpha_level < 1.0)) throw std::invalid_argument("chi_square_check: alpha_level must lie in (0, 1)");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.identity_id = "CHI_SQUARE";
  rep.method = "chi_square";
  rep.params = {{"law", exact.law}, {"p", exact.p.str()}, {"seed", std::to_string(emp.seed)},
                {"samples", std::int64_t{emp.samples}}, {"alpha_level", alpha_level}};

  struct Bin {
    double expected;
    long observed;
  };
  std::vector<Bin> bins;
  const long used = exact.truncated ? emp.samples : emp.samples - emp.censored;

  long unexplained = 0;
  for (const auto& [n, c] : emp.counts)
    if (exact.at(n).is_zero()) unexplained += c;
  for (const auto& [n, m] : exact.mass) {
    const auto it = emp.counts.find(n);
    bins.push_back({m.to_double() * static_cast<double>(used), it == emp.counts.end() ? 0 : it->second});
  }
  if (exact.truncated) {
    const double beyond = (BigRational(1) - exact.total()).to_double();
    bins.push_back({beyond * static_cast<double>(used), emp.censored});
  }

  // Pool adjacent bins until each expected count reaches 5.
  std::vector<Bin> pooled;
  Bin acc{0.0, 0};
  for (const Bin& b : bins) {
    acc.expected += b.expected;
    acc.observed += b.observed;
    if (acc.expected >= 5.0) {
      pooled.push_back(acc);
      acc = {0.0, 0};
    }
  }
  if (acc.expected > 0.0 || acc.observed > 0) {
    if (pooled.empty())
      pooled.push_back(acc);
    else {
      pooled.back().expected += acc.expected;
      pooled.back().observed += acc.observed;
    }
  }

  double statistic = 0.0;
  for (const Bin& b : pooled) {
    const double d = static_cast<double>(b.observed) - b.expected;
    statistic += d * d / b.expected;
  }
  const long dof = static_cast<long>(pooled.size()) - 1;
  double threshold = std::numeric_limits<double>::infinity();
  if (unexplained > 0) {
    statistic = std::numeric_limits<double>::infinity();
    rep.notes.push_back(std::to_string(unexplained) + " samples fell where the exact law has zero mass");
  }
  if (dof >= 1) {
    threshold = boost::math::quantile(boost::math::chi_squared(static_cast<double>(dof)), 1.0 - alpha_level);
    rep.pass = statistic < threshold;
  } else {
    rep.pass = unexplained == 0;
    rep.notes.push_back("warning: a single pooled bin leaves nothing to test");
  }
  rep.lhs = statistic;
  rep.rhs = threshold;
  rep.residual = statistic;
  rep.tolerance = std::isfinite(threshold) ? threshold : 0.0;
  rep.details = {{"statistic", statistic},
                 {"dof", std::int64_t{dof}},
                 {"threshold", threshold},
                 {"bins_before_pooling", static_cast<std::int64_t>(bins.size())},
                 {"samples_used", std::int64_t{used}},
                 {"censored", std::int64_t{emp.censored}},
                 {"rng", rng_description()}};
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

nlohmann::json empirical_to_json(const EmpiricalLaw& emp) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& [n, c] : emp.counts) counts.push_back({{"n", n}, {"count", c}});
  return {{"seed", emp.seed},         {"samples", emp.samples},   {"horizon", emp.horizon},
          {"counts", std::move(counts)}, {"censored", emp.censored}, {"rng", rng_description()}};
}

}  // namespace dslab
