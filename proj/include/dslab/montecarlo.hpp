#pragma once

// Seeded simulation of both walk kinds and Pearson chi-square comparison of
// the empirical laws with the exact ones.

#include "dslab/parallel.hpp"
#include "dslab/report.hpp"
#include "dslab/walks.hpp"

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace dslab {

/// SplitMix64 (Steele, Lea and Flood). Trajectory i of a run with seed s
/// draws from the stream whose state starts at mix(s ^ mix(i + 1)), so each
/// trajectory is reproducible on its own regardless of scheduling.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  static std::uint64_t mix(std::uint64_t z);
  static SplitMix64 for_trajectory(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
};

/// Human-readable statement of the generator and seeding discipline.
std::string rng_description();

struct SimConfig {
  std::uint64_t seed = 42;
  long samples = 1000000;
  long horizon = 1000;
  WalkParams params;

  void validate() const;
};

/// counts plus censored always add up to samples.
struct EmpiricalLaw {
  std::uint64_t seed = 0;
  long samples = 0;
  long horizon = 0;
  std::map<long, long> counts;
  long censored = 0;

  long counted() const;
  friend bool operator==(const EmpiricalLaw&, const EmpiricalLaw&) = default;
};

/// Law of S_n over cfg.samples trajectories; requires 0 <= n <= horizon.
EmpiricalLaw simulate_S(const SimConfig& cfg, long n, Exec exec = Exec::parallel);

/// Law of T_a; trajectories that have not hit a by the horizon are censored.
/// The non-decreasing walk needs a >= 1; horizon >= |a|.
EmpiricalLaw simulate_T(const SimConfig& cfg, long a, Exec exec = Exec::parallel);

/// First return time to 0 of paths of length 2r kept only when S_(2r) = 0
/// (rejection sampling); rejected paths are counted as censored. +/-1 walk,
/// r >= 1, horizon >= 2r.
EmpiricalLaw simulate_bridge(const SimConfig& cfg, long r, Exec exec = Exec::parallel);

/// Pearson chi-square of emp against exact. Adjacent bins are pooled until
/// every expected count is >= 5. For a truncated exact law the censored
/// samples form one more bin with probability 1 - sum(mass); otherwise they
/// are left out. Passes iff the statistic is below the (1 - alpha_level)
/// quantile; a single pooled bin passes with a warning note.
VerificationReport chi_square_check(const EmpiricalLaw& emp, const Pmf& exact, double alpha_level = 1e-3);

/// {seed, samples, horizon, counts: [{n, count}], censored, rng}.
nlohmann::json empirical_to_json(const EmpiricalLaw& emp);

}  // namespace dslab
