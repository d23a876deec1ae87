#pragma once

// Exact laws of the +/-1 walk and the non-decreasing 0/1 walk: occupation,
// first passage, first return, bridge conditionals, and the convolution
// identities linking them.

#include "dslab/exact_arith.hpp"
#include "dslab/gamma_identities.hpp"
#include "dslab/report.hpp"

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace dslab {

enum class WalkKind { plus_minus, non_decreasing };

std::string_view walk_kind_name(WalkKind kind);  // "PLUS_MINUS", "NON_DECREASING"
WalkKind parse_walk_kind(std::string_view text);

struct WalkParams {
  BigRational p{1, 2};
  WalkKind kind = WalkKind::plus_minus;

  BigRational q() const { return BigRational(1) - p; }
  /// std::invalid_argument unless 0 < p < 1.
  void validate() const;
};

/// Finite table of exact masses. Only non-zero masses are stored. When the
/// law has infinite support the table covers n <= horizon and tail_bound is
/// the mass the law still places beyond it.
struct Pmf {
  std::string kind;  // walk kind, or "NEGATIVE_BINOMIAL"
  BigRational p;
  std::string law;   // "S", "T", "bridge", "bridge_return", "negbin"
  ParamList params;
  std::map<long, BigRational> mass;
  bool truncated = false;
  BigRational tail_bound;

  std::vector<long> support() const;
  BigRational at(long n) const;
  BigRational total() const;
};

/// P{S_n = j}.
BigRational prob_S(const WalkParams& w, long n, long j);
/// P{T_a = n} with T_a = min{n >= 1 : S_n = a}; a = 0 is the first return.
/// The non-decreasing kind requires a >= 1.
BigRational prob_T(const WalkParams& w, long a, long n);

Pmf pmf_S(const WalkParams& w, long n);
/// Masses for n <= horizon; horizon >= |a| (>= 2 for a = 0).
Pmf pmf_T(const WalkParams& w, long a, long horizon);

/// P{T_a < infinity} for the +/-1 walk; exact because |p - q| is rational.
BigRational hitting_probability(const WalkParams& w, long a);

/// |sum_(n <= horizon) P{T_a = n} - P{T_a < infinity}| <= tol, with the
/// partial sum formed exactly and compared in rationals.
VerificationReport check_hitting_partial_sum(const WalkParams& w, long a, long horizon, const BigRational& tol);

/// P{S_n = -j} = (q/p)^j P{S_n = j} and the same for T_(-j) versus T_j.
VerificationReport check_reflection(const WalkParams& w, long j, long n);

/// Both convolution identities of a level split a + b:
///   P{S_n = a+b} = sum_k P{T_a = k} P{S_(n-k) = b}
///   P{T_(a+b) = n} = sum_k P{T_a = k} P{T_b = n-k}   (b != 0 only)
/// a >= 1, b >= 0, or (+/-1 walk) a <= -1, b <= 0; n >= |a + b|.
/// Sign-mixed pairs throw std::invalid_argument.
VerificationReport check_darling_siegert(const WalkParams& w, long a, long b, long n);

enum class CorollaryForm { occupation, passage };

/// Corollary forms indexed by k = 0..r. For the +/-1 walk
///   occupation: sum_k P{T_mu = 2k+mu} P{S_(2r-2k+nu) = nu} = P{S_(2r+mu+nu) = mu+nu}
///   passage:    sum_k P{T_mu = 2k+mu} P{T_nu = 2r-2k+nu} = P{T_(mu+nu) = 2r+mu+nu}
/// and for the non-decreasing walk the same with k and r in place of 2k, 2r.
VerificationReport check_corollary(const WalkParams& w, CorollaryForm form, long mu, long nu, long r);

/// p_k = P{T_mu = 2k+mu | S_(2r+mu+nu) = mu+nu} as the exact quotient, keyed
/// by the hitting time 2k+mu. +/-1 walk only.
Pmf bridge_first_passage(const WalkParams& w, long mu, long nu, long r);

/// Checks the quotient against the closed binomial form of the weights.
VerificationReport check_bridge_closed_form(const WalkParams& w, long mu, long nu, long r);

/// First-return law of the bridge of length 2r: q_k = p_(k-1) with
/// mu = 1, nu = 0 and r - 1, keyed by the return time 2k. r >= 1.
Pmf bridge_return_law(const WalkParams& w, long r);

/// q_k = P{T_0 = 2k | S_(2r) = 0} exactly for k = 1..r.
VerificationReport check_bridge_return(const WalkParams& w, long r);

/// Summand-by-summand match of sum_s (with nu + 1) and sum_d, normalized by
/// their right sides, against the walk quotients at this p.
VerificationReport check_gamma_universality(const WalkParams& w, GammaIdentity id, long mu, long nu, long r);

/// P{n failures before the mu-th success} = G(n+mu)/(n! G(mu)) p^n q^mu
/// for n <= horizon.
Pmf pmf_negative_binomial(long mu, const BigRational& p, long horizon);

/// sum_k P{Tb_mu = k} P{Tb_nu = r-k} = P{Tb_(mu+nu) = r}.
VerificationReport check_negbin_additivity(long mu, long nu, const BigRational& p, long r);

/// (i) P{T_a = n} = (a/n) P{S_n = a}; (ii) sum_k k P{T_a = k} P{T_b = n-k}
/// = (a n / (a+b)) P{T_(a+b) = n}. a, b >= 1, n >= a + b.
VerificationReport check_ds_equivalence(const WalkParams& w, long a, long b, long n);

nlohmann::json pmf_to_json(const Pmf& pmf);
/// Columns n, mass_rational, mass_float.
std::string pmf_to_csv(const Pmf& pmf);

}  // namespace dslab
