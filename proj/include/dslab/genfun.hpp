#pragma once

// Truncated power series over exact rationals and the closed-form
// generating functions of the walk laws.

#include "dslab/exact_arith.hpp"
#include "dslab/report.hpp"
#include "dslab/walks.hpp"

#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace dslab {

/// Raised when an exact computation contradicts a structural expectation,
/// e.g. a division by xi^k with a non-zero coefficient below xi^k.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// c_0 + c_1 xi + ... + c_N xi^N, exact modulo xi^(N+1). Binary operations
/// between series of different order truncate to the smaller order.
class TruncatedSeries {
 public:
  /// The zero series of order N >= 0.
  explicit TruncatedSeries(long order);
  /// Coefficients beyond the order are dropped, missing ones are zero.
  TruncatedSeries(std::vector<BigRational> coefficients, long order);

  static TruncatedSeries constant(const BigRational& c, long order);
  /// c * xi^k.
  static TruncatedSeries monomial(const BigRational& c, long k, long order);

  long order() const { return static_cast<long>(coeffs_.size()) - 1; }
  const BigRational& operator[](long n) const { return coeffs_.at(n); }
  const std::vector<BigRational>& coefficients() const { return coeffs_; }

  TruncatedSeries truncate(long order) const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const BigRational& c) const;
  TruncatedSeries operator-() const;
  /// Division by a series with non-zero constant term (std::domain_error otherwise).
  TruncatedSeries operator/(const TruncatedSeries& o) const;

  /// Multiplicative inverse; requires a non-zero constant term.
  TruncatedSeries inverse() const;
  /// Non-negative integer power.
  TruncatedSeries pow(long k) const;
  /// f(xi^2).
  TruncatedSeries compose_square() const;
  /// Square root with constant term 1 by Newton iteration (the input must
  /// have constant term 1; std::domain_error otherwise).
  TruncatedSeries sqrt() const;
  /// f / xi^k; the result has order N - k. Throws InconsistencyError when
  /// a coefficient below xi^k is non-zero.
  TruncatedSeries shift_down(long k) const;
  /// xi^k f, same order.
  TruncatedSeries shift_up(long k) const;

  /// Sum of the coefficients, i.e. the partial sum at xi = 1.
  BigRational coefficient_sum() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<BigRational> coeffs_;
};

/// (1 - c xi^2)^(1/2) from the explicit coefficients
/// 1 - 2 sum_n (1/n) C(2n-2, n-1) (c/4)^n xi^(2n).
TruncatedSeries sqrt_one_minus(const BigRational& c, long order);
/// (1 - c xi^2)^(-1/2) = sum_n C(2n, n) (c/4)^n xi^(2n).
TruncatedSeries inv_sqrt_one_minus(const BigRational& c, long order);

/// sum_n P{S_n = j} xi^n from the closed form; order >= |j|.
TruncatedSeries genfun_G(const WalkParams& w, long j, long order);
/// sum_n P{T_a = n} xi^n from the closed form; order >= |a|, >= 2 for a = 0.
TruncatedSeries genfun_T(const WalkParams& w, long a, long order);

/// G(xi, a) = G(xi, 0) E(xi^(T_a)) exactly to the given order; a != 0 and
/// order >= |a| + 2.
VerificationReport check_quotient_relation(const WalkParams& w, long a, long order);

/// Newton square root of 1 - c xi^2 against the explicit coefficients,
/// plus the squared-root contract.
VerificationReport check_sqrt_routes(const BigRational& c, long order);

/// Coefficients of genfun_G(j) and genfun_T(j) against prob_S and prob_T.
/// For j = 0 on the +/-1 walk T is the first-return law; for the
/// non-decreasing walk the T part needs j >= 1 and is skipped otherwise.
VerificationReport check_genfun_coefficients(const WalkParams& w, long j, long order);

/// G(j) = p xi G(j-1) + q xi G(j+1) for j != 0 (+/-1 walk).
VerificationReport check_G_recurrence(const WalkParams& w, long j, long order);

/// genfun_T(a) genfun_T(b) = genfun_T(a + b) for same-sign non-zero a, b.
VerificationReport check_passage_product(const WalkParams& w, long a, long b, long order);

/// {"order": N, "coefficients": ["num/den", ...]}.
nlohmann::json series_to_json(const TruncatedSeries& s);

}  // namespace dslab
