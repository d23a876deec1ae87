#pragma once

// Exact integer/rational arithmetic and Gamma values at integer and
// half-integer points.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dslab {

struct VerificationReport;

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
class BigRational {
 public:
  BigRational() = default;

  template <std::signed_integral I>
  BigRational(I v) : value_(static_cast<long>(v)) {}  // NOLINT(implicit)

  template <std::unsigned_integral I>
  BigRational(I v) : value_(static_cast<unsigned long>(v)) {}  // NOLINT(implicit)

  BigRational(const BigInt& v) : value_(v) {}  // NOLINT(implicit)

  /// Throws std::domain_error on a zero denominator.
  BigRational(const BigInt& num, const BigInt& den);

  /// Accepts "n/d" or "n" with optional leading sign. Whitespace, empty
  /// parts and zero denominators are rejected with std::invalid_argument.
  static BigRational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  /// Serialized as "numerator/denominator", e.g. "-3/7" or "5/1".
  std::string str() const;
  double to_double() const { return value_.get_d(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  BigRational abs() const;
  /// Integer power; negative exponents require a non-zero base.
  BigRational pow(long exponent) const;
  BigRational reciprocal() const;

  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  BigRational operator-() const;

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return value_; }
  static BigRational from_raw(mpq_class v);

 private:
  mpq_class value_;
};

/// Largest n whose factorial is memoized.
constexpr unsigned long kFactorialMemoCap = 512;

/// n! for n >= 0.
BigInt factorial(unsigned long n);

/// Reference into the shared immutable factorial table (built on first
/// use); std::out_of_range above kFactorialMemoCap.
const BigInt& factorial_memo(unsigned long n);

/// Gamma(n) = (n-1)! for n >= 1; std::domain_error at the poles n <= 0.
BigRational gamma_int(long n);

/// C(n, k) for n >= 0; zero when k lies outside [0, n].
BigRational binomial(long n, long k);
BigInt binomial_int(long n, long k);

/// coefficient * sqrt(pi)^sqrt_pi_power for any integer power. Products and
/// quotients of Gamma values at half-integers live here.
struct SqrtPiMultiple {
  BigRational coefficient;
  int sqrt_pi_power = 0;

  SqrtPiMultiple operator*(const SqrtPiMultiple& o) const;
  SqrtPiMultiple operator/(const SqrtPiMultiple& o) const;
  friend bool operator==(const SqrtPiMultiple& a, const SqrtPiMultiple& b) {
    if (a.coefficient.is_zero() && b.coefficient.is_zero()) return true;
    return a.sqrt_pi_power == b.sqrt_pi_power && a.coefficient == b.coefficient;
  }
  double to_double() const;
};

/// Gamma(m/2) for integer m >= 1, exactly: coefficient * sqrt(pi) when m is
/// odd, coefficient alone when m is even.
struct HalfIntGamma {
  BigRational coefficient;
  int sqrt_pi_power = 0;  // 0 or 1

  SqrtPiMultiple as_multiple() const { return {coefficient, sqrt_pi_power}; }
  double to_double() const { return as_multiple().to_double(); }
};

/// Gamma(m/2) for odd m >= 1.
HalfIntGamma gamma_half(long m);

/// Gamma(m/2) for any m >= 1 (even m falls back to gamma_int(m/2)).
HalfIntGamma gamma_of_half_multiple(long m);

/// Legendre duplication Gamma(2x) = 2^(2x-1)/sqrt(pi) Gamma(x) Gamma(x+1/2)
/// at x with 2x a positive integer, evaluated in SqrtPiMultiple form. Passes
/// only on an exactly zero residual.
VerificationReport check_duplication(const BigRational& x);

}  // namespace dslab
