#include "dslab/exact_arith.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dslab {

BigRational::BigRational(const BigInt& num, const BigInt& den) : value_(num, den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  value_.canonicalize();
}

BigRational BigRational::from_raw(mpq_class v) {
  BigRational r;
  r.value_ = std::move(v);
  r.value_.canonicalize();
  return r;
}

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

BigRational BigRational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  if (negative) n = -n;
  return BigRational(n, d);
}

std::string BigRational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

BigRational BigRational::abs() const { return from_raw(::abs(value_)); }

BigRational BigRational::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  return BigRational(value_.get_den(), value_.get_num());
}

BigRational BigRational::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  // Powers of coprime integers stay coprime.
  BigRational r;
  r.value_.get_num() = std::move(n);
  r.value_.get_den() = std::move(d);
  return r;
}

BigRational& BigRational::operator+=(const BigRational& o) {
  value_ += o.value_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& o) {
  value_ -= o.value_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& o) {
  value_ *= o.value_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
  value_ /= o.value_;
  return *this;
}
BigRational BigRational::operator-() const { return from_raw(-value_); }

namespace {

struct FactorialTable {
  std::vector<BigInt> values;
  FactorialTable() : values(kFactorialMemoCap + 1) {
    values[0] = 1;
    for (unsigned long i = 1; i <= kFactorialMemoCap; ++i) values[i] = values[i - 1] * i;
  }
};

const FactorialTable& table() {
  static const FactorialTable t;
  return t;
}

}  // namespace

const BigInt& factorial_memo(unsigned long n) {
  if (n > kFactorialMemoCap) throw std::out_of_range("factorial_memo: n above memo cap");
  return table().values[n];
}

BigInt factorial(unsigned long n) {
  if (n <= kFactorialMemoCap) return table().values[n];
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigRational gamma_int(long n) {
  if (n <= 0) throw std::domain_error("gamma_int: pole at non-positive integer " + std::to_string(n));
  return BigRational(factorial(static_cast<unsigned long>(n - 1)));
}

BigInt binomial_int(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigRational binomial(long n, long k) { return BigRational(binomial_int(n, k)); }

SqrtPiMultiple SqrtPiMultiple::operator*(const SqrtPiMultiple& o) const {
  return {coefficient * o.coefficient, sqrt_pi_power + o.sqrt_pi_power};
}

SqrtPiMultiple SqrtPiMultiple::operator/(const SqrtPiMultiple& o) const {
  return {coefficient / o.coefficient, sqrt_pi_power - o.sqrt_pi_power};
}

double SqrtPiMultiple::to_double() const {
  return coefficient.to_double() * std::pow(std::sqrt(std::numbers::pi), sqrt_pi_power);
}

HalfIntGamma gamma_half(long m) {
  if (m < 1 || m % 2 == 0)
    throw std::domain_error("gamma_half: argument must be a positive odd integer, got " +
                            std::to_string(m));
  // Gamma(m/2) = (m-2)!! / 2^((m-1)/2) * sqrt(pi)
  BigInt double_fact = 1;
  for (long j = m - 2; j > 1; j -= 2) double_fact *= j;
  BigInt pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>((m - 1) / 2));
  return {BigRational(double_fact, pow2), 1};
}

HalfIntGamma gamma_of_half_multiple(long m) {
  if (m < 1) throw std::domain_error("gamma_of_half_multiple: argument must be >= 1");
  if (m % 2 == 0) return {gamma_int(m / 2), 0};
  return gamma_half(m);
}

}  // namespace dslab
