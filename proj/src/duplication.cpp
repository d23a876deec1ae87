#include "dslab/exact_arith.hpp"
#include "dslab/report.hpp"

#include <chrono>
#include <stdexcept>

namespace dslab {

VerificationReport check_duplication(const BigRational& x) {
  const auto start = std::chrono::steady_clock::now();
  const BigRational twice = x * BigRational(2);
  if (!twice.is_integer() || twice.sign() <= 0)
    throw std::invalid_argument("check_duplication: 2x must be a positive integer, got x = " +
                                x.str());
  const long k = twice.numerator().get_si();

  const SqrtPiMultiple lhs{gamma_int(k), 0};
  const SqrtPiMultiple power_of_two{BigRational(2).pow(k - 1), 0};
  const SqrtPiMultiple sqrt_pi{BigRational(1), 1};
  const SqrtPiMultiple rhs = power_of_two * gamma_of_half_multiple(k).as_multiple() *
                             gamma_of_half_multiple(k + 1).as_multiple() / sqrt_pi;

  VerificationReport r;
  r.identity_id = "DUPLICATION";
  r.method = "exact";
  r.params = {{"x", x.str()}};
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = 0.0;
  if (lhs.sqrt_pi_power == rhs.sqrt_pi_power) {
    const BigRational diff = lhs.coefficient - rhs.coefficient;
    r.residual = diff;
    r.pass = diff.is_zero();
  } else {
    r.residual = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    r.notes.push_back("sides carry different powers of sqrt(pi)");
  }
  r.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace dslab
