#pragma once

// Bessel functions of the first kind from the power series
//   J_mu(x) = sum_n (-1)^n / (n! Gamma(n + mu + 1)) (x/2)^(2n + mu),
// with truncation control, and checks of the recurrences that the
// Laplace-transform derivations rely on.

#include "dslab/report.hpp"

namespace dslab {

struct BesselConfig {
  /// Largest accepted argument.
  double argument_cap = 200.0;
  /// Term budget; running out signals an out-of-range argument.
  int max_terms = 400;
};

struct BesselEval {
  double order = 0.0;
  double argument = 0.0;
  double value = 0.0;
  int terms_used = 0;
  /// Magnitude of the first omitted term (alternating-series remainder bound).
  double truncation_bound = 0.0;
  /// Estimate of accumulated rounding in the partial sum.
  double rounding_bound = 0.0;
  /// Working precision of the summation in bits (53 for plain doubles).
  int precision_bits = 53;
};

class BesselRangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// J_mu(x) for mu > -1, x >= 0 with truncation_bound <= tol. Summation
/// switches to extended precision when cancellation between terms would
/// otherwise dominate the result.
BesselEval bessel_j(double mu, double x, double tol, const BesselConfig& cfg = {});

/// J_mu(x) / x^mu, an even entire function of x; finite at x = 0 for every
/// mu > -1. tol bounds the truncation error relative to the leading term
/// 2^-mu / Gamma(mu + 1), so the reduced form suits small and moderate x.
BesselEval bessel_j_reduced(double mu, double x, double tol, const BesselConfig& cfg = {});

/// Gamma for real arguments in floating point; the only floating Gamma in
/// the library.
double gamma_real(double x);

/// (1/pi) * integral over [0, pi] of cos(x sin t - mu t) dt by adaptive
/// quadrature. Only integer orders are accepted.
double bessel_j_integral_form(int mu, double x);

/// Series value against the integral form for integer order; absolute
/// difference <= 1e-10.
VerificationReport check_integral_form(int mu, double x);

/// Three-term recurrence J_mu = 2(mu-1)/x J_(mu-1) - J_(mu-2) (relative
/// residual <= 1e-9 against the largest term) together with the derivative
/// identity d/dx (x^mu J_mu(x)) = x^mu J_(mu-1)(x) via central differences at
/// steps h and h/2, whose error ratio must be close to 4. Requires mu >= 2.
VerificationReport check_recurrences(double mu, double x);

/// Derivative identity alone, for mu >= 1 and x > h.
VerificationReport check_derivative_identity(double mu, double x, double h = 1e-2);

}  // namespace dslab
