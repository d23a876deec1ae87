#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature with global bisection, plus a
// front end that strips algebraic endpoint behaviour by substitution.

#include <functional>
#include <optional>

namespace dslab {

using Integrand = std::function<double(double)>;

/// Integrand written in terms of the distances to both ends of [lo, hi],
/// (x - lo, hi - x), each computed without cancellation near its own end.
using EndpointIntegrand = std::function<double(double from_lo, double from_hi)>;

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int subdivisions = 0;
  int evaluations = 0;
  bool converged = false;
};

/// One 15-point Kronrod panel on [a, b] with the QUADPACK error heuristic.
QuadratureResult gauss_kronrod15(const Integrand& f, double a, double b);

/// Globally adaptive: repeatedly bisects the panel with the largest error
/// estimate until the summed estimate is <= max(abs_tol, rel_tol * |I|) or
/// the subdivision budget is exhausted (converged = false).
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const AdaptiveOptions& opts);

/// Integrates f over [lo, hi] when f behaves like (x - lo)^s near lo and/or
/// (hi - x)^s near hi (s > -1). Each flagged end is handled on its own
/// piece via x = end +/- len * u^m with integer m >= 2 and m(s+1) >= 1, which
/// leaves a bounded integrand in u. `split` (default: midpoint) separates the
/// two pieces; unflagged ends are integrated directly.
QuadratureResult integrate_algebraic(const EndpointIntegrand& f, double lo, double hi,
                                     std::optional<double> lo_exponent,
                                     std::optional<double> hi_exponent,
                                     const AdaptiveOptions& opts,
                                     std::optional<double> split = std::nullopt);

/// Substitution power used for an endpoint exponent s.
int endpoint_substitution_power(double s);

}  // namespace dslab
