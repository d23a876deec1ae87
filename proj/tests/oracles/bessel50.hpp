#pragma once

// J_mu(x) summed at 50 significant digits; an independent check of the
// double-precision series.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

using Dec50 = boost::multiprecision::cpp_dec_float_50;

inline double bessel_j50(double mu, double x) {
  const Dec50 half_x = Dec50(x) / 2;
  const Dec50 m(mu);
  if (x == 0.0) return mu == 0.0 ? 1.0 : 0.0;
  Dec50 term = pow(half_x, m) / boost::math::tgamma(m + 1);
  Dec50 sum = term;
  const Dec50 eps("1e-45");
  for (int n = 0; n < 2000; ++n) {
    term *= -(half_x * half_x) / ((n + 1) * (n + 1 + m));
    sum += term;
    if (abs(term) < eps * abs(sum) && n > x) break;
  }
  return static_cast<double>(sum);
}

}  // namespace oracle
