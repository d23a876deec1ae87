#pragma once

// Numerical verification of the Bessel convolution integrals over [0, a] and
// the Laplace transforms of J_nu against their closed forms.

#include "dslab/parallel.hpp"
#include "dslab/report.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dslab {

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  /// Minimum upper limit for semi-infinite integrals; the effective limit is
  /// max(40 / alpha, laplace_truncation), extended until the tail bound fits.
  double laplace_truncation = 20.0;

  void validate() const;
};

enum class IntegralIdentity {
  conv_inverse_x,           // int J_mu(x) J_nu(a-x) / x = J_(mu+nu)(a) / mu
  conv_inverse_x_ax,        // int J_mu J_nu / (x(a-x)) = (1/mu + 1/nu) J_(mu+nu)(a) / a
  conv_power_weighted,      // int x^mu (a-x)^nu J_mu J_nu
  conv_power_weighted_lower,  // int x^mu (a-x)^nu J_(mu-1) J_nu
  laplace_j,                // int e^(-alpha x) J_nu(beta x)
  laplace_j_over_x,         // int e^(-alpha x) J_nu(beta x) / x
  laplace_x_nu_j,           // int e^(-alpha x) x^nu J_nu(beta x)
  laplace_x_nu_j_lower,     // int e^(-alpha x) x^nu J_(nu-1)(beta x)
};

/// Wire identifier used in reports ("CONV_16_38", ..., "LAP_19_47A").
std::string_view identity_wire_id(IntegralIdentity id);
IntegralIdentity parse_identity_wire_id(std::string_view text);
bool is_convolution(IntegralIdentity id);

struct IntegralCase {
  IntegralIdentity id = IntegralIdentity::conv_inverse_x;
  double mu = 1.0;          // unused by the Laplace identities
  double nu = 1.0;
  double a_or_alpha = 1.0;  // interval length a, or Laplace variable alpha
  double beta = 1.0;        // Laplace identities only
};

/// Convolution identity check: quadrature of the left side, closed form on
/// the right (Gamma factors exact where 2*mu and 2*nu are integers).
/// Throws std::invalid_argument for non-positive parameters or a Laplace id,
/// QuadratureFailure when the subdivision budget runs out.
VerificationReport verify_convolution(const IntegralCase& c, const QuadratureConfig& cfg);

/// Laplace transform check over [0, T] with the analytic tail bound beyond T
/// added to the residual. Throws TruncationTooShort when no admissible T
/// brings the tail bound under abs_tol.
VerificationReport verify_laplace(const IntegralCase& c, const QuadratureConfig& cfg);

/// Dispatches on the identity kind.
VerificationReport verify_case(const IntegralCase& c, const QuadratureConfig& cfg);

/// Runs every case; a case that throws yields a failing report carrying the
/// message instead of aborting the sweep. Report order follows the grid.
std::vector<VerificationReport> sweep(const std::vector<IntegralCase>& grid,
                                      const QuadratureConfig& cfg, Exec exec = Exec::parallel);

/// Convolution identities x mu, nu in {0.5, 1, 2, 3.5} x a in {0.5, 1, 2, 5}.
std::vector<IntegralCase> default_convolution_grid();
/// Laplace identities x nu in {0.5, 1, 2, 3} x alpha, beta in {0.5, 1, 2}.
std::vector<IntegralCase> default_laplace_grid();

/// Closed-form right-hand sides.
double convolution_rhs(const IntegralCase& c);
double laplace_rhs(const IntegralCase& c);

/// Integrates the closed form of the plain transform over alpha in
/// [alpha0, inf) and compares it with the closed form of the transform of
/// J_nu(beta x) / x (relative tolerance 1e-6).
VerificationReport check_laplace_alpha_integral(double nu, double alpha0, double beta);

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncationTooShort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dslab
