#include "dslab/integral_verify.hpp"
#include "dslab/bessel.hpp"
#include "dslab/exact_arith.hpp"
#include "dslab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace dslab {

namespace {

constexpr std::array<std::pair<IntegralIdentity, std::string_view>, 8> kWireIds = {{
    {IntegralIdentity::conv_inverse_x, "CONV_16_38"},
    {IntegralIdentity::conv_inverse_x_ax, "CONV_16_39"},
    {IntegralIdentity::conv_power_weighted, "CONV_16_40A"},
    {IntegralIdentity::conv_power_weighted_lower, "CONV_16_40B"},
    {IntegralIdentity::laplace_j, "LAP_19_45"},
    {IntegralIdentity::laplace_j_over_x, "LAP_19_46"},
    {IntegralIdentity::laplace_x_nu_j, "LAP_19_47"},
    {IntegralIdentity::laplace_x_nu_j_lower, "LAP_19_47A"},
}};

// Relative truncation target for series evaluations.
constexpr double kSeriesTol = 1e-17;
// Quadrature aims this factor below the verification tolerance.
constexpr double kQuadratureMargin = 1e-2;
constexpr double kSqrt2 = 1.41421356237309504880;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// x^k J_m(x) with error small relative to the leading series term.
double xpow_j(double m, double k, double x) {
  if (x < 2.0) return std::pow(x, k + m) * bessel_j_reduced(m, x, kSeriesTol).value;
  const double lead = std::exp(m * std::log(0.5 * x) - std::lgamma(m + 1.0));
  return std::pow(x, k) * bessel_j(m, x, kSeriesTol * std::min(1.0, lead)).value;
}

// 2x as a positive integer when x is a positive half-integer multiple.
std::optional<long> doubled_integer(double x) {
  const double t = 2.0 * x;
  if (t >= 1.0 && t <= 1e6 && t == std::round(t)) return static_cast<long>(t);
  return std::nullopt;
}

// Gamma(mu + 1/2) Gamma(nu + 1/2) / (sqrt(2 pi) Gamma(mu + nu + 1)).
double power_weighted_constant(double mu, double nu) {
  const auto m2 = doubled_integer(mu), n2 = doubled_integer(nu);
  if (m2 && n2) {
    const SqrtPiMultiple q = gamma_of_half_multiple(*m2 + 1).as_multiple() *
                             gamma_of_half_multiple(*n2 + 1).as_multiple() /
                             gamma_of_half_multiple(*m2 + *n2 + 2).as_multiple() /
                             SqrtPiMultiple{BigRational(1), 1};
    return q.to_double() / kSqrt2;
  }
  return std::exp(std::lgamma(mu + 0.5) + std::lgamma(nu + 0.5) - std::lgamma(mu + nu + 1.0)) /
         std::sqrt(2.0 * 3.14159265358979323846);
}

// Gamma(nu + 1/2) / sqrt(pi).
double gamma_half_shift_over_sqrt_pi(double nu) {
  if (const auto n2 = doubled_integer(nu)) {
    const HalfIntGamma g = gamma_of_half_multiple(*n2 + 1);
    const SqrtPiMultiple q = g.as_multiple() / SqrtPiMultiple{BigRational(1), 1};
    if (q.sqrt_pi_power == 0) return q.coefficient.to_double();
    return q.to_double();
  }
  return std::exp(std::lgamma(nu + 0.5)) / std::sqrt(3.14159265358979323846);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string("integral case: ") + name + " must be positive");
}

// Shape of a Laplace integrand x^k J_m(beta x).
struct LaplaceShape {
  double order;
  double power;
};

LaplaceShape laplace_shape(IntegralIdentity id, double nu) {
  switch (id) {
    case IntegralIdentity::laplace_j: return {nu, 0.0};
    case IntegralIdentity::laplace_j_over_x: return {nu, -1.0};
    case IntegralIdentity::laplace_x_nu_j: return {nu, nu};
    case IntegralIdentity::laplace_x_nu_j_lower: return {nu - 1.0, nu};
    default: throw std::invalid_argument("not a Laplace identity");
  }
}

// Bound on |integral over [T, inf) of e^(-alpha x) x^k J_m(beta x) dx|.
double laplace_tail_bound(const LaplaceShape& s, double alpha, double beta, double t) {
  const double j_bound = s.order >= 0.0 ? 1.0 : 1.0 + 2.0 * (s.order + 1.0) / (beta * t);
  const double head = std::pow(t, s.power) * std::exp(-alpha * t);
  if (s.power <= 0.0) return j_bound * head / alpha;
  const double rate = alpha - s.power / t;
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return j_bound * head / rate;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be at least 1");
  if (!(laplace_truncation > 0.0)) throw std::invalid_argument("laplace_truncation must be positive");
}

std::string_view identity_wire_id(IntegralIdentity id) {
  for (const auto& [k, v] : kWireIds)
    if (k == id) return v;
  throw std::invalid_argument("unknown integral identity");
}

IntegralIdentity parse_identity_wire_id(std::string_view text) {
  for (const auto& [k, v] : kWireIds)
    if (v == text) return k;
  throw std::invalid_argument("unknown integral identity id: " + std::string(text));
}

bool is_convolution(IntegralIdentity id) {
  switch (id) {
    case IntegralIdentity::conv_inverse_x:
    case IntegralIdentity::conv_inverse_x_ax:
    case IntegralIdentity::conv_power_weighted:
    case IntegralIdentity::conv_power_weighted_lower: return true;
    default: return false;
  }
}

double convolution_rhs(const IntegralCase& c) {
  const double mu = c.mu, nu = c.nu, a = c.a_or_alpha;
  switch (c.id) {
    case IntegralIdentity::conv_inverse_x: return xpow_j(mu + nu, 0.0, a) / mu;
    case IntegralIdentity::conv_inverse_x_ax: return (1.0 / mu + 1.0 / nu) * xpow_j(mu + nu, -1.0, a);
    case IntegralIdentity::conv_power_weighted:
      return power_weighted_constant(mu, nu) * xpow_j(mu + nu + 0.5, mu + nu + 0.5, a);
    case IntegralIdentity::conv_power_weighted_lower:
      return power_weighted_constant(mu, nu) * xpow_j(mu + nu - 0.5, mu + nu + 0.5, a);
    default: throw std::invalid_argument("convolution_rhs: not a convolution identity");
  }
}

double laplace_rhs(const IntegralCase& c) {
  const double nu = c.nu, alpha = c.a_or_alpha, beta = c.beta;
  const double s = std::hypot(alpha, beta);
  // sqrt(alpha^2 + beta^2) - alpha without cancellation.
  const double d = beta * beta / (s + alpha);
  switch (c.id) {
    case IntegralIdentity::laplace_j: return std::pow(d / beta, nu) / s;
    case IntegralIdentity::laplace_j_over_x: return std::pow(d / beta, nu) / nu;
    case IntegralIdentity::laplace_x_nu_j:
      return std::exp2(nu) * gamma_half_shift_over_sqrt_pi(nu) * std::pow(beta, nu) /
             std::pow(s, 2.0 * nu + 1.0);
    case IntegralIdentity::laplace_x_nu_j_lower:
      return std::exp2(nu) * gamma_half_shift_over_sqrt_pi(nu) * alpha * std::pow(beta, nu - 1.0) /
             std::pow(s, 2.0 * nu + 1.0);
    default: throw std::invalid_argument("laplace_rhs: not a Laplace identity");
  }
}

VerificationReport verify_convolution(const IntegralCase& c, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!is_convolution(c.id)) throw std::invalid_argument("verify_convolution: not a convolution identity");
  require_positive(c.mu, "mu");
  require_positive(c.nu, "nu");
  require_positive(c.a_or_alpha, "a");
  const auto start = std::chrono::steady_clock::now();
  const double mu = c.mu, nu = c.nu, a = c.a_or_alpha;

  // Left factor x^kl J_ml(x), right factor (a-x)^kr J_nu(a-x).
  double ml = mu, kl = -1.0, kr = 0.0;
  switch (c.id) {
    case IntegralIdentity::conv_inverse_x: break;
    case IntegralIdentity::conv_inverse_x_ax: kr = -1.0; break;
    case IntegralIdentity::conv_power_weighted: kl = mu, kr = nu; break;
    default: ml = mu - 1.0, kl = mu, kr = nu; break;
  }
  const EndpointIntegrand f = [&](double x, double y) {
    return xpow_j(ml, kl, x) * xpow_j(nu, kr, y);
  };

  AdaptiveOptions opts;
  opts.rel_tol = cfg.rel_tol * kQuadratureMargin;
  opts.abs_tol = 0.0;
  opts.max_subdivisions = cfg.max_subdivisions;
  const QuadratureResult q = integrate_algebraic(f, 0.0, a, ml + kl, nu + kr, opts);
  if (!q.converged)
    throw QuadratureFailure(std::string(identity_wire_id(c.id)) + ": quadrature did not converge within " +
                            std::to_string(cfg.max_subdivisions) + " subdivisions");

  const double rhs = convolution_rhs(c);
  const double diff = std::fabs(q.value - rhs);
  VerificationReport r;
  r.identity_id = std::string(identity_wire_id(c.id));
  r.method = "quadrature";
  r.params = {{"mu", mu}, {"nu", nu}, {"a", a}};
  r.lhs = q.value;
  r.rhs = rhs;
  r.residual = diff;
  r.tolerance = cfg.rel_tol * std::fabs(rhs) + cfg.abs_tol;
  r.pass = diff <= r.tolerance;
  r.subdivisions = q.subdivisions;
  r.details = {{"quadrature_error", q.error},
               {"relative_residual", rhs != 0.0 ? diff / std::fabs(rhs) : diff}};
  r.runtime_ms = elapsed_ms(start);
  return r;
}

VerificationReport verify_laplace(const IntegralCase& c, const QuadratureConfig& cfg) {
  cfg.validate();
  if (is_convolution(c.id)) throw std::invalid_argument("verify_laplace: not a Laplace identity");
  require_positive(c.nu, "nu");
  require_positive(c.a_or_alpha, "alpha");
  require_positive(c.beta, "beta");
  const auto start = std::chrono::steady_clock::now();
  const double nu = c.nu, alpha = c.a_or_alpha, beta = c.beta;
  const LaplaceShape shape = laplace_shape(c.id, nu);

  // Pick T, then lengthen it while the tail bound is too large and the
  // Bessel argument beta*T stays within the evaluator's range.
  const double t_max = BesselConfig{}.argument_cap / beta;
  double t = std::min(std::max(40.0 / alpha, cfg.laplace_truncation), t_max);
  double tail = laplace_tail_bound(shape, alpha, beta, t);
  while (tail > cfg.abs_tol && t < t_max) {
    t = std::min(1.1 * t, t_max);
    tail = laplace_tail_bound(shape, alpha, beta, t);
  }
  if (tail > cfg.abs_tol)
    throw TruncationTooShort(std::string(identity_wire_id(c.id)) + ": tail bound " + std::to_string(tail) +
                             " exceeds abs_tol at the largest admissible T = " + std::to_string(t));

  const double scale = std::pow(beta, -shape.power);
  const EndpointIntegrand f = [&](double x, double) {
    return std::exp(-alpha * x) * scale * xpow_j(shape.order, shape.power, beta * x);
  };
  AdaptiveOptions opts;
  opts.rel_tol = cfg.rel_tol * kQuadratureMargin;
  opts.abs_tol = cfg.abs_tol * kQuadratureMargin;
  opts.max_subdivisions = cfg.max_subdivisions;
  const QuadratureResult q =
      integrate_algebraic(f, 0.0, t, shape.order + shape.power, std::nullopt, opts, std::min(1.0, 0.5 * t));
  if (!q.converged)
    throw QuadratureFailure(std::string(identity_wire_id(c.id)) + ": quadrature did not converge within " +
                            std::to_string(cfg.max_subdivisions) + " subdivisions");

  const double rhs = laplace_rhs(c);
  const double diff = std::fabs(q.value - rhs);
  const double residual = diff + tail;
  VerificationReport r;
  r.identity_id = std::string(identity_wire_id(c.id));
  r.method = "quadrature";
  r.params = {{"nu", nu}, {"alpha", alpha}, {"beta", beta}};
  r.lhs = q.value;
  r.rhs = rhs;
  r.residual = residual;
  r.tolerance = cfg.rel_tol * std::fabs(rhs) + cfg.abs_tol;
  r.pass = residual <= r.tolerance;
  r.subdivisions = q.subdivisions;
  r.details = {{"truncation", t},
               {"tail_bound", tail},
               {"quadrature_error", q.error},
               {"relative_residual", residual / std::fabs(rhs)}};
  r.runtime_ms = elapsed_ms(start);
  return r;
}

VerificationReport verify_case(const IntegralCase& c, const QuadratureConfig& cfg) {
  return is_convolution(c.id) ? verify_convolution(c, cfg) : verify_laplace(c, cfg);
}

namespace {

VerificationReport failed_case(const IntegralCase& c, const std::string& what) {
  VerificationReport r;
  r.identity_id = std::string(identity_wire_id(c.id));
  r.method = "quadrature";
  if (is_convolution(c.id))
    r.params = {{"mu", c.mu}, {"nu", c.nu}, {"a", c.a_or_alpha}};
  else
    r.params = {{"nu", c.nu}, {"alpha", c.a_or_alpha}, {"beta", c.beta}};
  r.lhs = r.rhs = r.residual = std::numeric_limits<double>::quiet_NaN();
  r.pass = false;
  r.notes.push_back(what);
  return r;
}

VerificationReport run_guarded(const IntegralCase& c, const QuadratureConfig& cfg) {
  try {
    return verify_case(c, cfg);
  } catch (const std::exception& e) {
    return failed_case(c, e.what());
  }
}

}  // namespace

std::vector<VerificationReport> sweep(const std::vector<IntegralCase>& grid, const QuadratureConfig& cfg,
                                      Exec exec) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  cfg.validate();
  std::vector<VerificationReport> out(grid.size());
  const long n = static_cast<long>(grid.size());
  if (exec == Exec::serial) {
    for (long i = 0; i < n; ++i) out[i] = run_guarded(grid[i], cfg);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) out[i] = run_guarded(grid[i], cfg);
  }
  return out;
}

std::vector<IntegralCase> default_convolution_grid() {
  const std::array<double, 4> orders = {0.5, 1.0, 2.0, 3.5};
  const std::array<double, 4> lengths = {0.5, 1.0, 2.0, 5.0};
  std::vector<IntegralCase> g;
  for (const auto id : {IntegralIdentity::conv_inverse_x, IntegralIdentity::conv_inverse_x_ax,
                        IntegralIdentity::conv_power_weighted, IntegralIdentity::conv_power_weighted_lower})
    for (double mu : orders)
      for (double nu : orders)
        for (double a : lengths) g.push_back({id, mu, nu, a, 1.0});
  return g;
}

std::vector<IntegralCase> default_laplace_grid() {
  const std::array<double, 4> orders = {0.5, 1.0, 2.0, 3.0};
  const std::array<double, 3> rates = {0.5, 1.0, 2.0};
  std::vector<IntegralCase> g;
  for (const auto id : {IntegralIdentity::laplace_j, IntegralIdentity::laplace_j_over_x,
                        IntegralIdentity::laplace_x_nu_j, IntegralIdentity::laplace_x_nu_j_lower})
    for (double nu : orders)
      for (double alpha : rates)
        for (double beta : rates) g.push_back({id, 1.0, nu, alpha, beta});
  return g;
}

VerificationReport check_laplace_alpha_integral(double nu, double alpha0, double beta) {
  require_positive(nu, "nu");
  require_positive(alpha0, "alpha0");
  require_positive(beta, "beta");
  const auto start = std::chrono::steady_clock::now();
  constexpr double kTol = 1e-6;

  // alpha = alpha0 / t maps [alpha0, inf) onto (0, 1]; the integrand then
  // behaves like t^(nu-1) at t = 0.
  const EndpointIntegrand g = [&](double t, double) {
    const IntegralCase c{IntegralIdentity::laplace_j, 1.0, nu, alpha0 / t, beta};
    return laplace_rhs(c) * alpha0 / (t * t);
  };
  AdaptiveOptions opts;
  opts.rel_tol = 1e-10;
  const QuadratureResult q = integrate_algebraic(g, 0.0, 1.0, nu - 1.0, std::nullopt, opts);
  const double target = laplace_rhs({IntegralIdentity::laplace_j_over_x, 1.0, nu, alpha0, beta});
  const double rel = std::fabs(q.value - target) / std::fabs(target);

  VerificationReport r;
  r.identity_id = "LAP_ALPHA_INTEGRAL";
  r.method = "quadrature";
  r.params = {{"nu", nu}, {"alpha0", alpha0}, {"beta", beta}};
  r.lhs = q.value;
  r.rhs = target;
  r.residual = rel;
  r.tolerance = kTol;
  r.pass = q.converged && rel <= kTol;
  r.subdivisions = q.subdivisions;
  r.runtime_ms = elapsed_ms(start);
  return r;
}

}  // namespace dslab
