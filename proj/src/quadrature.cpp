#include "dslab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace dslab {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

QuadratureResult gauss_kronrod15(const Integrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::fabs(half);

  std::array<double, 7> f1{}, f2{};
  const double fc = f(centre);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kXgk[jtw];
    const double v1 = f(centre - dx), v2 = f(centre + dx);
    f1[jtw] = v1;
    f2[jtw] = v2;
    resg += kWg[j] * (v1 + v2);
    resk += kWgk[jtw] * (v1 + v2);
    resabs += kWgk[jtw] * (std::fabs(v1) + std::fabs(v2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kXgk[jtwm1];
    const double v1 = f(centre - dx), v2 = f(centre + dx);
    f1[jtwm1] = v1;
    f2[jtwm1] = v2;
    resk += kWgk[jtwm1] * (v1 + v2);
    resabs += kWgk[jtwm1] * (std::fabs(v1) + std::fabs(v2));
  }

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(f1[j] - reskh) + std::fabs(f2[j] - reskh));

  const double result = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * resabs, err);

  QuadratureResult r;
  r.value = result;
  r.error = err;
  r.subdivisions = 1;
  r.evaluations = 15;
  r.converged = std::isfinite(result) && std::isfinite(err);
  return r;
}

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const AdaptiveOptions& opts) {
  if (!(opts.rel_tol > 0.0 || opts.abs_tol > 0.0))
    throw std::invalid_argument("integrate_adaptive: need a positive tolerance");
  if (opts.max_subdivisions < 1) throw std::invalid_argument("integrate_adaptive: max_subdivisions < 1");

  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }

  std::priority_queue<Panel> panels;
  const QuadratureResult first = gauss_kronrod15(f, a, b);
  panels.push({a, b, first.value, first.error});
  double total = first.value;
  double total_err = first.error;
  int evaluations = first.evaluations;
  int count = 1;
  bool converged = false;

  while (true) {
    if (!std::isfinite(total) || !std::isfinite(total_err)) break;
    if (total_err <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(total))) {
      converged = true;
      break;
    }
    if (count >= opts.max_subdivisions) break;

    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) break;
    panels.pop();

    const QuadratureResult left = gauss_kronrod15(f, worst.a, mid);
    const QuadratureResult right = gauss_kronrod15(f, mid, worst.b);
    evaluations += left.evaluations + right.evaluations;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push({worst.a, mid, left.value, left.error});
    panels.push({mid, worst.b, right.value, right.error});
    ++count;
  }

  // Re-sum to shed the drift accumulated by incremental updates.
  double value = 0.0, err = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  out.value = value;
  out.error = err;
  out.subdivisions = count;
  out.evaluations = evaluations;
  out.converged = converged && std::isfinite(value);
  return out;
}

int endpoint_substitution_power(double s) {
  if (!(s > -1.0)) throw std::domain_error("endpoint exponent must exceed -1");
  return std::max(2, static_cast<int>(std::ceil(1.0 / (s + 1.0) - 1e-12)));
}

namespace {

// Integral over the piece of [lo, hi] of length len touching the chosen end,
// with (distance to that end) = len * u^m.
QuadratureResult integrate_from_endpoint(const EndpointIntegrand& f, double width, bool from_lo,
                                         double len, double exponent, const AdaptiveOptions& opts) {
  const int m = endpoint_substitution_power(exponent);
  const Integrand g = [&](double u) {
    const double um1 = std::pow(u, m - 1);
    const double near = len * um1 * u;
    const double far = width - near;
    const double fx = from_lo ? f(near, far) : f(far, near);
    return fx * len * m * um1;
  };
  return integrate_adaptive(g, 0.0, 1.0, opts);
}

}  // namespace

QuadratureResult integrate_algebraic(const EndpointIntegrand& f, double lo, double hi,
                                     std::optional<double> lo_exponent,
                                     std::optional<double> hi_exponent,
                                     const AdaptiveOptions& opts, std::optional<double> split) {
  if (!(hi > lo)) throw std::invalid_argument("integrate_algebraic: need lo < hi");
  const double width = hi - lo;
  const Integrand plain = [&](double x) { return f(x - lo, hi - x); };
  if (!lo_exponent && !hi_exponent) return integrate_adaptive(plain, lo, hi, opts);

  const double cut = split.value_or(0.5 * (lo + hi));
  if (!(cut > lo && cut < hi)) throw std::invalid_argument("integrate_algebraic: split outside (lo, hi)");

  // Each piece gets half the absolute budget; the relative target is shared.
  AdaptiveOptions piece = opts;
  piece.abs_tol = 0.5 * opts.abs_tol;

  const QuadratureResult left =
      lo_exponent ? integrate_from_endpoint(f, width, true, cut - lo, *lo_exponent, piece)
                  : integrate_adaptive(plain, lo, cut, piece);
  const QuadratureResult right =
      hi_exponent ? integrate_from_endpoint(f, width, false, hi - cut, *hi_exponent, piece)
                  : integrate_adaptive(plain, cut, hi, piece);

  QuadratureResult r;
  r.value = left.value + right.value;
  r.error = left.error + right.error;
  r.subdivisions = left.subdivisions + right.subdivisions;
  r.evaluations = left.evaluations + right.evaluations;
  r.converged = left.converged && right.converged;
  return r;
}

}  // namespace dslab
