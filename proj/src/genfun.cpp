#include "dslab/genfun.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>

namespace dslab {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void require_order(long order) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
}

// Largest |a_n - b_n| and the number of differing coefficients.
struct Diff {
  BigRational worst;
  long mismatches = 0;
};

Diff compare(const TruncatedSeries& a, const TruncatedSeries& b) {
  Diff d;
  const long n = std::min(a.order(), b.order());
  for (long i = 0; i <= n; ++i) {
    const BigRational e = (a[i] - b[i]).abs();
    if (e.is_zero()) continue;
    ++d.mismatches;
    if (e > d.worst) d.worst = e;
  }
  return d;
}

VerificationReport series_report(std::string id, ParamList params, const TruncatedSeries& lhs,
                                 const TruncatedSeries& rhs, std::chrono::steady_clock::time_point start) {
  const Diff d = compare(lhs, rhs);
  VerificationReport r;
  r.identity_id = std::move(id);
  r.method = "exact";
  r.params = std::move(params);
  r.lhs = lhs.coefficient_sum();
  r.rhs = rhs.coefficient_sum();
  r.residual = d.worst;
  r.pass = d.mismatches == 0 && lhs.order() == rhs.order();
  r.details = {{"mismatched_coefficients", std::int64_t{d.mismatches}}};
  r.runtime_ms = elapsed_ms(start);
  return r;
}

ParamList walk_params(const WalkParams& w) {
  return {{"kind", std::string(walk_kind_name(w.kind))}, {"p", w.p.str()}};
}

// ((1 - sqrt(1 - 4pq xi^2)) / (2 s xi))^k with s = q for upward levels and
// s = p for downward ones.
TruncatedSeries passage_power(const WalkParams& w, const BigRational& s, long k, long order) {
  const long work = order + k;
  const TruncatedSeries one_minus = TruncatedSeries::constant(1, work) -
                                    TruncatedSeries::monomial(BigRational(4) * w.p * w.q(), 2, work);
  const TruncatedSeries numer = TruncatedSeries::constant(1, work) - one_minus.sqrt();
  return numer.pow(k).shift_down(k) * (BigRational(2) * s).pow(-k);
}

}  // namespace

TruncatedSeries::TruncatedSeries(long order) {
  require_order(order);
  coeffs_.assign(order + 1, BigRational(0));
}

TruncatedSeries::TruncatedSeries(std::vector<BigRational> coefficients, long order) : coeffs_(std::move(coefficients)) {
  require_order(order);
  coeffs_.resize(order + 1, BigRational(0));
}

TruncatedSeries TruncatedSeries::constant(const BigRational& c, long order) {
  TruncatedSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const BigRational& c, long k, long order) {
  if (k < 0) throw std::invalid_argument("monomial: negative exponent");
  TruncatedSeries s(order);
  if (k <= order) s.coeffs_[k] = c;
  return s;
}

TruncatedSeries TruncatedSeries::truncate(long order) const {
  require_order(order);
  if (order > this->order()) throw std::invalid_argument("truncate: cannot raise the order");
  return TruncatedSeries(std::vector<BigRational>(coeffs_.begin(), coeffs_.begin() + order + 1), order);
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  TruncatedSeries s(std::min(order(), o.order()));
  for (long i = 0; i <= s.order(); ++i) s.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
  return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  TruncatedSeries s(std::min(order(), o.order()));
  for (long i = 0; i <= s.order(); ++i) s.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  const long n = std::min(order(), o.order());
  std::vector<mpq_class> acc(n + 1);
  for (long i = 0; i <= n; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (long j = 0; i + j <= n; ++j)
      if (!o.coeffs_[j].is_zero()) acc[i + j] += coeffs_[i].raw() * o.coeffs_[j].raw();
  }
  TruncatedSeries s(n);
  for (long i = 0; i <= n; ++i) s.coeffs_[i] = BigRational::from_raw(std::move(acc[i]));
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const BigRational& c) const {
  TruncatedSeries s = *this;
  for (auto& v : s.coeffs_) v *= c;
  return s;
}

TruncatedSeries TruncatedSeries::operator-() const { return *this * BigRational(-1); }

TruncatedSeries TruncatedSeries::operator/(const TruncatedSeries& o) const { return *this * o.inverse(); }

TruncatedSeries TruncatedSeries::inverse() const {
  if (coeffs_[0].is_zero()) throw std::domain_error("series inverse: zero constant term");
  const long n = order();
  const mpq_class inv0 = 1 / coeffs_[0].raw();
  std::vector<mpq_class> b(n + 1);
  b[0] = inv0;
  for (long k = 1; k <= n; ++k) {
    mpq_class acc;
    for (long i = 1; i <= k; ++i)
      if (!coeffs_[i].is_zero()) acc += coeffs_[i].raw() * b[k - i];
    b[k] = -acc * inv0;
  }
  TruncatedSeries s(n);
  for (long i = 0; i <= n; ++i) s.coeffs_[i] = BigRational::from_raw(std::move(b[i]));
  return s;
}

TruncatedSeries TruncatedSeries::pow(long k) const {
  if (k < 0) throw std::invalid_argument("series pow: negative exponent");
  TruncatedSeries result = constant(1, order());
  TruncatedSeries base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

TruncatedSeries TruncatedSeries::compose_square() const {
  TruncatedSeries s(order());
  for (long i = 0; 2 * i <= order(); ++i) s.coeffs_[2 * i] = coeffs_[i];
  return s;
}

TruncatedSeries TruncatedSeries::sqrt() const {
  if (coeffs_[0] != BigRational(1)) throw std::domain_error("series sqrt: constant term must be 1");
  const long n = order();
  const BigRational half(1, 2);
  // y is correct modulo xi^prec; each step doubles prec.
  TruncatedSeries y = constant(1, 0);
  long prec = 1;
  while (prec < n + 1) {
    prec = std::min(2 * prec, n + 1);
    const TruncatedSeries f = truncate(prec - 1);
    const TruncatedSeries y_ext(y.coeffs_, prec - 1);
    y = (y_ext + f / y_ext) * half;
  }
  return TruncatedSeries(y.coeffs_, n);
}

TruncatedSeries TruncatedSeries::shift_down(long k) const {
  if (k < 0) throw std::invalid_argument("shift_down: negative shift");
  if (k > order()) throw std::invalid_argument("shift_down: shift exceeds the order");
  for (long i = 0; i < k; ++i)
    if (!coeffs_[i].is_zero())
      throw InconsistencyError("shift_down: coefficient of xi^" + std::to_string(i) + " is " + coeffs_[i].str() +
                               ", expected 0 before dividing by xi^" + std::to_string(k));
  return TruncatedSeries(std::vector<BigRational>(coeffs_.begin() + k, coeffs_.end()), order() - k);
}

TruncatedSeries TruncatedSeries::shift_up(long k) const {
  if (k < 0) throw std::invalid_argument("shift_up: negative shift");
  TruncatedSeries s(order());
  for (long i = 0; i + k <= order(); ++i) s.coeffs_[i + k] = coeffs_[i];
  return s;
}

BigRational TruncatedSeries::coefficient_sum() const {
  BigRational t;
  for (const auto& c : coeffs_) t += c;
  return t;
}

TruncatedSeries sqrt_one_minus(const BigRational& c, long order) {
  TruncatedSeries::constant(1, order);  // validates the order
  std::vector<BigRational> a(order + 1, BigRational(0));
  a[0] = 1;
  const BigRational quarter = c / BigRational(4);
  for (long n = 1; 2 * n <= order; ++n)
    a[2 * n] = BigRational(-2) * binomial(2 * n - 2, n - 1) * quarter.pow(n) / BigRational(n);
  return TruncatedSeries(std::move(a), order);
}

TruncatedSeries inv_sqrt_one_minus(const BigRational& c, long order) {
  TruncatedSeries::constant(1, order);
  std::vector<BigRational> a(order + 1, BigRational(0));
  const BigRational quarter = c / BigRational(4);
  for (long n = 0; 2 * n <= order; ++n) a[2 * n] = binomial(2 * n, n) * quarter.pow(n);
  return TruncatedSeries(std::move(a), order);
}

TruncatedSeries genfun_G(const WalkParams& w, long j, long order) {
  w.validate();
  if (order < std::labs(j)) throw std::invalid_argument("genfun_G: order must be >= |j|");
  if (w.kind == WalkKind::non_decreasing) {
    if (j < 0) return TruncatedSeries(order);
    const TruncatedSeries base = TruncatedSeries::constant(1, order) - TruncatedSeries::monomial(w.q(), 1, order);
    return base.inverse().pow(j + 1).shift_up(j) * w.p.pow(j);
  }
  const TruncatedSeries one_minus = TruncatedSeries::constant(1, order) -
                                    TruncatedSeries::monomial(BigRational(4) * w.p * w.q(), 2, order);
  const TruncatedSeries inv_root = one_minus.sqrt().inverse();
  if (j == 0) return inv_root;
  return inv_root * passage_power(w, j > 0 ? w.q() : w.p, std::labs(j), order);
}

TruncatedSeries genfun_T(const WalkParams& w, long a, long order) {
  w.validate();
  if (w.kind == WalkKind::non_decreasing) {
    if (a < 1) throw std::invalid_argument("genfun_T: the non-decreasing walk needs a >= 1");
    if (order < a) throw std::invalid_argument("genfun_T: order must be >= a");
    const TruncatedSeries base = TruncatedSeries::constant(1, order) - TruncatedSeries::monomial(w.q(), 1, order);
    return base.inverse().pow(a).shift_up(a) * w.p.pow(a);
  }
  if (a == 0) {
    if (order < 2) throw std::invalid_argument("genfun_T: order must be >= 2 for a = 0");
    const TruncatedSeries one_minus = TruncatedSeries::constant(1, order) -
                                      TruncatedSeries::monomial(BigRational(4) * w.p * w.q(), 2, order);
    return TruncatedSeries::constant(1, order) - one_minus.sqrt();
  }
  if (order < std::labs(a)) throw std::invalid_argument("genfun_T: order must be >= |a|");
  return passage_power(w, a > 0 ? w.q() : w.p, std::labs(a), order);
}

VerificationReport check_quotient_relation(const WalkParams& w, long a, long order) {
  if (a == 0) throw std::invalid_argument("check_quotient_relation: a must be non-zero");
  if (order < std::labs(a) + 2) throw std::invalid_argument("check_quotient_relation: order must be >= |a| + 2");
  const auto start = std::chrono::steady_clock::now();
  const TruncatedSeries lhs = genfun_G(w, a, order);
  const TruncatedSeries rhs = genfun_G(w, 0, order) * genfun_T(w, a, order);
  ParamList params = walk_params(w);
  params.emplace_back("a", std::int64_t{a});
  params.emplace_back("order", std::int64_t{order});
  return series_report("GENFUN_QUOTIENT", std::move(params), lhs, rhs, start);
}

VerificationReport check_sqrt_routes(const BigRational& c, long order) {
  const auto start = std::chrono::steady_clock::now();
  const TruncatedSeries target =
      TruncatedSeries::constant(1, order) - TruncatedSeries::monomial(c, 2, order);
  const TruncatedSeries newton = target.sqrt();
  const TruncatedSeries explicit_root = sqrt_one_minus(c, order);
  VerificationReport r = series_report("SERIES_SQRT", {{"c", c.str()}, {"order", std::int64_t{order}}}, newton,
                                       explicit_root, start);
  const Diff squared = compare(newton * newton, target);
  const Diff inverse = compare(newton * inv_sqrt_one_minus(c, order), TruncatedSeries::constant(1, order));
  r.details.emplace_back("square_mismatches", std::int64_t{squared.mismatches});
  r.details.emplace_back("inverse_mismatches", std::int64_t{inverse.mismatches});
  r.pass = r.pass && squared.mismatches == 0 && inverse.mismatches == 0;
  r.runtime_ms = elapsed_ms(start);
  return r;
}

VerificationReport check_genfun_coefficients(const WalkParams& w, long j, long order) {
  const auto start = std::chrono::steady_clock::now();
  const TruncatedSeries g = genfun_G(w, j, order);
  std::vector<BigRational> s_mass(order + 1);
  for (long n = 0; n <= order; ++n) s_mass[n] = prob_S(w, n, j);
  const TruncatedSeries s_series(std::move(s_mass), order);
  const Diff dg = compare(g, s_series);

  Diff dt;
  const bool has_t = w.kind == WalkKind::plus_minus ? (j != 0 || order >= 2) : j >= 1;
  if (has_t) {
    const TruncatedSeries t = genfun_T(w, j, order);
    std::vector<BigRational> t_mass(order + 1);
    for (long n = 0; n <= order; ++n) t_mass[n] = prob_T(w, j, n);
    dt = compare(t, TruncatedSeries(std::move(t_mass), order));
  }
  ParamList params = walk_params(w);
  params.emplace_back("j", std::int64_t{j});
  params.emplace_back("order", std::int64_t{order});
  VerificationReport r;
  r.identity_id = "GENFUN_COEFFICIENTS";
  r.method = "exact";
  r.params = std::move(params);
  r.lhs = g.coefficient_sum();
  r.rhs = s_series.coefficient_sum();
  r.residual = std::max(dg.worst, dt.worst);
  r.pass = dg.mismatches == 0 && dt.mismatches == 0;
  r.details = {{"G_mismatches", std::int64_t{dg.mismatches}}, {"T_mismatches", std::int64_t{dt.mismatches}}};
  if (!has_t) r.notes.push_back("passage series not defined for this level");
  r.runtime_ms = elapsed_ms(start);
  return r;
}

VerificationReport check_G_recurrence(const WalkParams& w, long j, long order) {
  if (w.kind != WalkKind::plus_minus) throw std::invalid_argument("check_G_recurrence: +/-1 walk only");
  if (j == 0) throw std::invalid_argument("check_G_recurrence: j must be non-zero");
  if (order < std::labs(j) + 1) throw std::invalid_argument("check_G_recurrence: order must be >= |j| + 1");
  const auto start = std::chrono::steady_clock::now();
  const TruncatedSeries lhs = genfun_G(w, j, order);
  const TruncatedSeries rhs =
      (genfun_G(w, j - 1, order) * w.p + genfun_G(w, j + 1, order) * w.q()).shift_up(1);
  ParamList params = walk_params(w);
  params.emplace_back("j", std::int64_t{j});
  params.emplace_back("order", std::int64_t{order});
  return series_report("GENFUN_RECURRENCE", std::move(params), lhs, rhs, start);
}

VerificationReport check_passage_product(const WalkParams& w, long a, long b, long order) {
  if (!((a > 0 && b > 0) || (a < 0 && b < 0))) throw std::invalid_argument("check_passage_product: a and b must be non-zero with the same sign");
  const auto start = std::chrono::steady_clock::now();
  const TruncatedSeries lhs = genfun_T(w, a, order) * genfun_T(w, b, order);
  const TruncatedSeries rhs = genfun_T(w, a + b, order);
  ParamList params = walk_params(w);
  params.emplace_back("a", std::int64_t{a});
  params.emplace_back("b", std::int64_t{b});
  params.emplace_back("order", std::int64_t{order});
  return series_report("GENFUN_PASSAGE_PRODUCT", std::move(params), lhs, rhs, start);
}

nlohmann::json series_to_json(const TruncatedSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coefficients()) coeffs.push_back(c.str());
  return {{"order", s.order()}, {"coefficients", std::move(coeffs)}};
}

}  // namespace dslab
