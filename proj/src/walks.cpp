#include "dslab/walks.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace dslab {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void require_plus_minus(const WalkParams& w, const char* what) {
  if (w.kind != WalkKind::plus_minus) throw std::invalid_argument(std::string(what) + ": +/-1 walk only");
}

ParamList walk_params(const WalkParams& w) {
  return {{"kind", std::string(walk_kind_name(w.kind))}, {"p", w.p.str()}};
}

// Report for one or two exact equalities; residual is the summed absolute
// difference and the second pair, if any, goes into details.
VerificationReport exact_report(std::string id, ParamList params, const BigRational& lhs, const BigRational& rhs,
                                const BigRational* lhs2 = nullptr, const BigRational* rhs2 = nullptr) {
  VerificationReport r;
  r.identity_id = std::move(id);
  r.method = "exact";
  r.params = std::move(params);
  BigRational residual = (lhs - rhs).abs();
  bool pass = lhs == rhs;
  if (lhs2 && rhs2) {
    residual += (*lhs2 - *rhs2).abs();
    pass = pass && *lhs2 == *rhs2;
    r.details = {{"second_lhs", lhs2->str()}, {"second_rhs", rhs2->str()}};
  }
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = residual;
  r.pass = pass;
  return r;
}

void append(ParamList& to, ParamList more) {
  for (auto& kv : more) to.push_back(std::move(kv));
}

}  // namespace

std::string_view walk_kind_name(WalkKind kind) {
  return kind == WalkKind::plus_minus ? "PLUS_MINUS" : "NON_DECREASING";
}

WalkKind parse_walk_kind(std::string_view text) {
  if (text == "PLUS_MINUS") return WalkKind::plus_minus;
  if (text == "NON_DECREASING") return WalkKind::non_decreasing;
  throw std::invalid_argument("unknown walk kind: " + std::string(text));
}

void WalkParams::validate() const {
  if (p.sign() <= 0 || p >= BigRational(1)) throw std::invalid_argument("walk parameter p must lie in (0, 1)");
}

std::vector<long> Pmf::support() const {
  std::vector<long> s;
  s.reserve(mass.size());
  for (const auto& [n, m] : mass) s.push_back(n);
  return s;
}

BigRational Pmf::at(long n) const {
  const auto it = mass.find(n);
  return it == mass.end() ? BigRational(0) : it->second;
}

BigRational Pmf::total() const {
  BigRational t;
  for (const auto& [n, m] : mass) t += m;
  return t;
}

BigRational prob_S(const WalkParams& w, long n, long j) {
  w.validate();
  if (n < 0) throw std::invalid_argument("prob_S: n must be non-negative");
  if (w.kind == WalkKind::non_decreasing) {
    if (j < 0 || j > n) return 0;
    return binomial(n, j) * w.p.pow(j) * w.q().pow(n - j);
  }
  if (std::labs(j) > n || (n + j) % 2 != 0) return 0;
  const long up = (n + j) / 2;
  return binomial(n, up) * w.p.pow(up) * w.q().pow(n - up);
}

BigRational prob_T(const WalkParams& w, long a, long n) {
  w.validate();
  if (w.kind == WalkKind::non_decreasing) {
    if (a < 1) throw std::invalid_argument("prob_T: the non-decreasing walk needs a >= 1");
    if (n < a) return 0;
    return binomial(n - 1, a - 1) * w.p.pow(a) * w.q().pow(n - a);
  }
  if (n < 1) return 0;
  if (a == 0) {
    if (n % 2 != 0) return 0;
    return binomial(n, n / 2) * (w.p * w.q()).pow(n / 2) / BigRational(n - 1);
  }
  if (std::labs(a) > n || (n + a) % 2 != 0) return 0;
  return BigRational(std::labs(a), n) * prob_S(w, n, a);
}

Pmf pmf_S(const WalkParams& w, long n) {
  w.validate();
  if (n < 0) throw std::invalid_argument("pmf_S: n must be non-negative");
  Pmf out;
  out.kind = walk_kind_name(w.kind);
  out.p = w.p;
  out.law = "S";
  out.params = {{"n", std::int64_t{n}}};
  const long lo = w.kind == WalkKind::plus_minus ? -n : 0;
  for (long j = lo; j <= n; ++j) {
    BigRational m = prob_S(w, n, j);
    if (!m.is_zero()) out.mass.emplace(j, std::move(m));
  }
  return out;
}

BigRational hitting_probability(const WalkParams& w, long a) {
  w.validate();
  require_plus_minus(w, "hitting_probability");
  const BigRational gap = (w.p - w.q()).abs();
  const BigRational one(1);
  if (a == 0) return one - gap;
  if (a > 0) return ((one - gap) / (BigRational(2) * w.q())).pow(a);
  return ((one - gap) / (BigRational(2) * w.p)).pow(-a);
}

Pmf pmf_T(const WalkParams& w, long a, long horizon) {
  w.validate();
  if (w.kind == WalkKind::non_decreasing && a < 1)
    throw std::invalid_argument("pmf_T: the non-decreasing walk needs a >= 1");
  if (horizon < 1 || horizon < std::labs(a)) throw std::invalid_argument("pmf_T: horizon must be >= max(1, |a|)");
  Pmf out;
  out.kind = walk_kind_name(w.kind);
  out.p = w.p;
  out.law = "T";
  out.params = {{"a", std::int64_t{a}}, {"horizon", std::int64_t{horizon}}};
  for (long n = 1; n <= horizon; ++n) {
    BigRational m = prob_T(w, a, n);
    if (!m.is_zero()) out.mass.emplace(n, std::move(m));
  }
  const BigRational reach = w.kind == WalkKind::plus_minus ? hitting_probability(w, a) : BigRational(1);
  out.truncated = true;
  out.tail_bound = reach - out.total();
  return out;
}

VerificationReport check_hitting_partial_sum(const WalkParams& w, long a, long horizon, const BigRational& tol) {
  const auto start = std::chrono::steady_clock::now();
  const Pmf law = pmf_T(w, a, horizon);
  const BigRational partial = law.total();
  const BigRational limit = hitting_probability(w, a);
  ParamList params = walk_params(w);
  append(params, {{"a", std::int64_t{a}}, {"horizon", std::int64_t{horizon}}});
  VerificationReport r;
  r.identity_id = "HITTING_PARTIAL_SUM";
  r.method = "exact";
  r.params = std::move(params);
  r.lhs = partial;
  r.rhs = limit;
  const BigRational gap = (limit - partial).abs();
  r.residual = gap;
  r.tolerance = tol.to_double();
  r.pass = gap <= tol && partial <= limit;
  r.runtime_ms = elapsed_ms(start);
  return r;
}

VerificationReport check_reflection(const WalkParams& w, long j, long n) {
  require_plus_minus(w, "check_reflection");
  if (j < 1 || n < 1) throw std::invalid_argument("check_reflection: need j, n >= 1");
  const auto start = std::chrono::steady_clock::now();
  const BigRational factor = (w.q() / w.p).pow(j);
  const BigRational s_lhs = prob_S(w, n, -j), s_rhs = factor * prob_S(w, n, j);
  const BigRational t_lhs = prob_T(w, -j, n), t_rhs = factor * prob_T(w, j, n);
  ParamList params = walk_params(w);
  append(params, {{"j", std::int64_t{j}}, {"n", std::int64_t{n}}});
  VerificationReport r = exact_report("REFLECTION", std::move(params), s_lhs, s_rhs, &t_lhs, &t_rhs);
  r.runtime_ms = elapsed_ms(start);
  return r;
}

VerificationReport check_darling_siegert(const WalkParams& w, long a, long b, long n) {
  w.validate();
  const bool positive = a >= 1 && b >= 0;
  const bool negative = a <= -1 && b <= 0;
  if (!positive && !(negative && w.kind == WalkKind::plus_minus))
    throw std::invalid_argument("check_darling_siegert: a and b must share a sign (a >= 1, b >= 0 or a <= -1, b <= 0)");
  if (n < std::labs(a + b)) throw std::invalid_argument("check_darling_siegert: need n >= |a + b|");
  const auto start = std::chrono::steady_clock::now();

  BigRational occ;
  for (long k = 0; k <= n; ++k) occ += prob_T(w, a, k) * prob_S(w, n - k, b);
  const BigRational target = prob_S(w, n, a + b);

  ParamList params = walk_params(w);
  append(params, {{"a", std::int64_t{a}}, {"b", std::int64_t{b}}, {"n", std::int64_t{n}}});
  VerificationReport r;
  if (b != 0) {
    BigRational pass_sum;
    for (long k = 0; k <= n; ++k) pass_sum += prob_T(w, a, k) * prob_T(w, b, n - k);
    const BigRational pass_target = prob_T(w, a + b, n);
    r = exact_report("DARLING_SIEGERT", std::move(params), target, occ, &pass_target, &pass_sum);
  } else {
    // T_0 is a return time, so the passage form has no b = 0 instance.
    r = exact_report("DARLING_SIEGERT", std::move(params), target, occ);
    r.notes.push_back("passage identity not applicable for b = 0");
  }
  r.runtime_ms = elapsed_ms(start);
  return r;
}

VerificationReport check_corollary(const WalkParams& w, CorollaryForm form, long mu, long nu, long r) {
  w.validate();
  if (mu < 1 || nu < 1 || r < 0) throw std::invalid_argument("check_corollary: need mu, nu >= 1 and r >= 0");
  const auto start = std::chrono::steady_clock::now();
  // Time step per unit of k: two for the +/-1 walk, one for the 0/1 walk.
  const long step = w.kind == WalkKind::plus_minus ? 2 : 1;
  BigRational sum;
  for (long k = 0; k <= r; ++k) {
    const BigRational first = prob_T(w, mu, step * k + mu);
    const long rest = step * (r - k) + nu;
    sum += first * (form == CorollaryForm::occupation ? prob_S(w, rest, nu) : prob_T(w, nu, rest));
  }
  const long total = step * r + mu + nu;
  const BigRational target =
      form == CorollaryForm::occupation ? prob_S(w, total, mu + nu) : prob_T(w, mu + nu, total);
  ParamList params = walk_params(w);
  append(params, {{"mu", std::int64_t{mu}}, {"nu", std::int64_t{nu}}, {"r", std::int64_t{r}}});
  VerificationReport rep = exact_report(
      form == CorollaryForm::occupation ? "DS_COROLLARY_OCCUPATION" : "DS_COROLLARY_PASSAGE", std::move(params),
      sum, target);
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

Pmf bridge_first_passage(const WalkParams& w, long mu, long nu, long r) {
  w.validate();
  require_plus_minus(w, "bridge_first_passage");
  if (mu < 1 || nu < 0 || r < 0) throw std::invalid_argument("bridge_first_passage: need mu >= 1, nu >= 0, r >= 0");
  const BigRational denom = prob_S(w, 2 * r + mu + nu, mu + nu);
  if (denom.is_zero()) throw std::domain_error("bridge_first_passage: conditioning event has probability zero");
  Pmf out;
  out.kind = walk_kind_name(w.kind);
  out.p = w.p;
  out.law = "bridge";
  out.params = {{"mu", std::int64_t{mu}}, {"nu", std::int64_t{nu}}, {"r", std::int64_t{r}}};
  for (long k = 0; k <= r; ++k) {
    BigRational m = prob_T(w, mu, 2 * k + mu) * prob_S(w, 2 * (r - k) + nu, nu) / denom;
    if (!m.is_zero()) out.mass.emplace(2 * k + mu, std::move(m));
  }
  return out;
}

VerificationReport check_bridge_closed_form(const WalkParams& w, long mu, long nu, long r) {
  const auto start = std::chrono::steady_clock::now();
  const Pmf law = bridge_first_passage(w, mu, nu, r);
  const std::vector<BigRational> closed = conditional_weights(mu, nu, r);
  BigRational worst;
  long mismatches = 0;
  for (long k = 0; k <= r; ++k) {
    const BigRational d = (law.at(2 * k + mu) - closed[k]).abs();
    if (!d.is_zero()) ++mismatches;
    if (d > worst) worst = d;
  }
  ParamList params = walk_params(w);
  append(params, {{"mu", std::int64_t{mu}}, {"nu", std::int64_t{nu}}, {"r", std::int64_t{r}}});
  VerificationReport rep;
  rep.identity_id = "BRIDGE_CLOSED_FORM";
  rep.method = "exact";
  rep.params = std::move(params);
  rep.lhs = law.total();
  rep.rhs = BigRational(1);
  rep.residual = worst;
  rep.pass = mismatches == 0;
  rep.details = {{"mismatches", std::int64_t{mismatches}}};
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

Pmf bridge_return_law(const WalkParams& w, long r) {
  if (r < 1) throw std::invalid_argument("bridge_return_law: need r >= 1");
  const Pmf hit = bridge_first_passage(w, 1, 0, r - 1);
  Pmf out;
  out.kind = hit.kind;
  out.p = hit.p;
  out.law = "bridge_return";
  out.params = {{"r", std::int64_t{r}}};
  // Hitting time 2(k-1)+1 of level 1 maps to return time 2k.
  for (const auto& [t, m] : hit.mass) out.mass.emplace(t + 1, m);
  return out;
}

VerificationReport check_bridge_return(const WalkParams& w, long r) {
  const auto start = std::chrono::steady_clock::now();
  const Pmf q = bridge_return_law(w, r);
  const BigRational denom = prob_S(w, 2 * r, 0);
  BigRational direct_total, worst;
  long mismatches = 0;
  for (long k = 1; k <= r; ++k) {
    const BigRational direct = prob_T(w, 0, 2 * k) * prob_S(w, 2 * r - 2 * k, 0) / denom;
    direct_total += direct;
    const BigRational d = (q.at(2 * k) - direct).abs();
    if (!d.is_zero()) ++mismatches;
    if (d > worst) worst = d;
  }
  ParamList params = walk_params(w);
  append(params, {{"r", std::int64_t{r}}});
  VerificationReport rep;
  rep.identity_id = "BRIDGE_RETURN";
  rep.method = "exact";
  rep.params = std::move(params);
  rep.lhs = q.total();
  rep.rhs = direct_total;
  rep.residual = worst;
  rep.pass = mismatches == 0;
  rep.details = {{"mismatches", std::int64_t{mismatches}}};
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport check_gamma_universality(const WalkParams& w, GammaIdentity id, long mu, long nu, long r) {
  w.validate();
  if (mu < 1 || r < 0) throw std::invalid_argument("check_gamma_universality: need mu >= 1, r >= 0");
  const auto start = std::chrono::steady_clock::now();
  std::vector<BigRational> from_walk;
  IdentityInstance inst{id, mu, nu, r};
  switch (id) {
    case GammaIdentity::sum_s: {
      require_plus_minus(w, "check_gamma_universality(EQ_S)");
      if (nu < 0) throw std::invalid_argument("check_gamma_universality: need nu >= 0");
      // The occupation factor P{S_m = nu} matches the Gamma form at nu + 1.
      inst.nu = nu + 1;
      const BigRational denom = prob_S(w, 2 * r + mu + nu, mu + nu);
      for (long k = 0; k <= r; ++k)
        from_walk.push_back(prob_T(w, mu, 2 * k + mu) * prob_S(w, 2 * (r - k) + nu, nu) / denom);
      break;
    }
    case GammaIdentity::sum_d: {
      require_plus_minus(w, "check_gamma_universality(EQ_D)");
      if (nu < 1) throw std::invalid_argument("check_gamma_universality: need nu >= 1");
      const BigRational denom = prob_T(w, mu + nu, 2 * r + mu + nu);
      for (long k = 0; k <= r; ++k)
        from_walk.push_back(prob_T(w, mu, 2 * k + mu) * prob_T(w, nu, 2 * (r - k) + nu) / denom);
      break;
    }
    case GammaIdentity::beta_b: {
      if (w.kind != WalkKind::non_decreasing)
        throw std::invalid_argument("check_gamma_universality(EQ_B): non-decreasing walk only");
      if (nu < 1) throw std::invalid_argument("check_gamma_universality: need nu >= 1");
      const BigRational denom = prob_T(w, mu + nu, r + mu + nu);
      for (long k = 0; k <= r; ++k)
        from_walk.push_back(prob_T(w, mu, k + mu) * prob_T(w, nu, r - k + nu) / denom);
      break;
    }
    default: throw std::invalid_argument("check_gamma_universality: identity has no walk form");
  }
  const std::vector<BigRational> terms = identity_summands(inst);
  const BigRational rhs = identity_rhs(inst);
  BigRational worst;
  long mismatches = 0;
  for (long k = 0; k <= r; ++k) {
    const BigRational d = (terms[k] / rhs - from_walk[k]).abs();
    if (!d.is_zero()) ++mismatches;
    if (d > worst) worst = d;
  }
  ParamList params = walk_params(w);
  append(params, {{"identity", std::string(gamma_identity_wire_id(id))},
                  {"mu", std::int64_t{mu}},
                  {"nu", std::int64_t{nu}},
                  {"r", std::int64_t{r}}});
  VerificationReport rep;
  rep.identity_id = "GAMMA_UNIVERSALITY";
  rep.method = "exact";
  rep.params = std::move(params);
  BigRational walk_total;
  for (const auto& v : from_walk) walk_total += v;
  rep.lhs = walk_total;
  rep.rhs = BigRational(1);
  rep.residual = worst;
  rep.pass = mismatches == 0;
  rep.details = {{"mismatches", std::int64_t{mismatches}}};
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

Pmf pmf_negative_binomial(long mu, const BigRational& p, long horizon) {
  WalkParams{p, WalkKind::plus_minus}.validate();
  if (mu < 1) throw std::invalid_argument("pmf_negative_binomial: need mu >= 1");
  if (horizon < 0) throw std::invalid_argument("pmf_negative_binomial: horizon must be non-negative");
  const BigRational q = BigRational(1) - p;
  Pmf out;
  out.kind = "NEGATIVE_BINOMIAL";
  out.p = p;
  out.law = "negbin";
  out.params = {{"mu", std::int64_t{mu}}, {"horizon", std::int64_t{horizon}}};
  const BigRational qmu = q.pow(mu);
  for (long n = 0; n <= horizon; ++n) out.mass.emplace(n, binomial(n + mu - 1, n) * p.pow(n) * qmu);
  out.truncated = true;
  out.tail_bound = BigRational(1) - out.total();
  return out;
}

VerificationReport check_negbin_additivity(long mu, long nu, const BigRational& p, long r) {
  if (nu < 1 || r < 0) throw std::invalid_argument("check_negbin_additivity: need nu >= 1, r >= 0");
  const auto start = std::chrono::steady_clock::now();
  const Pmf a = pmf_negative_binomial(mu, p, r), b = pmf_negative_binomial(nu, p, r);
  const Pmf ab = pmf_negative_binomial(mu + nu, p, r);
  BigRational sum;
  for (long k = 0; k <= r; ++k) sum += a.at(k) * b.at(r - k);
  VerificationReport rep = exact_report(
      "NEGBIN_ADDITIVITY",
      {{"p", p.str()}, {"mu", std::int64_t{mu}}, {"nu", std::int64_t{nu}}, {"r", std::int64_t{r}}}, sum, ab.at(r));
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

VerificationReport check_ds_equivalence(const WalkParams& w, long a, long b, long n) {
  w.validate();
  if (a < 1 || b < 1) throw std::invalid_argument("check_ds_equivalence: need a, b >= 1");
  if (n < a + b) throw std::invalid_argument("check_ds_equivalence: need n >= a + b");
  const auto start = std::chrono::steady_clock::now();
  const BigRational t_direct = prob_T(w, a, n);
  const BigRational t_from_s = BigRational(a, n) * prob_S(w, n, a);
  BigRational weighted;
  for (long k = 0; k <= n; ++k) weighted += BigRational(k) * prob_T(w, a, k) * prob_T(w, b, n - k);
  const BigRational target = BigRational(a * n, a + b) * prob_T(w, a + b, n);
  ParamList params = walk_params(w);
  append(params, {{"a", std::int64_t{a}}, {"b", std::int64_t{b}}, {"n", std::int64_t{n}}});
  VerificationReport rep =
      exact_report("DS_EQUIVALENCE", std::move(params), t_direct, t_from_s, &weighted, &target);
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

nlohmann::json pmf_to_json(const Pmf& pmf) {
  nlohmann::json masses = nlohmann::json::array();
  for (const auto& [n, m] : pmf.mass) masses.push_back({{"n", n}, {"mass", m.str()}});
  nlohmann::json j = {{"kind", pmf.kind},
                      {"p", pmf.p.str()},
                      {"law", pmf.law},
                      {"params", to_json(pmf.params)},
                      {"masses", std::move(masses)},
                      {"truncated", pmf.truncated}};
  j["tail_bound"] = pmf.truncated ? nlohmann::json(pmf.tail_bound.str()) : nlohmann::json(nullptr);
  return j;
}

std::string pmf_to_csv(const Pmf& pmf) {
  std::ostringstream os;
  os.precision(17);
  os << "n,mass_rational,mass_float\n";
  for (const auto& [n, m] : pmf.mass) os << n << ',' << m.str() << ',' << m.to_double() << '\n';
  return os.str();
}

}  // namespace dslab
