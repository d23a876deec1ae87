#include "dslab/gamma_identities.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <stdexcept>
#include <string>

namespace dslab {

namespace {

constexpr std::array<std::string_view, 5> kWireIds = {"EQ_S", "EQ_D", "EQ_B", "EQ_BINOM", "EQ_PASCAL_CONV"};

BigInt fact(long n) {
  return static_cast<unsigned long>(n) <= kFactorialMemoCap ? factorial_memo(n) : factorial(n);
}

// Gamma(n) = (n-1)! for n >= 1.
BigInt gam(long n) { return fact(n - 1); }

BigRational ratio(const BigInt& num, const BigInt& den) { return BigRational(num, den); }

void validate(const IdentityInstance& inst) {
  if (inst.mu < 1 || inst.nu < 1) throw std::invalid_argument("gamma identity: mu and nu must be >= 1");
  if (inst.r < 0) throw std::invalid_argument("gamma identity: r must be >= 0");
}

BigRational summand(const IdentityInstance& inst, long k) {
  const long mu = inst.mu, nu = inst.nu, j = inst.r - k;
  switch (inst.id) {
    case GammaIdentity::sum_s:
      return ratio(gam(2 * k + mu) * gam(2 * j + nu), fact(k) * gam(k + mu + 1) * fact(j) * gam(j + nu));
    case GammaIdentity::sum_d:
      return ratio(gam(2 * k + mu) * gam(2 * j + nu), fact(k) * gam(k + mu + 1) * fact(j) * gam(j + nu + 1));
    case GammaIdentity::beta_b: return ratio(gam(k + mu) * gam(j + nu), fact(k) * fact(j));
    case GammaIdentity::binom: return BigInt(binomial_int(k + mu - 1, mu - 1) * binomial_int(j + nu - 1, nu - 1));
    case GammaIdentity::pascal_conv: {
      // Summation index kk = k + a runs over [a, n - b].
      const long a = mu, b = nu, n = inst.r + mu + nu, kk = k + a;
      return BigInt(binomial_int(kk - 1, a - 1) * binomial_int(n - kk, b));
    }
  }
  throw std::invalid_argument("gamma identity: unknown identity");
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string_view gamma_identity_wire_id(GammaIdentity id) {
  const auto i = static_cast<std::size_t>(id);
  if (i >= kWireIds.size()) throw std::invalid_argument("gamma identity: unknown identity");
  return kWireIds[i];
}

GammaIdentity parse_gamma_identity(std::string_view text) {
  for (std::size_t i = 0; i < kWireIds.size(); ++i)
    if (kWireIds[i] == text) return static_cast<GammaIdentity>(i);
  throw std::invalid_argument("unknown gamma identity id: " + std::string(text));
}

std::vector<BigRational> identity_summands(const IdentityInstance& inst) {
  validate(inst);
  std::vector<BigRational> out;
  out.reserve(inst.r + 1);
  for (long k = 0; k <= inst.r; ++k) out.push_back(summand(inst, k));
  return out;
}

BigRational identity_rhs(const IdentityInstance& inst) {
  validate(inst);
  const long mu = inst.mu, nu = inst.nu, r = inst.r;
  switch (inst.id) {
    case GammaIdentity::sum_s: return ratio(gam(2 * r + mu + nu), mu * fact(r) * gam(r + mu + nu));
    case GammaIdentity::sum_d:
      return ratio(BigInt(mu + nu) * gam(2 * r + mu + nu), BigInt(mu * nu) * fact(r) * gam(r + mu + nu + 1));
    case GammaIdentity::beta_b:
      return ratio(gam(mu) * gam(nu) * gam(r + mu + nu), gam(mu + nu) * fact(r));
    case GammaIdentity::binom: return binomial_int(r + mu + nu - 1, mu + nu - 1);
    case GammaIdentity::pascal_conv: return binomial_int(r + mu + nu, mu + nu);
  }
  throw std::invalid_argument("gamma identity: unknown identity");
}

VerificationReport check_identity(const IdentityInstance& inst) {
  const auto start = std::chrono::steady_clock::now();
  BigRational lhs;
  for (const auto& t : identity_summands(inst)) lhs += t;
  const BigRational rhs = identity_rhs(inst);

  VerificationReport rep;
  rep.identity_id = std::string(gamma_identity_wire_id(inst.id));
  rep.method = "exact";
  rep.params = {{"mu", std::int64_t{inst.mu}}, {"nu", std::int64_t{inst.nu}}, {"r", std::int64_t{inst.r}}};
  rep.residual = lhs - rhs;
  rep.pass = lhs == rhs;
  rep.lhs = std::move(lhs);
  rep.rhs = rhs;
  rep.tolerance = 0.0;
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

std::vector<BigRational> conditional_weights(long mu, long nu, long r) {
  if (mu < 1 || nu < 0 || r < 0) throw std::invalid_argument("conditional weights: need mu >= 1, nu >= 0, r >= 0");
  std::vector<BigRational> p;
  p.reserve(r + 1);
  for (long k = 0; k <= r; ++k) {
    const BigInt num = binomial_int(r, k) * binomial_int(r + mu + nu, k + mu) * mu;
    const BigInt den = binomial_int(2 * r + mu + nu, 2 * k + mu) * (2 * k + mu);
    p.push_back(ratio(num, den));
  }
  return p;
}

VerificationReport check_conditional_normalization(long mu, long nu, long r) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<BigRational> p = conditional_weights(mu, nu, r);
  BigRational total;
  bool nonnegative = true;
  for (const auto& w : p) {
    total += w;
    nonnegative = nonnegative && w.sign() >= 0;
  }
  VerificationReport rep;
  rep.identity_id = "COND_NORMALIZATION";
  rep.method = "exact";
  rep.params = {{"mu", std::int64_t{mu}}, {"nu", std::int64_t{nu}}, {"r", std::int64_t{r}}};
  rep.residual = total - BigRational(1);
  rep.pass = nonnegative && total == BigRational(1);
  rep.lhs = std::move(total);
  rep.rhs = BigRational(1);
  if (!nonnegative) rep.notes.push_back("negative weight");
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

namespace {

void check_bounds(long mu_max, long nu_max, long r_max) {
  if (mu_max < 1 || nu_max < 1 || r_max < 0)
    throw std::invalid_argument("identity sweep: need mu_max, nu_max >= 1 and r_max >= 0");
}

IdentityInstance grid_point(long index, long nu_max, long r_max, GammaIdentity id) {
  const long per_mu = nu_max * (r_max + 1);
  return {id, 1 + index / per_mu, 1 + (index % per_mu) / (r_max + 1), index % (r_max + 1)};
}

}  // namespace

std::vector<VerificationReport> identity_sweep(long mu_max, long nu_max, long r_max, Exec exec) {
  check_bounds(mu_max, nu_max, r_max);
  constexpr long kIds = std::size(kAllGammaIdentities);
  const long points = mu_max * nu_max * (r_max + 1);
  std::vector<VerificationReport> out(points * kIds);
  const auto body = [&](long i) {
    for (long j = 0; j < kIds; ++j)
      out[i * kIds + j] = check_identity(grid_point(i, nu_max, r_max, kAllGammaIdentities[j]));
  };
  if (exec == Exec::serial) {
    for (long i = 0; i < points; ++i) body(i);
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < points; ++i) body(i);
  }
  return out;
}

SweepSummary identity_sweep_summary(long mu_max, long nu_max, long r_max, Exec exec) {
  check_bounds(mu_max, nu_max, r_max);
  const long points = mu_max * nu_max * (r_max + 1);
  // Fixed blocks merged in order keep the failure list independent of scheduling.
  constexpr long kBlock = 64;
  const long blocks = (points + kBlock - 1) / kBlock;
  std::vector<SweepSummary> partial(blocks);
  const auto body = [&](long b) {
    for (long i = b * kBlock; i < std::min(points, (b + 1) * kBlock); ++i)
      for (const GammaIdentity id : kAllGammaIdentities) partial[b].add(check_identity(grid_point(i, nu_max, r_max, id)));
  };
  if (exec == Exec::serial) {
    for (long b = 0; b < blocks; ++b) body(b);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long b = 0; b < blocks; ++b) body(b);
  }
  SweepSummary s;
  for (auto& p : partial) s.merge(std::move(p));
  return s;
}

}  // namespace dslab
