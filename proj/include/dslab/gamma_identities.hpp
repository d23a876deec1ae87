#pragma once

// Exact checks of the Gamma-function summation identities and the binomial
// convolutions they reduce to, for integer parameters.

#include "dslab/exact_arith.hpp"
#include "dslab/parallel.hpp"
#include "dslab/report.hpp"

#include <string_view>
#include <vector>

namespace dslab {

enum class GammaIdentity {
  // sum_k G(2k+mu)/(k! G(k+mu+1)) G(2r-2k+nu)/((r-k)! G(r-k+nu)) = G(2r+mu+nu)/(mu r! G(r+mu+nu))
  sum_s,
  // as sum_s with G(r-k+nu+1) and (1/mu + 1/nu) G(2r+mu+nu)/(r! G(r+mu+nu+1))
  sum_d,
  // sum_k G(k+mu)/k! G(r-k+nu)/(r-k)! = G(mu) G(nu)/G(mu+nu) G(r+mu+nu)/r!
  beta_b,
  // sum_k C(k+mu-1, mu-1) C(r-k+nu-1, nu-1) = C(r+mu+nu-1, mu+nu-1)
  binom,
  // sum_{k=a}^{n-b} C(k-1, a-1) C(n-k, b) = C(n, a+b) with a = mu, b = nu, n = r+mu+nu
  pascal_conv,
};

inline constexpr GammaIdentity kAllGammaIdentities[] = {GammaIdentity::sum_s, GammaIdentity::sum_d,
                                                        GammaIdentity::beta_b, GammaIdentity::binom,
                                                        GammaIdentity::pascal_conv};

/// "EQ_S", "EQ_D", "EQ_B", "EQ_BINOM", "EQ_PASCAL_CONV".
std::string_view gamma_identity_wire_id(GammaIdentity id);
GammaIdentity parse_gamma_identity(std::string_view text);

struct IdentityInstance {
  GammaIdentity id = GammaIdentity::sum_s;
  long mu = 1;
  long nu = 1;
  long r = 0;
};

/// The r+1 summands of the left side in summation order.
std::vector<BigRational> identity_summands(const IdentityInstance& inst);
BigRational identity_rhs(const IdentityInstance& inst);

/// Exact comparison; lhs, rhs and residual are rationals, tolerance 0.
/// std::invalid_argument for mu, nu < 1 or r < 0.
VerificationReport check_identity(const IdentityInstance& inst);

/// p_k = C(r,k) C(r+mu+nu, k+mu) / C(2r+mu+nu, 2k+mu) * mu/(2k+mu), k = 0..r.
std::vector<BigRational> conditional_weights(long mu, long nu, long r);

/// Checks that the weights are non-negative and sum to exactly 1.
/// Requires mu >= 1, nu >= 0, r >= 0.
VerificationReport check_conditional_normalization(long mu, long nu, long r);

/// Every identity at every (mu, nu, r) in [1, mu_max] x [1, nu_max] x
/// [0, r_max]; reports ordered by (mu, nu, r, identity).
std::vector<VerificationReport> identity_sweep(long mu_max, long nu_max, long r_max,
                                               Exec exec = Exec::parallel);

/// Same grid, keeping only counts and failing reports. The result does not
/// depend on the thread count.
SweepSummary identity_sweep_summary(long mu_max, long nu_max, long r_max, Exec exec = Exec::parallel);

}  // namespace dslab
