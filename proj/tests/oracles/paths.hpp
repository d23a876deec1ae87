#pragma once

// Brute-force laws by enumerating every step sequence of a short walk, with
// exact path weights in plain GMP rationals. Independent of the library.

#include <gmpxx.h>

#include <map>

namespace oracle {

using Law = std::map<long, mpq_class>;

/// Up-step (or success) probability p; `plus_minus` selects +/-1 steps,
/// otherwise 0/1 steps.
struct Walk {
  mpq_class p;
  bool plus_minus = true;
};

/// Calls visit(positions, weight) for every path of length n, where
/// positions[i] is the level after i steps (positions[0] = 0).
template <class Visit>
void for_each_path(const Walk& w, int n, Visit&& visit) {
  const mpq_class q = 1 - w.p;
  long pos[64];
  for (unsigned long bits = 0; bits < (1UL << n); ++bits) {
    mpq_class weight = 1;
    pos[0] = 0;
    for (int i = 0; i < n; ++i) {
      const bool up = (bits >> i) & 1UL;
      weight *= up ? w.p : q;
      pos[i + 1] = pos[i] + (up ? 1 : (w.plus_minus ? -1 : 0));
    }
    visit(pos, weight);
  }
}

/// Law of S_n.
inline Law law_S(const Walk& w, int n) {
  Law out;
  for_each_path(w, n, [&](const long* pos, const mpq_class& wt) { out[pos[n]] += wt; });
  return out;
}

/// P{T_a = m} for 1 <= m <= n, T_a the first m >= 1 with S_m = a.
inline Law law_T(const Walk& w, long a, int n) {
  Law out;
  for_each_path(w, n, [&](const long* pos, const mpq_class& wt) {
    for (int m = 1; m <= n; ++m)
      if (pos[m] == a) {
        out[m] += wt;
        return;
      }
  });
  return out;
}

/// Law of T_mu given S_L = mu + nu, L = 2r + mu + nu (+/-1 walk).
inline Law law_bridge_passage(const Walk& w, long mu, long nu, long r) {
  const int len = static_cast<int>(2 * r + mu + nu);
  Law out;
  mpq_class total = 0;
  for_each_path(w, len, [&](const long* pos, const mpq_class& wt) {
    if (pos[len] != mu + nu) return;
    total += wt;
    for (int m = 1; m <= len; ++m)
      if (pos[m] == mu) {
        out[m] += wt;
        return;
      }
  });
  for (auto& [m, v] : out) v /= total;
  return out;
}

/// Law of the first return to 0 of the walk of length 2r given S_2r = 0.
inline Law law_bridge_return(const Walk& w, long r) {
  const int len = static_cast<int>(2 * r);
  Law out;
  mpq_class total = 0;
  for_each_path(w, len, [&](const long* pos, const mpq_class& wt) {
    if (pos[len] != 0) return;
    total += wt;
    for (int m = 1; m <= len; ++m)
      if (pos[m] == 0) {
        out[m] += wt;
        return;
      }
  });
  for (auto& [m, v] : out) v /= total;
  return out;
}

}  // namespace oracle
