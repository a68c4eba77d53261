#pragma once

// Brute-force reference implementations, deliberately sharing no code with
// the library: plain loops, long double roots corrected by integer checks,
// and naive sums.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Term {
  u64 a;
  unsigned k;
};

inline u128 ipow(u64 b, unsigned k) {
  u128 r = 1;
  for (unsigned i = 0; i < k; ++i) r *= b;
  return r;
}

/// Floor of the k-th root, via long double then nudged to the exact answer.
inline u64 root_floor(u128 v, unsigned k) {
  if (v == 0) return 0;
  u64 r = static_cast<u64>(std::pow(static_cast<long double>(v), 1.0L / k));
  while (r > 0 && ipow(r, k) > v) --r;
  while (ipow(r + 1, k) <= v) ++r;
  return r;
}

/// Visits every ordered tuple over `terms` (x >= 1) whose weighted sum is
/// <= bound, passing the sum.
inline void tuples_up_to(const std::vector<Term>& terms, u128 bound, const std::function<void(u128)>& visit) {
  std::function<void(std::size_t, u128)> go = [&](std::size_t i, u128 partial) {
    if (i == terms.size()) {
      visit(partial);
      return;
    }
    for (u64 x = 1;; ++x) {
      const u128 v = partial + terms[i].a * ipow(x, terms[i].k);
      if (v > bound) break;
      go(i + 1, v);
    }
  };
  go(0, 0);
}

/// Ordered tuples with weighted sum exactly n.
inline u128 representations(const std::vector<Term>& terms, u64 n) {
  u128 c = 0;
  tuples_up_to(terms, n, [&](u128 s) { c += s == n; });
  return c;
}

/// x1 = sum a_j x_j^k_j, all variables in [1,N].
inline u128 explicit_count(const std::vector<Term>& terms, u64 side) {
  u128 c = 0;
  tuples_up_to(terms, side, [&](u128) { ++c; });
  return c;
}

/// x1^k = sum x_j^k over `rhs` terms, all variables in [1,N].
inline u128 homogeneous_count(unsigned k, std::size_t rhs, u64 side) {
  const std::vector<Term> terms(rhs, Term{1, k});
  u128 c = 0;
  tuples_up_to(terms, ipow(side, k), [&](u128 s) {
    const u64 r = root_floor(s, k);
    c += ipow(r, k) == s;
  });
  return c;
}

/// Solutions of m1^k+..+mt^k = m1'^k+..+mt'^k in [1,P], by a map of sums.
inline u128 moment(unsigned k, unsigned t, u64 p) {
  std::map<u128, u128> freq;
  std::vector<u64> m(t, 1);
  for (;;) {
    u128 s = 0;
    for (auto x : m) s += ipow(x, k);
    ++freq[s];
    std::size_t i = 0;
    while (i < t && m[i] == p) m[i++] = 1;
    if (i == t) break;
    ++m[i];
  }
  u128 total = 0;
  for (const auto& [_, f] : freq) total += f * f;
  return total;
}

/// Closed-form OLS slope of log y on log x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
