// Independent test oracles: brute-force routes kept deliberately separate
// from the library implementations they check.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "tckit/curve.hpp"
#include "tckit/gl2.hpp"

namespace oracle {

// Invertible-matrix count over Z/nZ by scanning all n^4 tuples.
inline std::uint64_t gl2_order_brute(std::uint32_t n) {
  if (n == 1) return 1;
  auto gcd_u = [](std::uint64_t a, std::uint64_t b) {
    while (b) {
      std::uint64_t t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      for (std::uint64_t c = 0; c < n; ++c)
        for (std::uint64_t d = 0; d < n; ++d) {
          std::uint64_t det = (a * d % n + n - b * c % n) % n;
          if (gcd_u(det, n) == 1) ++count;
        }
  return count;
}

// Second, independent point count: scan every (x, y) pair against the full
// Weierstrass equation.
inline std::uint64_t count_points_brute(const tc::WeierstrassCurve& e, std::uint64_t p) {
  auto md = [&](std::int64_t v) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return r < 0 ? r + static_cast<std::int64_t>(p) : r;
  };
  std::uint64_t n = 1;
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(p); ++x)
    for (std::int64_t y = 0; y < static_cast<std::int64_t>(p); ++y) {
      std::int64_t lhs = md(md(y * y) + md(e.a1 % static_cast<std::int64_t>(p) * x % static_cast<std::int64_t>(p) * y) +
                            md(e.a3 % static_cast<std::int64_t>(p) * y));
      std::int64_t rhs = md(md(x * x % static_cast<std::int64_t>(p) * x) +
                            md(e.a2 % static_cast<std::int64_t>(p) * x % static_cast<std::int64_t>(p) * x) +
                            md(e.a4 % static_cast<std::int64_t>(p) * x) + md(e.a6));
      if (md(lhs - rhs) == 0) ++n;
    }
  return n;
}

// Sieve of Eratosthenes, written independently of tc::primes_upto.
inline std::vector<std::uint32_t> sieve(std::uint32_t n) {
  std::vector<bool> is(n + 1, true);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (!is[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= n; j += i) is[j] = false;
  }
  return out;
}

// Fixpoint closure under pairwise products; independent of the BFS closure.
inline std::set<std::uint64_t> closure_brute(const std::vector<tc::gl2::Mat>& gens) {
  std::vector<tc::gl2::Mat> elems{tc::gl2::identity(gens.front().n)};
  std::set<std::uint64_t> keys{elems[0].key()};
  for (const auto& g : gens)
    if (keys.insert(g.key()).second) elems.push_back(g);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<tc::gl2::Mat> next;
    for (const auto& x : elems)
      for (const auto& y : elems) {
        tc::gl2::Mat q = tc::gl2::mul(x, y);
        if (keys.insert(q.key()).second) {
          next.push_back(q);
          grew = true;
        }
      }
    for (const auto& m : next) elems.push_back(m);
  }
  return keys;
}

// v_p of |GL2(Z/M)| from the per-prime-power order formula, with plain
// integers: |GL2(Z/l^k)| = l^{4(k-1)} * l (l-1)^2 (l+1).
inline std::uint32_t vp_gl2_order_formula(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& m_fac,
                                          std::uint64_t p) {
  auto vp_u64 = [&](std::uint64_t n) {
    std::uint32_t e = 0;
    while (n > 0 && n % p == 0) {
      n /= p;
      ++e;
    }
    return e;
  };
  std::uint32_t total = 0;
  for (auto [l, k] : m_fac) {
    std::uint32_t vl = (l == p) ? 1 : 0;
    total += (4 * (k - 1) + 1) * vl + 2 * vp_u64(l - 1) + vp_u64(l + 1);
  }
  return total;
}

inline const std::vector<std::pair<const char*, std::array<std::int64_t, 5>>>& corpus() {
  static const std::vector<std::pair<const char*, std::array<std::int64_t, 5>>> c = {
      {"37a1", {0, 0, 1, -1, 0}},    {"43a1", {0, 1, 1, 0, 0}},
      {"53a1", {1, -1, 1, 0, 0}},    {"61a1", {1, 0, 0, -2, 1}},
      {"79a1", {1, 1, 1, -2, 0}},    {"83a1", {1, 1, 1, 1, 0}},
      {"89a1", {1, 1, 1, -1, 0}},    {"101a1", {0, 1, 1, -1, -1}},
      {"389a1", {0, 1, 1, -2, 0}},   {"5077a1", {0, 0, 1, -7, 6}},
      {"65a1", {1, 0, 0, -1, 0}},    {"91a", {0, 0, 1, 1, 0}},
      {"d19", {0, 1, 1, 1, 0}},      {"d611", {0, 0, 1, -1, 1}},
      {"11a1", {0, -1, 1, -10, -20}},
  };
  return c;
}

}  // namespace oracle
