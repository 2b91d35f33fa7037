#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "tckit/intutil.hpp"

namespace tc::gl2 {

// 2x2 matrix over Z/nZ, entries stored as canonical residues row-major
// (a b; c d).  Moduli handled by subgroup machinery stay below 2^16.
struct Mat {
  std::uint32_t n = 1;
  std::array<std::uint32_t, 4> e{0, 0, 0, 0};

  bool operator==(const Mat& o) const { return n == o.n && e == o.e; }
  std::uint64_t key() const {
    return (std::uint64_t(e[0]) << 48) | (std::uint64_t(e[1]) << 32) |
           (std::uint64_t(e[2]) << 16) | e[3];
  }
};

struct MatHash {
  std::size_t operator()(const Mat& m) const {
    std::uint64_t k = m.key() * 0x9e3779b97f4a7c15ULL;
    return static_cast<std::size_t>(k ^ (k >> 32));
  }
};

using MatSet = std::unordered_set<Mat, MatHash>;

Mat make_mat(std::uint32_t n, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
Mat identity(std::uint32_t n);
Mat mul(const Mat& x, const Mat& y);
Mat inverse(const Mat& x);
std::uint32_t det(const Mat& x);
std::uint32_t trace(const Mat& x);
bool is_invertible(const Mat& x);

// Entrywise reduction mod d; requires d | n.
Mat project(const Mat& x, std::uint32_t d);

// Explicit finite subgroup: elements are always the closure of generators.
struct Subgroup {
  std::uint32_t n = 1;
  std::vector<Mat> generators;
  MatSet elements;

  std::size_t size() const { return elements.size(); }
  bool contains(const Mat& m) const { return elements.count(m) != 0; }
  bool contains_all(const Subgroup& other) const;
};

inline constexpr std::size_t kDefaultClosureBudget = 1000000;
inline constexpr std::size_t kDefaultNormalBudget = 5000;

// |GL2(Z/nZ)|, multiplicative over prime powers with
// |GL2(Z/p^k)| = p^{4(k-1)} (p^2-1)(p^2-p).
BigNat gl2_order(std::uint64_t n);
BigNat gl2_order(const Factorization& f);

// The one-step kernel I + p^{level-1} M2x2(Z/p) inside GL2(Z/p^level),
// as a subgroup of p^4 elements.  level is alpha+1 or alpha+2.
Subgroup reduction_kernel(std::uint64_t p, std::uint32_t alpha, std::uint32_t level);

// Breadth-first closure under multiplication; throws resource_limit past budget.
Subgroup subgroup_closure(std::vector<Mat> generators,
                          std::size_t budget = kDefaultClosureBudget);

// Full GL2(Z/nZ) by enumeration, with the standard generating set
// (elementary matrices plus diagonal unit generators) attached.
Subgroup full_gl2(std::uint32_t n);

// Kernel of det: all matrices mod n with determinant 1, by enumeration.
Subgroup sl2(std::uint32_t n);

// Subgroup generated by all commutators, via the normal closure of the
// commutators of the generating set.
Subgroup commutator_subgroup(const Subgroup& g, std::size_t budget = kDefaultClosureBudget);

// All normal subgroups, as closures of unions of conjugacy classes.
// Requires |g| <= max_order (throws resource_limit otherwise).
std::vector<Subgroup> normal_subgroups(const Subgroup& g,
                                       std::size_t max_order = kDefaultNormalBudget);

// Simple non-abelian groups identified by order; the only orders reachable
// at desk moduli are the PSL2 family below (A5 = PSL2(F5)).
enum class SimpleGroupId { PSL2_5, PSL2_7, PSL2_8, PSL2_9, PSL2_11 };

const char* simple_group_name(SimpleGroupId id);
std::uint64_t simple_group_order(SimpleGroupId id);
std::optional<SimpleGroupId> simple_group_by_order(std::uint64_t order);

// Simple non-abelian quotients of g: for each maximal proper normal N with
// [g,g] not contained in N, the quotient g/N is simple non-abelian.
std::set<SimpleGroupId> simple_nonabelian_quotients(const Subgroup& g,
                                                    std::size_t normal_budget = kDefaultNormalBudget,
                                                    std::size_t closure_budget = kDefaultClosureBudget);

// Sound under-approximation of Occ(GL2(Z/M)): closes `samples` random
// generator pairs and unions their simple non-abelian quotients.  Subgroups
// past the budgets are skipped, so the result is budget-dependent but every
// reported group genuinely occurs.
std::set<SimpleGroupId> occ_search(std::uint32_t modulus, std::size_t samples,
                                   std::uint64_t seed,
                                   std::size_t normal_budget = kDefaultNormalBudget,
                                   std::size_t closure_budget = kDefaultClosureBudget);

}  // namespace tc::gl2
