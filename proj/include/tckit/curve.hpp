#pragma once

#include <cstdint>
#include <vector>

#include "tckit/intutil.hpp"

namespace tc {

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// with the standard derived invariants.  Models are assumed minimal; for
// square-free discriminants this is automatic.
struct WeierstrassCurve {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  std::int64_t b2 = 0, b4 = 0, b6 = 0, b8 = 0;
  std::int64_t c4 = 0, c6 = 0;
  std::int64_t disc = 0;  // nonzero for a valid model
};

enum class ReductionType { Good, Multiplicative, Additive };

struct FrobeniusSample {
  std::uint64_t p = 0;
  std::int64_t ap = 0;  // p + 1 - #E(F_p), |ap| <= 2 sqrt(p)
};

inline constexpr std::uint64_t kDefaultPointCeiling = 100000;

// Builds the curve with all derived invariants; throws bad_input when the
// model is singular (disc = 0) or a derived invariant overflows 64 bits.
WeierstrassCurve make_curve(std::int64_t a1, std::int64_t a2, std::int64_t a3,
                            std::int64_t a4, std::int64_t a6);

ReductionType reduction_type(const WeierstrassCurve& e, std::uint64_t p);
const char* reduction_type_name(ReductionType t);

// True iff no prime of bad reduction is additive.
bool is_semistable(const WeierstrassCurve& e);

// #E(F_p) by O(p) enumeration with a quadratic-residue table.
std::uint64_t count_points(const WeierstrassCurve& e, std::uint64_t p,
                           std::uint64_t ceiling = kDefaultPointCeiling);

std::int64_t trace_ap(const WeierstrassCurve& e, std::uint64_t p,
                      std::uint64_t ceiling = kDefaultPointCeiling);

// One sample per good prime <= limit, ascending.
std::vector<FrobeniusSample> frobenius_samples(const WeierstrassCurve& e,
                                               std::uint64_t limit,
                                               std::uint64_t ceiling = kDefaultPointCeiling);

// rad(|disc|); valid as the conductor only for semi-stable curves (throws
// otherwise -- supply the conductor explicitly in that case).
std::uint64_t conductor_semistable(const WeierstrassCurve& e);

}  // namespace tc
