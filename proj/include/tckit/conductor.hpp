#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tckit/curve.hpp"
#include "tckit/galois.hpp"
#include "tckit/intutil.hpp"

namespace tc {

enum class AlphaSource { SurjectiveTateModule, DefaultFloor, UserOverride };
const char* alpha_source_name(AlphaSource s);

struct PrimeExponents {
  std::uint64_t p = 0;
  std::uint32_t alpha = 1;
  AlphaSource alpha_source = AlphaSource::DefaultFloor;
  std::uint32_t beta = 0;
};

struct ConductorReport {
  std::string label;
  std::vector<std::uint64_t> S;
  std::vector<PrimeExponents> exponents;  // one per p in S, same order
  BigNat n_e{1};
  Factorization n_e_factored;
  std::uint64_t A_e = 30;
  std::uint64_t rad_disc = 1;
  std::uint64_t sqfree_disc = 1;
  std::int64_t disc = 0;
  bool semistable = false;
  bool conditional = false;
  std::vector<std::string> conditional_reasons;
  std::map<std::uint32_t, ImageClass> verdicts;
  std::optional<double> b_e;              // set when the conductor is known
  std::optional<BigNat> conditional_bound;  // set when cq was requested
  std::optional<std::uint32_t> cq;
};

struct ConductorOptions {
  bool non_cm = false;
  std::uint64_t prime_limit = 1000;
  std::uint64_t point_ceiling = kDefaultPointCeiling;
  std::map<std::uint64_t, std::uint32_t> alpha_overrides;
  std::optional<std::uint64_t> conductor;  // required for B_E unless semi-stable
  std::optional<std::uint32_t> cq;         // compute the conditional bound
};

// alpha_p per the max{1, n_Q(p)} floor.  Surjectivity collapses the Tate
// module exponent to 0 only for p > 3, so only a proven Full image (or
// Mazur's theorem for semi-stable p >= 11) yields SurjectiveTateModule.
std::pair<std::uint32_t, AlphaSource> alpha_p(std::uint64_t p, const ImageClass* image,
                                              std::optional<std::uint32_t> override_value);

// Exponent of p in |GL2(Z/M)| for M the product of S minus p; rejects p
// outside S.
std::uint32_t beta_p(std::uint64_t p, const std::vector<std::uint64_t>& S);

// 30 times the product of the given non-full primes, literally.
std::uint64_t A_of_E(const std::vector<std::uint64_t>& nonfull_primes);

ConductorReport compute_nE(const WeierstrassCurve& e, const ConductorOptions& opt,
                           const std::string& label = "");

struct BoundCheck {
  bool holds = false;
  BigNat lhs{0};  // n_E
  BigNat rhs{0};  // (210 rad disc)^5
};

// Explicit-constant instance of the semi-stable bound; throws on
// non-semi-stable reports.
BoundCheck check_nE_bound(const ConductorReport& report);

// (4 sqrt 6 / 3) N prod_{p | disc} (1 + 1/p)^{1/2} + 1
double B_E(std::uint64_t conductor, std::int64_t disc);

// primorial(B_E)^{cq+4} * rad(disc)^5, exact.
BigNat conditional_mE_bound(const WeierstrassCurve& e, std::uint32_t cq,
                            std::optional<std::uint64_t> conductor = std::nullopt);

// Canonical JSON: sorted keys, BigNat fields as decimal strings.
std::string report_to_json(const ConductorReport& report);

}  // namespace tc
