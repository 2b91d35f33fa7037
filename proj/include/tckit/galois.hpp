#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tckit/curve.hpp"
#include "tckit/gl2.hpp"

namespace tc {

enum class ImageVerdict {
  Full,
  Borel,
  SplitCartanNormalizer,
  NonsplitCartanNormalizer,
  Exceptional,
  Undetermined,
};

const char* image_verdict_name(ImageVerdict v);

// Verdict for the mod-ell representation.  Full is only ever emitted with a
// proof: escape witnesses against every signature class (ell = 5, 7) or the
// division-polynomial Galois computation (ell = 2, 3).  Non-Full verdicts at
// ell >= 3 are heuristic.
struct ImageClass {
  std::uint32_t ell = 0;
  ImageVerdict verdict = ImageVerdict::Undetermined;
  bool heuristic = true;
  // For sample-certified Full: per-class escape primes.
  std::vector<std::uint64_t> witness_primes;
  // Human-readable proof sketch (polynomial facts / matched class).
  std::string certificate;
  // Exact image order when proven at ell = 2 (6, 3, 2 or 1).
  std::uint32_t group_order = 0;
};

// Per-class exact sets of realized (trace, det) pairs, built from explicitly
// constructed subgroup representatives.
struct SignatureTable {
  struct ClassSig {
    ImageVerdict verdict;
    std::string name;
    std::set<std::pair<std::uint32_t, std::uint32_t>> sig;
    std::size_t subgroup_order;
  };
  std::uint32_t ell = 0;
  std::vector<ClassSig> classes;
};

// Builds (and caches) the table for ell in {3, 5, 7}.
const SignatureTable& signature_table(std::uint32_t ell);

// Image of the mod-2 representation inside GL2(F2), decided exactly through
// the 2-division cubic 4x^3 + b2 x^2 + 2 b4 x + b6.
ImageClass mod2_image(const WeierstrassCurve& e);

// Proof of mod-3 surjectivity: the 3-division polynomial's x-action realizes
// GL2(F3)/{+-1} = S4 on the four 3-torsion x-coordinates, and no proper
// subgroup of GL2(F3) surjects onto S4.  Decided by exact quartic Galois
// group computation (rational roots, resolvent cubic, discriminant square).
bool mod3_surjective(const WeierstrassCurve& e);

ImageClass classify_mod_ell(const WeierstrassCurve& e, std::uint32_t ell,
                            std::uint64_t prime_limit,
                            std::uint64_t ceiling = kDefaultPointCeiling);

struct ExceptionalSetOptions {
  bool non_cm = false;  // CM curves must be excluded by the caller's assertion
  std::uint64_t prime_limit = 1000;
  std::uint64_t point_ceiling = kDefaultPointCeiling;
};

struct ExceptionalSet {
  std::vector<std::uint64_t> primes;  // ascending
  bool complete = false;              // true for semi-stable curves (Mazur)
  std::vector<std::string> caveats;
  std::map<std::uint32_t, ImageClass> verdicts;  // ell in {2,3,5,7}
};

// S = {2,3,5} u {p | disc} u {ell checkable : verdict != Full}.
ExceptionalSet exceptional_set(const WeierstrassCurve& e, const ExceptionalSetOptions& opt);

// Assembly step split out so synthetic verdicts can be injected in tests.
ExceptionalSet assemble_exceptional_set(const std::map<std::uint32_t, ImageClass>& verdicts,
                                        const Factorization& disc_primes, bool semistable);

// Re-derives a Full verdict's certificate from scratch; used by the
// acceptance suite to confirm certificates are self-verifying.
bool revalidate_full_certificate(const WeierstrassCurve& e, const ImageClass& image,
                                 std::uint64_t ceiling = kDefaultPointCeiling);

}  // namespace tc
