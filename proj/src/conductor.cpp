#include "tckit/conductor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace tc {

const char* alpha_source_name(AlphaSource s) {
  switch (s) {
    case AlphaSource::SurjectiveTateModule: return "surjective-tate-module";
    case AlphaSource::DefaultFloor: return "default-floor";
    case AlphaSource::UserOverride: return "user-override";
  }
  return "?";
}

std::pair<std::uint32_t, AlphaSource> alpha_p(std::uint64_t p, const ImageClass* image,
                                              std::optional<std::uint32_t> override_value) {
  if (override_value)
    return {std::max<std::uint32_t>(1, *override_value), AlphaSource::UserOverride};
  if (p > 3 && image && image->verdict == ImageVerdict::Full && !image->heuristic)
    return {1, AlphaSource::SurjectiveTateModule};
  return {1, AlphaSource::DefaultFloor};
}

std::uint32_t beta_p(std::uint64_t p, const std::vector<std::uint64_t>& S) {
  if (std::find(S.begin(), S.end(), p) == S.end())
    throw_bad_input("beta_p: p must belong to S");
  Factorization m;
  for (std::uint64_t l : S)
    if (l != p) m.pairs.emplace_back(l, 1);
  if (m.pairs.empty()) return 0;  // |GL2(Z/1)| = 1
  return gl2::gl2_order(m).valuation(p);
}

std::uint64_t A_of_E(const std::vector<std::uint64_t>& nonfull_primes) {
  std::uint64_t a = 30;
  for (std::uint64_t p : nonfull_primes) a *= p;
  return a;
}

ConductorReport compute_nE(const WeierstrassCurve& e, const ConductorOptions& opt,
                           const std::string& label) {
  ExceptionalSetOptions eopt;
  eopt.non_cm = opt.non_cm;
  eopt.prime_limit = opt.prime_limit;
  eopt.point_ceiling = opt.point_ceiling;
  ExceptionalSet S = exceptional_set(e, eopt);

  ConductorReport r;
  r.label = label;
  r.disc = e.disc;
  std::uint64_t absd = static_cast<std::uint64_t>(std::llabs(e.disc));
  r.rad_disc = radical(absd);
  r.sqfree_disc = sqfree_part(absd);
  r.semistable = is_semistable(e);
  r.S = S.primes;
  r.verdicts = S.verdicts;
  for (const std::string& c : S.caveats) {
    r.conditional = true;
    r.conditional_reasons.push_back(c);
  }

  std::vector<std::uint64_t> nonfull;
  for (const auto& [ell, v] : S.verdicts)
    if (v.verdict != ImageVerdict::Full) nonfull.push_back(ell);
  r.A_e = A_of_E(nonfull);

  for (std::uint64_t p : r.S) {
    PrimeExponents pe;
    pe.p = p;
    std::optional<std::uint32_t> ov;
    if (auto it = opt.alpha_overrides.find(p); it != opt.alpha_overrides.end()) ov = it->second;

    const ImageClass* image = nullptr;
    ImageClass mazur;
    if (p <= 7) {
      auto it = r.verdicts.find(static_cast<std::uint32_t>(p));
      if (it != r.verdicts.end()) image = &it->second;
    } else if (r.semistable && p >= 11) {
      // Semi-stable curves are surjective at every p >= 11.
      mazur.ell = static_cast<std::uint32_t>(p);
      mazur.verdict = ImageVerdict::Full;
      mazur.heuristic = false;
      mazur.certificate = "semi-stable and p >= 11";
      image = &mazur;
    }
    auto [alpha, source] = alpha_p(p, image, ov);
    pe.alpha = alpha;
    pe.alpha_source = source;
    pe.beta = beta_p(p, r.S);
    r.exponents.push_back(pe);

    if (source == AlphaSource::DefaultFloor) {
      r.conditional = true;
      r.conditional_reasons.push_back("alpha_" + std::to_string(p) +
                                      " uses the floor; the Tate-module exponent is unknown");
    } else if (source == AlphaSource::UserOverride) {
      r.conditional = true;
      r.conditional_reasons.push_back("alpha_" + std::to_string(p) + " supplied by override");
    }
  }

  r.n_e = BigNat(1);
  for (const auto& pe : r.exponents) {
    std::uint32_t exp = pe.alpha + pe.beta;
    r.n_e *= BigNat::pow(pe.p, exp);
    r.n_e_factored.pairs.emplace_back(pe.p, exp);
  }

  std::optional<std::uint64_t> cond = opt.conductor;
  if (!cond && r.semistable) cond = r.rad_disc;
  if (cond) r.b_e = B_E(*cond, e.disc);
  if (opt.cq) {
    r.cq = opt.cq;
    if (cond) {
      r.conditional_bound = conditional_mE_bound(e, *opt.cq, cond);
    } else {
      r.conditional = true;
      r.conditional_reasons.push_back("conditional bound skipped: conductor unknown");
    }
  }
  return r;
}

BoundCheck check_nE_bound(const ConductorReport& report) {
  if (!report.semistable)
    throw Error(errc::bad_input, "check_nE_bound: bound instance requires a semi-stable curve");
  BoundCheck c;
  c.lhs = report.n_e;
  c.rhs = BigNat(210 * report.rad_disc).pow(5);
  c.holds = c.lhs <= c.rhs;
  return c;
}

double B_E(std::uint64_t conductor, std::int64_t disc) {
  if (conductor < 1) throw_bad_input("B_E: conductor must be >= 1");
  if (disc == 0) throw_bad_input("B_E: discriminant must be nonzero");
  double prod = 1.0;
  for (auto [p, e] : factorize(static_cast<std::uint64_t>(std::llabs(disc))).pairs)
    prod *= 1.0 + 1.0 / static_cast<double>(p);
  return 4.0 * std::sqrt(6.0) / 3.0 * static_cast<double>(conductor) * std::sqrt(prod) + 1.0;
}

BigNat conditional_mE_bound(const WeierstrassCurve& e, std::uint32_t cq,
                            std::optional<std::uint64_t> conductor) {
  std::uint64_t n = conductor ? *conductor : conductor_semistable(e);
  double be = B_E(n, e.disc);
  // 1e-6 slack so primes sitting on the cutoff are included (over-inclusion
  // only strengthens the bound's base).
  BigNat prim = primorial_upto(be + 1e-6);
  BigNat result = prim.pow(static_cast<std::uint64_t>(cq) + 4);
  std::uint64_t rad = radical(static_cast<std::uint64_t>(std::llabs(e.disc)));
  result *= BigNat(rad).pow(5);
  return result;
}

std::string report_to_json(const ConductorReport& r) {
  nlohmann::json j;
  j["schema"] = "1";
  j["label"] = r.label;
  j["disc"] = r.disc;
  j["rad_disc"] = r.rad_disc;
  j["sqfree_disc"] = r.sqfree_disc;
  j["semistable"] = r.semistable;
  j["S"] = r.S;
  nlohmann::json exps = nlohmann::json::array();
  for (const auto& pe : r.exponents) {
    exps.push_back({{"p", pe.p},
                    {"alpha", pe.alpha},
                    {"alpha_source", alpha_source_name(pe.alpha_source)},
                    {"beta", pe.beta}});
  }
  j["exponents"] = exps;
  nlohmann::json fac = nlohmann::json::array();
  for (auto [p, e] : r.n_e_factored.pairs) fac.push_back({{"p", p}, {"e", e}});
  j["n_E_factored"] = fac;
  j["n_E"] = r.n_e.to_string();
  j["A_E"] = r.A_e;
  nlohmann::json images;
  for (const auto& [ell, v] : r.verdicts) {
    nlohmann::json iv;
    iv["verdict"] = image_verdict_name(v.verdict);
    iv["heuristic"] = v.heuristic;
    iv["certificate"] = v.certificate;
    if (!v.witness_primes.empty()) iv["witness_primes"] = v.witness_primes;
    if (v.group_order) iv["group_order"] = v.group_order;
    images[std::to_string(ell)] = iv;
  }
  j["images"] = images;
  if (r.semistable) {
    BoundCheck c = check_nE_bound(r);
    j["semistable_bound"] = {{"holds", c.holds},
                             {"n_E", c.lhs.to_string()},
                             {"limit", c.rhs.to_string()}};
  }
  if (r.b_e) j["B_E"] = *r.b_e;
  if (r.conditional_bound) {
    j["conditional_m_E_bound"] = r.conditional_bound->to_string();
    j["C_Q"] = *r.cq;
  }
  j["conditional"] = r.conditional;
  j["conditional_reasons"] = r.conditional_reasons;
  return j.dump(2);
}

}  // namespace tc
