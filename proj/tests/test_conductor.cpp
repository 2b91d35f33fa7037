#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tckit/conductor.hpp"

using namespace tc;

namespace {

WeierstrassCurve curve37a() { return make_curve(0, 0, 1, -1, 0); }

ImageClass proven_full(std::uint32_t ell) {
  ImageClass v;
  v.ell = ell;
  v.verdict = ImageVerdict::Full;
  v.heuristic = false;
  return v;
}

}  // namespace

TEST_CASE("alpha_p") {
  ImageClass full37 = proven_full(37);
  auto [a37, s37] = alpha_p(37, &full37, std::nullopt);
  CHECK(a37 == 1);
  CHECK(s37 == AlphaSource::SurjectiveTateModule);

  // Eq for the Tate module only applies for p > 3
  ImageClass full2 = proven_full(2);
  auto [a2, s2] = alpha_p(2, &full2, std::nullopt);
  CHECK(a2 == 1);
  CHECK(s2 == AlphaSource::DefaultFloor);

  ImageClass borel5;
  borel5.ell = 5;
  borel5.verdict = ImageVerdict::Borel;
  auto [a5, s5] = alpha_p(5, &borel5, 2);
  CHECK(a5 == 2);
  CHECK(s5 == AlphaSource::UserOverride);

  // the floor also applies to overrides
  auto [a0, s0] = alpha_p(5, &borel5, 0);
  CHECK(a0 == 1);
  CHECK(s0 == AlphaSource::UserOverride);
}

TEST_CASE("beta_p for S = {2,3,5,37}") {
  std::vector<std::uint64_t> S{2, 3, 5, 37};
  CHECK(beta_p(5, S) == 0);
  CHECK(beta_p(2, S) == 14);
  CHECK(beta_p(3, S) == 6);
  CHECK(beta_p(37, S) == 0);
  CHECK_THROWS_AS(beta_p(7, S), Error);

  // against the independent per-factor formula
  for (std::uint64_t p : S) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> rest;
    for (std::uint64_t l : S)
      if (l != p) rest.emplace_back(l, 1);
    CHECK(beta_p(p, S) == oracle::vp_gl2_order_formula(rest, p));
  }
}

TEST_CASE("compute_nE for 37a") {
  ConductorOptions opt;
  opt.non_cm = true;
  ConductorReport r = compute_nE(curve37a(), opt, "37a1");

  CHECK(r.S == std::vector<std::uint64_t>{2, 3, 5, 37});
  REQUIRE(r.exponents.size() == 4);
  CHECK(r.exponents[0].alpha + r.exponents[0].beta == 15);
  CHECK(r.exponents[1].alpha + r.exponents[1].beta == 7);
  CHECK(r.exponents[2].alpha + r.exponents[2].beta == 1);
  CHECK(r.exponents[3].alpha + r.exponents[3].beta == 1);
  CHECK(r.n_e.to_string() == "13257768960");
  CHECK(r.n_e >= BigNat(74));  // m_E = 74 for this curve and m_E <= n_E
  CHECK(r.A_e == 30);
  CHECK(r.semistable);
  CHECK(r.rad_disc == 37);
  CHECK(r.sqfree_disc == 37);

  // alpha sources: 5 and 37 ride on proven surjectivity, 2 and 3 on the floor
  CHECK(r.exponents[0].alpha_source == AlphaSource::DefaultFloor);
  CHECK(r.exponents[1].alpha_source == AlphaSource::DefaultFloor);
  CHECK(r.exponents[2].alpha_source == AlphaSource::SurjectiveTateModule);
  CHECK(r.exponents[3].alpha_source == AlphaSource::SurjectiveTateModule);
  CHECK(r.conditional);  // the 2- and 3-floors are hypotheses
}

TEST_CASE("every p^beta divides the companion group order (pre-Eq-8 chain)") {
  for (const auto& [label, a] : oracle::corpus()) {
    WeierstrassCurve e = make_curve(a[0], a[1], a[2], a[3], a[4]);
    if (!is_semistable(e)) continue;
    ConductorOptions opt;
    opt.non_cm = true;
    ConductorReport r = compute_nE(e, opt, label);

    Factorization prod;
    for (std::uint64_t p : r.S) prod.pairs.emplace_back(p, 1);
    BigNat order = gl2::gl2_order(prod);
    BigNat lhs(1);
    for (const auto& pe : r.exponents) lhs *= BigNat::pow(pe.p, pe.beta);
    CHECK(lhs <= order);
  }
}

TEST_CASE("beta invariant under exponent raising in the companion modulus") {
  std::mt19937_64 rng(23);
  std::vector<std::uint64_t> S{2, 3, 5, 37};
  for (std::uint64_t p : S) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> rest;
    for (std::uint64_t l : S)
      if (l != p) rest.emplace_back(l, 1);
    std::uint32_t base = beta_p(p, S);
    for (int trial = 0; trial < 20; ++trial) {
      Factorization raised;
      for (auto [l, e] : rest) raised.pairs.emplace_back(l, 1 + rng() % 3);
      CHECK(gl2::gl2_order(raised).valuation(p) == base);
    }
  }
}

TEST_CASE("A_of_E") {
  CHECK(A_of_E({}) == 30);
  CHECK(A_of_E({7}) == 210);
  CHECK(A_of_E({5}) == 150);  // the displayed product duplicates 5 literally
}

TEST_CASE("check_nE_bound") {
  ConductorOptions opt;
  opt.non_cm = true;
  ConductorReport r = compute_nE(curve37a(), opt, "37a1");
  BoundCheck c = check_nE_bound(r);
  CHECK(c.holds);
  CHECK(c.rhs.to_string() == "28320772412765700000");  // 7770^5

  // synthetic: S = {2,3,5}, rad = 1 checks against 210^5
  ConductorReport synth;
  synth.semistable = true;
  synth.rad_disc = 1;
  synth.n_e = BigNat(1);
  BoundCheck c2 = check_nE_bound(synth);
  CHECK(c2.holds);
  CHECK(c2.rhs == BigNat(210).pow(5));

  // a huge alpha override can push n_E past the semi-stable instance
  ConductorOptions big;
  big.non_cm = true;
  big.alpha_overrides[2] = 100;
  ConductorReport rb = compute_nE(curve37a(), big, "37a1");
  BoundCheck c3 = check_nE_bound(rb);
  CHECK(!c3.holds);

  ConductorReport bad;
  bad.semistable = false;
  CHECK_THROWS_AS(check_nE_bound(bad), Error);
}

TEST_CASE("B_E evaluation") {
  CHECK(B_E(37, 37) == doctest::Approx(123.46).epsilon(0.0005));
  CHECK(B_E(1, 1) == doctest::Approx(4.266).epsilon(0.0005));
  double base = B_E(37, 37) - 1.0;
  double doubled = B_E(74, 37) - 1.0;
  CHECK(doubled == doctest::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("conditional m_E bound") {
  WeierstrassCurve e = curve37a();
  BigNat b = conditional_mE_bound(e, 0);
  // primorial(123.46...)^4 * 37^5, frozen via an independent sieve product
  BigNat prim(1);
  for (std::uint32_t p : oracle::sieve(123)) prim *= p;
  BigNat expect = prim.pow(4);
  expect *= BigNat(37).pow(5);
  CHECK(b == expect);

  // monotone in C_Q
  CHECK(conditional_mE_bound(e, 0) <= conditional_mE_bound(e, 1));
  CHECK(conditional_mE_bound(e, 1) <= conditional_mE_bound(e, 3));
}

TEST_CASE("synthetic single-prime S gives n_E = p^alpha") {
  // With S = {p} the companion modulus is empty, so beta vanishes.
  CHECK(beta_p(37, {37}) == 0);
}

TEST_CASE("report JSON is canonical and carries decimal strings") {
  ConductorOptions opt;
  opt.non_cm = true;
  ConductorReport r = compute_nE(curve37a(), opt, "37a1");
  std::string j1 = report_to_json(r);
  std::string j2 = report_to_json(compute_nE(curve37a(), opt, "37a1"));
  CHECK(j1 == j2);
  CHECK(j1.find("\"n_E\": \"13257768960\"") != std::string::npos);
  CHECK(j1.find("\"schema\": \"1\"") != std::string::npos);
}

TEST_CASE("conditional bound via report options") {
  ConductorOptions opt;
  opt.non_cm = true;
  opt.cq = 0;
  ConductorReport r = compute_nE(curve37a(), opt, "37a1");
  REQUIRE(r.conditional_bound.has_value());
  CHECK(r.b_e.has_value());
  CHECK(*r.b_e == doctest::Approx(123.46).epsilon(0.0005));
}
