#include "tckit/lemma.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"

namespace tc::lemma {

namespace {

using gl2::Mat;
using gl2::Subgroup;

std::uint64_t upow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::string mat_str(const Mat& m) {
  std::ostringstream os;
  os << "[[" << m.e[0] << "," << m.e[1] << "],[" << m.e[2] << "," << m.e[3] << "]] mod " << m.n;
  return os.str();
}

Mat mat_pow(Mat m, std::uint64_t e) {
  Mat r = gl2::identity(m.n);
  while (e) {
    if (e & 1) r = gl2::mul(r, m);
    m = gl2::mul(m, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

CheckOutcome power_lift_check(std::uint64_t p, std::uint32_t alpha,
                              const std::array<std::int64_t, 4>& A,
                              const std::array<std::int64_t, 4>& B) {
  if (alpha < 1) throw_bad_input("power_lift_check: alpha must be >= 1");
  std::uint64_t mod = upow(p, alpha + 2);
  if (mod > 0xffff) throw_resource("power_lift_check: modulus beyond machine range");
  auto n = static_cast<std::uint32_t>(mod);
  std::int64_t pa = static_cast<std::int64_t>(upow(p, alpha));
  std::int64_t pa1 = pa * static_cast<std::int64_t>(p);

  Mat x = gl2::make_mat(n, 1 + pa * A[0] + pa1 * B[0], pa * A[1] + pa1 * B[1],
                        pa * A[2] + pa1 * B[2], 1 + pa * A[3] + pa1 * B[3]);
  Mat lhs = mat_pow(x, p);
  Mat rhs = gl2::make_mat(n, 1 + pa1 * A[0], pa1 * A[1], pa1 * A[2], 1 + pa1 * A[3]);

  CheckOutcome out;
  out.name = "power-lift";
  out.parameters = {{"p", std::to_string(p)}, {"alpha", std::to_string(alpha)}};
  out.passed = lhs == rhs;
  if (!out.passed) {
    std::ostringstream ce;
    ce << "X=" << mat_str(x) << " X^" << p << "=" << mat_str(lhs) << " expected " << mat_str(rhs);
    out.counterexample = ce.str();
  }
  return out;
}

CheckOutcome kernel_absorption_check(std::uint64_t p, std::uint32_t alpha, LiftSpec spec,
                                     std::uint64_t seed, std::size_t budget) {
  std::uint64_t mod = upow(p, alpha + 2);
  if (mod > 0xffff) throw_resource("kernel_absorption_check: modulus beyond machine range");
  auto n = static_cast<std::uint32_t>(mod);
  std::int64_t pa = static_cast<std::int64_t>(upow(p, alpha));
  std::int64_t pa1 = pa * static_cast<std::int64_t>(p);

  std::mt19937_64 rng(seed);
  auto pick_b = [&]() -> std::int64_t {
    return spec == LiftSpec::Zero ? 0 : static_cast<std::int64_t>(rng() % p);
  };

  // One lift I + p^a A + p^{a+1} B per element of ker pi_1.
  std::vector<Mat> gens;
  for (std::uint64_t a0 = 0; a0 < p; ++a0)
    for (std::uint64_t a1 = 0; a1 < p; ++a1)
      for (std::uint64_t a2 = 0; a2 < p; ++a2)
        for (std::uint64_t a3 = 0; a3 < p; ++a3) {
          gens.push_back(gl2::make_mat(
              n, 1 + pa * static_cast<std::int64_t>(a0) + pa1 * pick_b(),
              pa * static_cast<std::int64_t>(a1) + pa1 * pick_b(),
              pa * static_cast<std::int64_t>(a2) + pa1 * pick_b(),
              1 + pa * static_cast<std::int64_t>(a3) + pa1 * pick_b()));
        }
  Subgroup nprime = gl2::subgroup_closure(gens, budget);
  Subgroup ker2 = gl2::reduction_kernel(p, alpha, alpha + 2);

  CheckOutcome out;
  out.name = "kernel-absorption";
  out.parameters = {{"p", std::to_string(p)},
                    {"alpha", std::to_string(alpha)},
                    {"lifts", spec == LiftSpec::Zero ? "zero" : "random"},
                    {"seed", std::to_string(seed)}};
  out.passed = true;
  for (const Mat& k : ker2.elements) {
    if (!nprime.contains(k)) {
      out.passed = false;
      out.counterexample = mat_str(k) + " in ker pi_2 but outside the closure";
      break;
    }
  }
  out.detail = "|N'| = " + std::to_string(nprime.size());
  return out;
}

CheckOutcome vp_stability_check(std::uint64_t p, std::uint64_t M) {
  if (M % p == 0) throw_bad_input("vp_stability_check: requires p not dividing M");
  CheckOutcome out;
  out.name = "vp-stability";
  out.parameters = {{"p", std::to_string(p)}, {"M", std::to_string(M)}};
  std::uint32_t full = gl2::gl2_order(M).valuation(p);
  std::uint32_t rad = gl2::gl2_order(radical(M)).valuation(p);
  out.passed = full == rad;
  if (!out.passed)
    out.counterexample = "v_p|GL2(Z/M)| = " + std::to_string(full) +
                         " but v_p|GL2(Z/rad M)| = " + std::to_string(rad);
  return out;
}

CheckOutcome commutator_sl2_check(std::uint32_t M, std::size_t budget) {
  Subgroup g = gl2::full_gl2(M);
  Subgroup derived = gl2::commutator_subgroup(g, budget);
  Subgroup s = gl2::sl2(M);

  CheckOutcome out;
  out.name = "commutator-sl2";
  out.parameters = {{"M", std::to_string(M)}};
  out.passed = derived.size() == s.size() && s.contains_all(derived);
  out.detail = "|[G,G]| = " + std::to_string(derived.size()) +
               ", |SL2| = " + std::to_string(s.size());
  if (!out.passed) {
    for (const Mat& m : s.elements)
      if (!derived.contains(m)) {
        out.counterexample = mat_str(m) + " has det 1 but is not a product of commutators";
        break;
      }
  }
  return out;
}

CheckOutcome simple_quotient_check(std::uint32_t M, std::size_t normal_budget) {
  CheckOutcome out;
  out.name = "simple-quotients";
  out.parameters = {{"M", std::to_string(M)}};

  std::set<gl2::SimpleGroupId> found;
  // GL2(Z/M) is the direct product of GL2(Z/p^k) over prime powers, and a
  // simple quotient of a product is a simple quotient of a factor.
  for (auto [p, k] : factorize(M).pairs) {
    auto q = static_cast<std::uint32_t>(upow(p, k));
    Subgroup g = gl2::full_gl2(q);
    auto quots = gl2::simple_nonabelian_quotients(g, normal_budget);
    found.insert(quots.begin(), quots.end());
  }

  out.passed = true;
  std::ostringstream names;
  for (auto id : found) {
    names << gl2::simple_group_name(id) << " ";
    std::uint64_t p = 0;
    switch (id) {
      case gl2::SimpleGroupId::PSL2_5: p = 5; break;
      case gl2::SimpleGroupId::PSL2_7: p = 7; break;
      case gl2::SimpleGroupId::PSL2_11: p = 11; break;
      default: p = 0; break;
    }
    if (p == 0 || M % p != 0 || p <= 3) {
      out.passed = false;
      out.counterexample = std::string(gl2::simple_group_name(id)) +
                           " is a quotient but lies outside the PSL2(p | M, p > 3) union";
    }
  }
  out.detail = found.empty() ? "no simple non-abelian quotients" : "found: " + names.str();
  return out;
}

std::set<gl2::SimpleGroupId> occ_expected(std::uint32_t M) {
  std::set<gl2::SimpleGroupId> e;
  for (auto [p, k] : factorize(M).pairs) {
    if (p == 5) e.insert(gl2::SimpleGroupId::PSL2_5);
    if (p > 5) {
      std::uint64_t r = p % 5;
      if (r == 1 || r == 4) {
        e.insert(gl2::SimpleGroupId::PSL2_5);  // A5 occurs alongside PSL2(p)
        if (auto id = gl2::simple_group_by_order(p * (p * p - 1) / 2)) e.insert(*id);
      } else {
        if (auto id = gl2::simple_group_by_order(p * (p * p - 1) / 2)) e.insert(*id);
      }
    }
  }
  return e;
}

CheckOutcome occ_formula_check(std::uint32_t M, std::size_t samples, std::uint64_t seed,
                               std::size_t normal_budget, std::size_t closure_budget) {
  CheckOutcome out;
  out.name = "occ-formula";
  out.parameters = {{"M", std::to_string(M)},
                    {"samples", std::to_string(samples)},
                    {"seed", std::to_string(seed)}};
  auto found = gl2::occ_search(M, samples, seed, normal_budget, closure_budget);
  auto expected = occ_expected(M);

  out.passed = std::includes(expected.begin(), expected.end(), found.begin(), found.end());
  std::ostringstream d;
  d << "found {";
  for (auto id : found) d << gl2::simple_group_name(id) << " ";
  d << "} expected {";
  for (auto id : expected) d << gl2::simple_group_name(id) << " ";
  d << "} complete=" << (found == expected ? "yes" : "no");
  out.detail = d.str();
  if (!out.passed) out.counterexample = "sampled quotient outside the displayed union: " + out.detail;
  return out;
}

// ---------------------------------------------------------------------------
// suites

namespace {

void run_power_lift_suite(std::vector<SuiteEntry>& out, const SuiteConfig& cfg) {
  struct Case {
    std::uint64_t p;
    std::uint32_t alpha;
  };
  const Case passing[] = {{3, 1}, {3, 2}, {5, 1}, {7, 1}, {2, 2}, {2, 3}};
  std::mt19937_64 rng(cfg.seed);
  for (auto [p, alpha] : passing) {
    CheckOutcome agg;
    agg.name = "power-lift";
    agg.parameters = {{"p", std::to_string(p)},
                      {"alpha", std::to_string(alpha)},
                      {"trials", std::to_string(cfg.power_lift_trials)},
                      {"seed", std::to_string(cfg.seed)}};
    agg.passed = true;
    for (std::size_t i = 0; i < cfg.power_lift_trials && agg.passed; ++i) {
      std::array<std::int64_t, 4> A, B;
      for (int k = 0; k < 4; ++k) {
        A[k] = static_cast<std::int64_t>(rng() % upow(p, alpha + 2));
        B[k] = static_cast<std::int64_t>(rng() % upow(p, alpha + 2));
      }
      CheckOutcome one = power_lift_check(p, alpha, A, B);
      if (!one.passed) {
        agg.passed = false;
        agg.counterexample = one.counterexample;
      }
    }
    out.push_back({agg, true});
  }
  // Documented failure at (2,1): the square picks up a 4A^2 term mod 8.
  CheckOutcome ce = power_lift_check(2, 1, {1, 0, 0, 1}, {0, 0, 0, 0});
  out.push_back({ce, false});
}

void run_kernel_suite(std::vector<SuiteEntry>& out, const SuiteConfig& cfg) {
  struct Case {
    std::uint64_t p;
    std::uint32_t alpha;
  };
  for (auto [p, alpha] : {Case{3, 1}, Case{2, 2}}) {
    CheckOutcome agg;
    agg.name = "kernel-absorption";
    agg.parameters = {{"p", std::to_string(p)},
                      {"alpha", std::to_string(alpha)},
                      {"trials", std::to_string(cfg.kernel_trials)},
                      {"seed", std::to_string(cfg.seed)}};
    agg.passed = true;
    for (std::size_t i = 0; i < cfg.kernel_trials && agg.passed; ++i) {
      CheckOutcome one =
          kernel_absorption_check(p, alpha, LiftSpec::Random, cfg.seed + i, cfg.closure_budget);
      if (!one.passed) {
        agg.passed = false;
        agg.counterexample = one.counterexample;
      }
    }
    out.push_back({agg, true});
    out.push_back({kernel_absorption_check(p, alpha, LiftSpec::Zero, 0, cfg.closure_budget), true});
  }
}

void run_vp_suite(std::vector<SuiteEntry>& out, const SuiteConfig&) {
  for (std::uint32_t p : primes_upto(50)) {
    CheckOutcome agg;
    agg.name = "vp-stability";
    agg.parameters = {{"p", std::to_string(p)}, {"M", "2..500"}};
    agg.passed = true;
    for (std::uint64_t m = 2; m <= 500 && agg.passed; ++m) {
      if (m % p == 0) continue;
      CheckOutcome one = vp_stability_check(p, m);
      if (!one.passed) {
        agg.passed = false;
        agg.counterexample = "M=" + std::to_string(m) + ": " + one.counterexample;
      }
    }
    out.push_back({agg, true});
  }
}

void run_commutator_suite(std::vector<SuiteEntry>& out, const SuiteConfig& cfg) {
  for (std::uint32_t m : {3u, 5u, 7u, 9u, 15u})
    out.push_back({commutator_sl2_check(m, cfg.closure_budget), true});
  // Negative control: M = 2 sits outside the lemma's odd-M hypothesis.
  out.push_back({commutator_sl2_check(2, cfg.closure_budget), false});
}

void run_quotients_suite(std::vector<SuiteEntry>& out, const SuiteConfig& cfg) {
  for (std::uint32_t m : {2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 12u})
    out.push_back({simple_quotient_check(m, cfg.normal_budget), true});
}

void run_occ_suite(std::vector<SuiteEntry>& out, const SuiteConfig& cfg) {
  for (std::uint32_t m : {2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 11u, 12u, 14u, 15u})
    out.push_back(
        {occ_formula_check(m, cfg.occ_samples, cfg.seed, cfg.normal_budget, cfg.closure_budget),
         true});
}

}  // namespace

std::vector<SuiteEntry> run_suite(const std::string& selector, const SuiteConfig& config) {
  std::vector<SuiteEntry> out;
  const bool all = selector == "all";
  bool matched = false;
  auto want = [&](const char* name) {
    bool w = all || selector == name;
    matched |= w;
    return w;
  };
  if (want("power-lift")) run_power_lift_suite(out, config);
  if (want("kernel")) run_kernel_suite(out, config);
  if (want("vp")) run_vp_suite(out, config);
  if (want("commutator")) run_commutator_suite(out, config);
  if (want("quotients")) run_quotients_suite(out, config);
  if (want("occ")) run_occ_suite(out, config);
  if (!matched) throw_bad_input("unknown suite selector: " + selector);
  return out;
}

bool suite_ok(const std::vector<SuiteEntry>& entries) {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SuiteEntry& e) { return e.outcome.passed == e.expect_pass; });
}

std::string suite_to_json(const std::vector<SuiteEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j;
    j["name"] = e.outcome.name;
    j["parameters"] = e.outcome.parameters;
    j["passed"] = e.outcome.passed;
    j["expected_pass"] = e.expect_pass;
    j["as_expected"] = e.outcome.passed == e.expect_pass;
    if (!e.outcome.counterexample.empty()) j["counterexample"] = e.outcome.counterexample;
    if (!e.outcome.detail.empty()) j["detail"] = e.outcome.detail;
    arr.push_back(j);
  }
  nlohmann::json root;
  root["schema"] = "1";
  root["checks"] = arr;
  root["ok"] = suite_ok(entries);
  return root.dump(2);
}

}  // namespace tc::lemma
