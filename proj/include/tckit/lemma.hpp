#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tckit/gl2.hpp"

namespace tc::lemma {

struct CheckOutcome {
  std::string name;
  std::map<std::string, std::string> parameters;
  bool passed = false;
  // Present whenever passed = false; carries enough to replay the failure.
  std::string counterexample;
  std::string detail;
};

// X = I + p^a A + p^{a+1} B in Z/p^{a+2}; verifies X^p = I + p^{a+1} A.
CheckOutcome power_lift_check(std::uint64_t p, std::uint32_t alpha,
                              const std::array<std::int64_t, 4>& A,
                              const std::array<std::int64_t, 4>& B);

enum class LiftSpec { Zero, Random };

// Builds N' <= GL2(Z/p^{a+2}) from one chosen lift of each element of
// ker pi_1, closes, and verifies ker pi_2 lands inside the closure.
CheckOutcome kernel_absorption_check(std::uint64_t p, std::uint32_t alpha, LiftSpec spec,
                                     std::uint64_t seed = 0,
                                     std::size_t budget = gl2::kDefaultClosureBudget);

// v_p|GL2(Z/M)| depends only on rad(M) when p does not divide M.
CheckOutcome vp_stability_check(std::uint64_t p, std::uint64_t M);

// Set equality [GL2(Z/M), GL2(Z/M)] = ker det; the lemma assumes M odd and
// the check reports the failure at M = 2 as written.
CheckOutcome commutator_sl2_check(std::uint32_t M,
                                  std::size_t budget = gl2::kDefaultClosureBudget);

// Simple non-abelian quotients of GL2(Z/M) lie in {PSL2(F_p) : p | M, p > 3};
// composite M handled factorwise through the CRT product decomposition.
CheckOutcome simple_quotient_check(std::uint32_t M,
                                   std::size_t normal_budget = gl2::kDefaultNormalBudget);

// occ_search soundness against the displayed union formula; completeness of
// the sampled search is reported in `detail`, not asserted.
CheckOutcome occ_formula_check(std::uint32_t M, std::size_t samples, std::uint64_t seed,
                               std::size_t normal_budget = gl2::kDefaultNormalBudget,
                               std::size_t closure_budget = gl2::kDefaultClosureBudget);

// The displayed Occ(GL2(Z/M)) union.
std::set<gl2::SimpleGroupId> occ_expected(std::uint32_t M);

struct SuiteEntry {
  CheckOutcome outcome;
  bool expect_pass = true;  // documented negative controls carry false
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t power_lift_trials = 10000;
  std::size_t kernel_trials = 100;
  std::size_t occ_samples = 200;
  std::size_t closure_budget = gl2::kDefaultClosureBudget;
  std::size_t normal_budget = gl2::kDefaultNormalBudget;
};

// Selectors: all, power-lift, kernel, vp, commutator, quotients, occ.
std::vector<SuiteEntry> run_suite(const std::string& selector, const SuiteConfig& config);

// A suite is green when every entry matches its expectation.
bool suite_ok(const std::vector<SuiteEntry>& entries);

std::string suite_to_json(const std::vector<SuiteEntry>& entries);

}  // namespace tc::lemma
