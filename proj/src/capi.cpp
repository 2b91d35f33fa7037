#include "tckit.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tckit/conductor.hpp"
#include "tckit/curve.hpp"
#include "tckit/galois.hpp"
#include "tckit/lemma.hpp"

struct tc_curve {
  tc::WeierstrassCurve e;
  std::string label;
};

struct tc_options {
  tc::ConductorOptions conductor;
  std::uint64_t seed = 0;
  std::uint64_t occ_samples = 200;
  std::size_t closure_budget = tc::gl2::kDefaultClosureBudget;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tc_status status_of(const tc::Error& e) {
  switch (e.code()) {
    case tc::errc::ok: return TC_OK;
    case tc::errc::check_failed: return TC_CHECK_FAILED;
    case tc::errc::bad_input: return TC_BAD_INPUT;
    case tc::errc::missing_assertion: return TC_MISSING_ASSERTION;
    case tc::errc::resource_limit: return TC_RESOURCE_LIMIT;
    case tc::errc::internal: return TC_INTERNAL;
  }
  return TC_INTERNAL;
}

template <typename Fn>
tc_status guarded(Fn&& fn) {
  try {
    fn();
    return TC_OK;
  } catch (const tc::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TC_INTERNAL;
  }
}

const tc_options& options_or_default(const tc_options* o) {
  static const tc_options defaults;
  return o ? *o : defaults;
}

nlohmann::json image_to_json(const tc::ImageClass& v) {
  nlohmann::json j;
  j["ell"] = v.ell;
  j["verdict"] = tc::image_verdict_name(v.verdict);
  j["heuristic"] = v.heuristic;
  j["certificate"] = v.certificate;
  if (!v.witness_primes.empty()) j["witness_primes"] = v.witness_primes;
  if (v.group_order) j["group_order"] = v.group_order;
  return j;
}

}  // namespace

extern "C" {

const char* tc_version(void) { return "1.0.0"; }

const char* tc_status_name(tc_status s) {
  switch (s) {
    case TC_OK: return "ok";
    case TC_CHECK_FAILED: return "check-failed";
    case TC_BAD_INPUT: return "bad-input";
    case TC_MISSING_ASSERTION: return "missing-assertion";
    case TC_RESOURCE_LIMIT: return "resource-limit";
    case TC_INTERNAL: return "internal";
  }
  return "?";
}

const char* tc_last_error(void) { return g_last_error.c_str(); }

void tc_string_free(char* s) { std::free(s); }

tc_status tc_curve_create(int64_t a1, int64_t a2, int64_t a3, int64_t a4, int64_t a6,
                          tc_curve** out) {
  if (!out) return TC_BAD_INPUT;
  return guarded([&] {
    auto* c = new tc_curve;
    try {
      c->e = tc::make_curve(a1, a2, a3, a4, a6);
    } catch (...) {
      delete c;
      throw;
    }
    *out = c;
  });
}

tc_status tc_curve_parse(const char* record, tc_curve** out) {
  if (!record || !out) return TC_BAD_INPUT;
  return guarded([&] {
    std::string line(record);
    auto colon = line.find(':');
    if (colon == std::string::npos)
      tc::throw_bad_input("curve record must be 'label:a1,a2,a3,a4,a6'");
    std::string label = line.substr(0, colon);
    if (label.empty()) tc::throw_bad_input("curve record has an empty label");
    std::array<std::int64_t, 5> a{};
    std::size_t pos = colon + 1;
    for (int i = 0; i < 5; ++i) {
      std::size_t next = (i == 4) ? line.size() : line.find(',', pos);
      if (next == std::string::npos) tc::throw_bad_input("curve record needs 5 coefficients");
      std::string tok = line.substr(pos, next - pos);
      try {
        std::size_t used = 0;
        a[i] = std::stoll(tok, &used);
        while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        tc::throw_bad_input("bad coefficient '" + tok + "' in curve record");
      }
      pos = next + 1;
    }
    auto* c = new tc_curve;
    try {
      c->e = tc::make_curve(a[0], a[1], a[2], a[3], a[4]);
    } catch (...) {
      delete c;
      throw;
    }
    c->label = label;
    *out = c;
  });
}

void tc_curve_free(tc_curve* c) { delete c; }

const char* tc_curve_label(const tc_curve* c) { return c ? c->label.c_str() : ""; }

tc_options* tc_options_create(void) { return new tc_options; }
void tc_options_free(tc_options* o) { delete o; }
void tc_options_set_non_cm(tc_options* o, int non_cm) { o->conductor.non_cm = non_cm != 0; }
void tc_options_set_prime_limit(tc_options* o, uint64_t limit) {
  o->conductor.prime_limit = limit;
}
void tc_options_set_point_ceiling(tc_options* o, uint64_t ceiling) {
  o->conductor.point_ceiling = ceiling;
}
void tc_options_set_seed(tc_options* o, uint64_t seed) { o->seed = seed; }
void tc_options_set_closure_budget(tc_options* o, uint64_t budget) {
  o->closure_budget = static_cast<std::size_t>(budget);
}
void tc_options_set_occ_samples(tc_options* o, uint64_t samples) {
  o->occ_samples = samples;
}
void tc_options_set_cq(tc_options* o, uint32_t cq) { o->conductor.cq = cq; }
void tc_options_set_conductor(tc_options* o, uint64_t conductor) {
  o->conductor.conductor = conductor;
}
tc_status tc_options_set_alpha_override(tc_options* o, uint64_t p, uint32_t alpha) {
  return guarded([&] {
    if (!tc::is_prime(p)) tc::throw_bad_input("alpha override: p must be prime");
    o->conductor.alpha_overrides[p] = alpha;
  });
}

tc_status tc_curve_info_json(const tc_curve* c, char** json_out) {
  if (!c || !json_out) return TC_BAD_INPUT;
  return guarded([&] {
    const tc::WeierstrassCurve& e = c->e;
    nlohmann::json j;
    j["schema"] = "1";
    j["label"] = c->label;
    j["a"] = {e.a1, e.a2, e.a3, e.a4, e.a6};
    j["b2"] = e.b2;
    j["b4"] = e.b4;
    j["b6"] = e.b6;
    j["b8"] = e.b8;
    j["c4"] = e.c4;
    j["c6"] = e.c6;
    j["disc"] = e.disc;
    std::uint64_t absd = static_cast<std::uint64_t>(e.disc < 0 ? -e.disc : e.disc);
    j["rad_disc"] = tc::radical(absd);
    j["sqfree_disc"] = tc::sqfree_part(absd);
    nlohmann::json red;
    for (auto [p, k] : tc::factorize(absd).pairs)
      red[std::to_string(p)] = tc::reduction_type_name(tc::reduction_type(e, p));
    j["reduction"] = red;
    j["semistable"] = tc::is_semistable(e);
    *json_out = dup_string(j.dump(2));
  });
}

tc_status tc_frobenius_json(const tc_curve* c, uint64_t limit, char** json_out) {
  if (!c || !json_out) return TC_BAD_INPUT;
  return guarded([&] {
    nlohmann::json j;
    j["schema"] = "1";
    j["label"] = c->label;
    j["limit"] = limit;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : tc::frobenius_samples(c->e, limit))
      arr.push_back({{"p", s.p}, {"ap", s.ap}});
    j["samples"] = arr;
    *json_out = dup_string(j.dump(2));
  });
}

tc_status tc_image_json(const tc_curve* c, uint32_t ell, const tc_options* o, char** json_out) {
  if (!c || !json_out) return TC_BAD_INPUT;
  return guarded([&] {
    const tc_options& opt = options_or_default(o);
    tc::ImageClass v = tc::classify_mod_ell(c->e, ell, opt.conductor.prime_limit,
                                            opt.conductor.point_ceiling);
    nlohmann::json j = image_to_json(v);
    j["schema"] = "1";
    j["label"] = c->label;
    *json_out = dup_string(j.dump(2));
  });
}

tc_status tc_exceptional_set_json(const tc_curve* c, const tc_options* o, char** json_out) {
  if (!c || !json_out) return TC_BAD_INPUT;
  return guarded([&] {
    const tc_options& opt = options_or_default(o);
    tc::ExceptionalSetOptions eopt;
    eopt.non_cm = opt.conductor.non_cm;
    eopt.prime_limit = opt.conductor.prime_limit;
    eopt.point_ceiling = opt.conductor.point_ceiling;
    tc::ExceptionalSet s = tc::exceptional_set(c->e, eopt);
    nlohmann::json j;
    j["schema"] = "1";
    j["label"] = c->label;
    j["S"] = s.primes;
    j["complete"] = s.complete;
    j["caveats"] = s.caveats;
    nlohmann::json images;
    for (const auto& [ell, v] : s.verdicts) images[std::to_string(ell)] = image_to_json(v);
    j["images"] = images;
    *json_out = dup_string(j.dump(2));
  });
}

tc_status tc_conductor_report_json(const tc_curve* c, const tc_options* o, char** json_out) {
  if (!c || !json_out) return TC_BAD_INPUT;
  return guarded([&] {
    const tc_options& opt = options_or_default(o);
    tc::ConductorReport r = tc::compute_nE(c->e, opt.conductor, c->label);
    *json_out = dup_string(tc::report_to_json(r));
  });
}

tc_status tc_occ_search_json(uint32_t modulus, const tc_options* o, char** json_out) {
  if (!json_out) return TC_BAD_INPUT;
  return guarded([&] {
    const tc_options& opt = options_or_default(o);
    auto found = tc::gl2::occ_search(modulus, opt.occ_samples, opt.seed,
                                     tc::gl2::kDefaultNormalBudget, opt.closure_budget);
    auto expected = tc::lemma::occ_expected(modulus);
    nlohmann::json j;
    j["schema"] = "1";
    j["modulus"] = modulus;
    j["samples"] = opt.occ_samples;
    j["seed"] = opt.seed;
    nlohmann::json f = nlohmann::json::array(), x = nlohmann::json::array();
    for (auto id : found) f.push_back(tc::gl2::simple_group_name(id));
    for (auto id : expected) x.push_back(tc::gl2::simple_group_name(id));
    j["found"] = f;
    j["occ_formula"] = x;
    j["sound"] =
        std::includes(expected.begin(), expected.end(), found.begin(), found.end());
    *json_out = dup_string(j.dump(2));
  });
}

tc_status tc_verify_suite_json(const char* selector, const tc_options* o, char** json_out,
                               int* all_expected_pass) {
  if (!selector || !json_out) return TC_BAD_INPUT;
  return guarded([&] {
    const tc_options& opt = options_or_default(o);
    tc::lemma::SuiteConfig cfg;
    cfg.seed = opt.seed;
    cfg.occ_samples = opt.occ_samples;
    cfg.closure_budget = opt.closure_budget;
    auto entries = tc::lemma::run_suite(selector, cfg);
    *json_out = dup_string(tc::lemma::suite_to_json(entries));
    if (all_expected_pass) *all_expected_pass = tc::lemma::suite_ok(entries) ? 1 : 0;
  });
}

}  // extern "C"
