// tckit command line: batch curve reports and lemma verification suites.
// Links the shared C API only.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tckit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitMissingAssertion = 3;
constexpr int kExitResource = 4;
constexpr int kExitUsage = 64;

int exit_code_for(tc_status s) {
  switch (s) {
    case TC_OK: return kExitOk;
    case TC_CHECK_FAILED: return kExitCheckFailed;
    case TC_BAD_INPUT: return kExitBadInput;
    case TC_MISSING_ASSERTION: return kExitMissingAssertion;
    case TC_RESOURCE_LIMIT: return kExitResource;
    case TC_INTERNAL: return kExitCheckFailed;
  }
  return kExitCheckFailed;
}

struct CurveHandle {
  tc_curve* c = nullptr;
  ~CurveHandle() { tc_curve_free(c); }
};

struct OptionsHandle {
  tc_options* o = nullptr;
  OptionsHandle() : o(tc_options_create()) {}
  ~OptionsHandle() { tc_options_free(o); }
};

struct JsonString {
  char* s = nullptr;
  ~JsonString() { tc_string_free(s); }
};

struct CommonArgs {
  std::string file;
  std::vector<std::string> records;
  bool non_cm = false;
  std::uint64_t prime_limit = 1000;
  std::uint64_t point_ceiling = 100000;
  std::uint64_t seed = 0;
  std::vector<std::string> alpha_overrides;
  std::int64_t cq = -1;
  std::uint64_t conductor = 0;
  unsigned jobs = 1;
};

void add_curve_inputs(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-f,--file", args.file, "corpus file, one label:a1,a2,a3,a4,a6 per line");
  cmd->add_option("curves", args.records, "inline records label:a1,a2,a3,a4,a6");
  cmd->add_option("-j,--jobs", args.jobs, "worker threads for batch processing")
      ->default_val(1);
}

// Corpus file format: `label:a1,a2,a3,a4,a6`, `#` comments, blank lines.
std::vector<std::string> load_records(const CommonArgs& args, int& err) {
  std::vector<std::string> records = args.records;
  if (!args.file.empty()) {
    std::ifstream in(args.file);
    if (!in) {
      std::cerr << "tckit: cannot open corpus file " << args.file << "\n";
      err = kExitBadInput;
      return {};
    }
    std::string line;
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '#') continue;
      auto last = line.find_last_not_of(" \t\r");
      records.push_back(line.substr(first, last - first + 1));
    }
  }
  if (records.empty()) {
    std::cerr << "tckit: no curves given (use --file or inline records)\n";
    err = kExitBadInput;
  }
  return records;
}

int fill_options(const CommonArgs& args, tc_options* o) {
  tc_options_set_non_cm(o, args.non_cm ? 1 : 0);
  tc_options_set_prime_limit(o, args.prime_limit);
  tc_options_set_point_ceiling(o, args.point_ceiling);
  tc_options_set_seed(o, args.seed);
  if (args.cq >= 0) tc_options_set_cq(o, static_cast<std::uint32_t>(args.cq));
  if (args.conductor > 0) tc_options_set_conductor(o, args.conductor);
  if (const char* env = std::getenv("TCKIT_BUDGET"))
    tc_options_set_closure_budget(o, std::strtoull(env, nullptr, 10));
  for (const std::string& ov : args.alpha_overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos) {
      std::cerr << "tckit: --alpha-override expects p=k\n";
      return kExitUsage;
    }
    std::uint64_t p = std::strtoull(ov.substr(0, eq).c_str(), nullptr, 10);
    std::uint32_t k = static_cast<std::uint32_t>(std::strtoul(ov.substr(eq + 1).c_str(), nullptr, 10));
    if (tc_options_set_alpha_override(o, p, k) != TC_OK) {
      std::cerr << "tckit: " << tc_last_error() << "\n";
      return kExitBadInput;
    }
  }
  return kExitOk;
}

// Runs `fn` per record (possibly in parallel) and prints one envelope with
// results in input order; worst per-record status becomes the exit code.
template <typename Fn>
int run_batch(const CommonArgs& args, const std::string& command, Fn fn) {
  int err = kExitOk;
  std::vector<std::string> records = load_records(args, err);
  if (err != kExitOk) return err;

  std::vector<nlohmann::json> results(records.size());
  std::vector<tc_status> statuses(records.size(), TC_OK);

  auto worker = [&](std::size_t i) {
    CurveHandle curve;
    tc_status st = tc_curve_parse(records[i].c_str(), &curve.c);
    if (st != TC_OK) {
      statuses[i] = st;
      results[i] = {{"record", records[i]}, {"error", tc_last_error()},
                    {"status", tc_status_name(st)}};
      return;
    }
    JsonString out;
    st = fn(curve.c, &out.s);
    if (st != TC_OK) {
      statuses[i] = st;
      results[i] = {{"record", records[i]}, {"error", tc_last_error()},
                    {"status", tc_status_name(st)}};
      return;
    }
    results[i] = nlohmann::json::parse(out.s);
  };

  if (args.jobs <= 1 || records.size() <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) worker(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    for (unsigned t = 0; t < args.jobs; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard<std::mutex> lock(mu);
            if (next >= records.size()) return;
            i = next++;
          }
          worker(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  nlohmann::json envelope;
  envelope["schema"] = "1";
  envelope["command"] = command;
  envelope["results"] = results;
  std::cout << envelope.dump(2) << "\n";

  int worst = kExitOk;
  for (tc_status s : statuses) worst = std::max(worst, exit_code_for(s));
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torsion-conductor bound computations for elliptic curves over Q"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tc_version()));

  CommonArgs args;
  std::string suite_selector;
  std::uint32_t ell = 5;
  std::uint64_t ap_limit = 100;
  std::uint32_t occ_modulus = 5;
  std::uint64_t occ_samples = 200;

  auto* info = app.add_subcommand("curve-info", "invariants, reduction types, semistability");
  add_curve_inputs(info, args);

  auto* ap = app.add_subcommand("ap", "Frobenius traces for good primes up to the limit");
  add_curve_inputs(ap, args);
  ap->add_option("--limit", ap_limit, "largest prime to sample")->default_val(100);
  ap->add_option("--ceiling", args.point_ceiling, "point-counting ceiling");

  auto* image = app.add_subcommand("image", "mod-ell image classification");
  add_curve_inputs(image, args);
  image->add_option("--ell", ell, "ell in {2,3,5,7}")->required();
  image->add_option("--prime-limit", args.prime_limit, "sample primes up to this bound");

  auto* exc = app.add_subcommand("exceptional-set", "the exceptional prime set S");
  add_curve_inputs(exc, args);
  exc->add_flag("--non-cm", args.non_cm, "assert the curves are non-CM");
  exc->add_option("--prime-limit", args.prime_limit);

  auto* bound = app.add_subcommand("conductor-bound", "full n_E report");
  add_curve_inputs(bound, args);
  bound->add_flag("--non-cm", args.non_cm, "assert the curves are non-CM");
  bound->add_option("--prime-limit", args.prime_limit);
  bound->add_option("--alpha-override", args.alpha_overrides,
                    "p=k exponent override for alpha_p (repeatable)");
  bound->add_option("--cq", args.cq, "C_Q hypothesis; adds the conditional m_E bound");
  bound->add_option("--conductor", args.conductor, "conductor for non-semi-stable curves");

  auto* verify = app.add_subcommand("verify", "machine verification suites for the lemmas");
  verify->add_option("suite", suite_selector,
                     "all|power-lift|kernel|vp|commutator|quotients|occ")
      ->required();
  verify->add_option("--seed", args.seed)->default_val(0);

  auto* occ = app.add_subcommand("occ", "sampled Occ search in GL2(Z/M)");
  occ->add_option("--modulus", occ_modulus, "modulus M")->required();
  occ->add_option("--budget", occ_samples, "generator-pair samples")->default_val(200);
  occ->add_option("--seed", args.seed)->default_val(0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  OptionsHandle opts;
  if (int rc = fill_options(args, opts.o); rc != kExitOk) return rc;
  tc_options_set_occ_samples(opts.o, occ_samples);

  if (info->parsed())
    return run_batch(args, "curve-info",
                     [&](const tc_curve* c, char** out) { return tc_curve_info_json(c, out); });
  if (ap->parsed())
    return run_batch(args, "ap", [&](const tc_curve* c, char** out) {
      return tc_frobenius_json(c, ap_limit, out);
    });
  if (image->parsed())
    return run_batch(args, "image", [&](const tc_curve* c, char** out) {
      return tc_image_json(c, ell, opts.o, out);
    });
  if (exc->parsed())
    return run_batch(args, "exceptional-set", [&](const tc_curve* c, char** out) {
      return tc_exceptional_set_json(c, opts.o, out);
    });
  if (bound->parsed())
    return run_batch(args, "conductor-bound", [&](const tc_curve* c, char** out) {
      return tc_conductor_report_json(c, opts.o, out);
    });

  if (verify->parsed()) {
    JsonString out;
    int ok = 0;
    tc_status st = tc_verify_suite_json(suite_selector.c_str(), opts.o, &out.s, &ok);
    if (st != TC_OK) {
      std::cerr << "tckit: " << tc_last_error() << "\n";
      return st == TC_BAD_INPUT ? kExitUsage : exit_code_for(st);
    }
    std::cout << out.s << "\n";
    return ok ? kExitOk : kExitCheckFailed;
  }

  if (occ->parsed()) {
    JsonString out;
    tc_status st = tc_occ_search_json(occ_modulus, opts.o, &out.s);
    if (st != TC_OK) {
      std::cerr << "tckit: " << tc_last_error() << "\n";
      return exit_code_for(st);
    }
    std::cout << out.s << "\n";
    return kExitOk;
  }

  return kExitUsage;
}
