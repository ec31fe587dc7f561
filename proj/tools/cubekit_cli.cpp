// cubekit command-line entry point.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error,
// 3 refused by a resource guard.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cubekit/gowers.hpp"
#include "cubekit/influence.hpp"
#include "cubekit/io.hpp"
#include "cubekit/kernels.hpp"
#include "cubekit/pcp.hpp"
#include "cubekit/testing.hpp"
#include "cubekit/verify.hpp"

using namespace cubekit;
using io::Json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

struct Globals {
  bool override_guard = false;
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 1;
  int threads = 0;

  Guard guard() const { return override_guard ? Guard::override : Guard::enforce; }
};

void emit(const Globals& g, const Json& report) {
  const std::string text = g.format == "csv" ? io::to_csv(report) : io::dump(report) + "\n";
  if (g.output.empty()) {
    std::cout << text;
  } else {
    io::write_text(g.output, text);
  }
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("malformed list entry \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

BoolFn load_fn(const std::string& path) { return io::bool_fn_from_json(io::load_json(path)); }

Json verify_json(const VerifyReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) {
    records.push_back(Json{{"lemma", rec.lemma},
                           {"instance", rec.instance},
                           {"descriptor", rec.descriptor},
                           {"lhs", rec.lhs},
                           {"rhs", rec.rhs},
                           {"margin", rec.margin},
                           {"pass", rec.pass}});
  }
  return Json{{"suite", r.suite}, {"passed", r.passed}, {"failed", r.failed}, {"records", std::move(records)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubekit: Fourier analysis, Gowers uniformity and linearity tests on the boolean cube"};
  app.require_subcommand(1);
  // Global options may appear after a subcommand.
  app.fallthrough();
  Globals g;
  app.add_flag("--override-guard", g.override_guard, "Run exact routines past the default 2^26 cost budget");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("-o,--output", g.output, "Write the report to a file instead of stdout");
  app.add_option("--seed", g.seed, "Master seed (default from CUBEKIT_SEED, else 1)")
      ->envname("CUBEKIT_SEED")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads for parallel kernels (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);

  std::function<Json()> action;

  // ---- fn
  auto* fn = app.add_subcommand("fn", "Generate or transform functions");
  fn->require_subcommand(1);
  auto* gen = fn->add_subcommand("gen", "Generate a function table");
  std::string kind;
  int n = 0, coord = 1, block = 2;
  std::string set;
  std::string mode = "sign";
  bool compact = false;
  gen->add_option("kind", kind,
                  "chi | long-code | quadratic (x1x2 + x3x4 + ..., disjoint pairs) | block-and | random")
      ->required()
      ->check(CLI::IsMember({"chi", "long-code", "quadratic", "block-and", "random"}));
  gen->add_option("-n,--arity", n, "Number of inputs")->required()->check(CLI::Range(1, kMaxArity));
  gen->add_option("--set", set, "chi: comma-separated 1-based coordinates of S");
  gen->add_option("--coord", coord, "long-code: 1-based coordinate")->capture_default_str();
  gen->add_option("--block", block, "block-and: block size")->capture_default_str();
  gen->add_option("--mode", mode, "random: value distribution")
      ->check(CLI::IsMember({"sign", "bounded"}))
      ->capture_default_str();
  gen->add_flag("--compact", compact, "Emit sign functions as a hex bit string");
  gen->callback([&] {
    action = [&] {
      BoolFn f = BoolFn::constant(n, 1.0);
      if (kind == "chi") {
        Mask s = 0;
        for (int i : parse_list(set)) {
          if (i < 1 || i > n) throw std::invalid_argument("--set coordinate out of range");
          s |= Mask{1} << (i - 1);
        }
        f = make_chi(n, s);
      } else if (kind == "long-code") {
        f = make_long_code(n, coord - 1);
      } else if (kind == "quadratic") {
        f = make_quadratic_phase(n);
      } else if (kind == "block-and") {
        f = make_block_and(n, block);
      } else {
        f = random_fn(n, mode == "sign" ? RandomMode::sign : RandomMode::bounded, g.seed);
      }
      return io::to_json(f, compact);
    };
  });
  auto* four = fn->add_subcommand("fourier", "Fourier coefficients of a function file");
  std::string fn_file;
  four->add_option("file", fn_file, "Function file")->required()->check(CLI::ExistingFile);
  four->callback([&] { action = [&] { return io::to_json(fourier(load_fn(fn_file))); }; });

  // ---- influence
  auto* infl = app.add_subcommand("influence", "Per-coordinate (cross-)influence report");
  int degree = -1, t = 2;
  std::vector<std::string> collection;
  infl->add_option("file", fn_file, "Function file")->required()->check(CLI::ExistingFile);
  infl->add_option("--degree", degree, "Restrict to Fourier mass on sets of size <= d");
  infl->add_option("--collection", collection, "Further function files: report the t-cross-influence")
      ->check(CLI::ExistingFile);
  infl->add_option("--t", t, "Threshold count for cross-influence")->capture_default_str();
  infl->callback([&] {
    action = [&] {
      const BoolFn f = load_fn(fn_file);
      if (collection.empty()) return io::to_json(degree >= 0 ? degree_influences(f, degree) : influences(f));
      std::vector<BoolFn> fs{f};
      for (const auto& p : collection) fs.push_back(load_fn(p));
      if (degree < 0) return io::to_json(cross_influences(fs, t));
      if (t != 2) throw std::invalid_argument("degree-bounded cross-influence uses t = 2");
      std::vector<double> v;
      for (int i = 0; i < f.arity(); ++i) v.push_back(degree_cross_influence(fs, i, degree));
      return io::to_json(make_report(std::move(v)));
    };
  });

  // ---- gowers
  auto* gow = app.add_subcommand("gowers", "Gowers uniformity U^d of a function");
  int dim = 2;
  std::uint64_t mc = 0;
  gow->add_option("file", fn_file, "Function file")->required()->check(CLI::ExistingFile);
  gow->add_option("--dim", dim, "Dimension d")->required()->check(CLI::Range(1, 6));
  gow->add_option("--mc", mc, "Monte Carlo samples instead of the exact value");
  gow->callback([&] {
    action = [&] {
      const BoolFn f = load_fn(fn_file);
      return io::to_json(mc > 0 ? gowers_u_mc(f, dim, mc, g.seed) : gowers_u(f, dim, g.guard()));
    };
  });

  // ---- ip
  auto* ip = app.add_subcommand("ip", "Gowers inner product of a collection");
  std::string coll_file, route = "spectral";
  bool linear = false;
  ip->add_option("file", coll_file, "Collection file")->required()->check(CLI::ExistingFile);
  ip->add_flag("--linear", linear, "Linear inner product (cube anchored at 0)");
  ip->add_option("--route", route, "Exact route")
      ->check(CLI::IsMember({"spectral", "enumeration"}))
      ->capture_default_str();
  ip->add_option("--mc", mc, "Monte Carlo samples instead of the exact value");
  ip->callback([&] {
    action = [&] {
      const FnCollection c = io::collection_from_json(io::load_json(coll_file));
      if (linear) return io::to_json(linear_gowers_ip(c, g.guard()));
      if (mc > 0) return io::to_json(gowers_ip_mc(c, mc, g.seed));
      return io::to_json(gowers_ip(
          c, route == "spectral" ? InnerProductRoute::four_spectra : InnerProductRoute::enumeration, g.guard()));
    };
  });

  // ---- test
  auto* test = app.add_subcommand("test", "Acceptance probability of a linearity or long-code test");
  std::string test_kind;
  std::vector<std::string> files;
  bool exact = false;
  double gamma = 0.0, delta = 0.0;
  test->add_option("kind", test_kind, "blr | blr3 | h | noisy-h")
      ->required()
      ->check(CLI::IsMember({"blr", "blr3", "h", "noisy-h"}));
  test->add_option("files", files,
                   "blr: f; blr3: f g h; h: hypergraph f; noisy-h: hypergraph then one function or t+|E| functions")
      ->required()
      ->check(CLI::ExistingFile);
  test->add_flag("--exact", exact, "Exact acceptance (default unless --mc is given)");
  test->add_option("--mc", mc, "Monte Carlo rounds");
  test->add_option("--gamma", gamma, "noisy-h: noise rate")->check(CLI::Range(0.0, 0.5));
  test->add_option("--delta", delta, "blr3: noise rate")->check(CLI::Range(0.0, 0.5));
  test->callback([&] {
    action = [&] {
      auto need = [&](std::size_t k, const char* what) {
        if (files.size() != k) throw std::invalid_argument(std::string("test ") + test_kind + " expects " + what);
      };
      std::function<AcceptanceReport()> run_exact, run_mc;
      if (test_kind == "blr") {
        need(1, "one function file");
        const BoolFn f = load_fn(files[0]);
        run_exact = [f] { return exact_blr(f); };
        run_mc = [f, &mc, &g] { return run_blr_mc(f, mc, g.seed); };
      } else if (test_kind == "blr3") {
        need(3, "three function files");
        const BoolFn a = load_fn(files[0]), b = load_fn(files[1]), c = load_fn(files[2]);
        run_exact = [=] { return exact_3fn_blr(a, b, c, delta); };
        run_mc = [=, &mc, &g] { return run_3fn_blr_mc(a, b, c, delta, mc, g.seed); };
      } else if (test_kind == "h") {
        need(2, "a hypergraph file and a function file");
        const Hypergraph h = io::hypergraph_from_json(io::load_json(files[0]));
        const BoolFn f = load_fn(files[1]);
        run_exact = [h, f, &g] { return exact_h_test(h, f, g.guard()); };
        run_mc = [h, f, &mc, &g] { return run_h_test_mc(h, f, mc, g.seed); };
      } else {
        if (files.size() < 2) throw std::invalid_argument("test noisy-h expects a hypergraph and functions");
        const Hypergraph h = io::hypergraph_from_json(io::load_json(files[0]));
        std::vector<BoolFn> slots;
        for (std::size_t k = 1; k < files.size(); ++k) slots.push_back(load_fn(files[k]));
        const LongCodeInputs in =
            slots.size() == 1 ? LongCodeInputs::uniform(h, slots[0]) : LongCodeInputs(h, std::move(slots));
        run_exact = [=, &g] { return exact_noisy_h_test(h, gamma, in, g.guard()); };
        run_mc = [=, &mc, &g] { return run_noisy_h_test_mc(h, gamma, in, mc, g.seed); };
      }
      if (mc == 0) return io::to_json(run_exact());
      if (!exact) return io::to_json(run_mc());
      return Json{{"exact", io::to_json(run_exact())}, {"monte_carlo", io::to_json(run_mc())}};
    };
  });

  // ---- verify
  auto* ver = app.add_subcommand("verify", "Check the inequality and identity suites");
  std::string suite = "all";
  int vn = 6, trials = 50;
  std::vector<std::string> suite_choices = verify_suite_names();
  suite_choices.push_back("all");
  ver->add_option("--suite", suite, "Suite id or all")->check(CLI::IsMember(suite_choices))->capture_default_str();
  ver->add_option("--n", vn, "Arity (capped per check)")->check(CLI::Range(1, 8))->capture_default_str();
  ver->add_option("--trials", trials, "Random instances per check")->check(CLI::PositiveNumber)->capture_default_str();
  bool verify_failed = false;
  ver->callback([&] {
    action = [&] {
      const std::vector<std::string> names = suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
      Json all = Json::object();
      Json merged = Json::array();
      int passed = 0, failed = 0;
      for (const auto& name : names) {
        const VerifyReport r = verify_suite(name, VerifyOptions{vn, trials, g.seed});
        verify_failed |= !r.all_pass();
        passed += r.passed;
        failed += r.failed;
        Json j = verify_json(r);
        for (auto rec : j["records"]) {
          Json row{{"suite", name}};
          for (const auto& [k, v] : rec.items()) row[k] = v;
          merged.push_back(std::move(row));
        }
      }
      return Json{{"suite", suite}, {"seed", g.seed}, {"passed", passed}, {"failed", failed},
                  {"records", std::move(merged)}};
    };
  });

  // ---- ugame
  auto* ug = app.add_subcommand("ugame", "Unique games");
  ug->require_subcommand(1);
  auto* solve = ug->add_subcommand("solve", "Exact strong and weak value by exhaustive search");
  std::string game_file;
  solve->add_option("file", game_file, "Unique game file")->required()->check(CLI::ExistingFile);
  solve->callback([&] {
    action = [&] { return io::to_json(solve_unique_game(io::unique_game_from_json(io::load_json(game_file)), g.guard())); };
  });

  // ---- pcp
  auto* pcp = app.add_subcommand("pcp", "Composed verifier");
  pcp->require_subcommand(1);
  auto* demo = pcp->add_subcommand("demo", "Run the composed verifier on a game and a test hypergraph");
  std::string hyper_file, proof = "honest";
  std::uint64_t rounds = 100000;
  int dec_degree = 1;
  double tau = 0.5;
  demo->add_option("--game", game_file, "Unique game file")->required()->check(CLI::ExistingFile);
  demo->add_option("--hypergraph", hyper_file, "Hypergraph file (t + |E| must equal the game arity)")
      ->required()
      ->check(CLI::ExistingFile);
  demo->add_option("--gamma", gamma, "Noise rate")->check(CLI::Range(0.0, 0.5))->capture_default_str();
  demo->add_option("--rounds", rounds, "Verifier rounds")->check(CLI::PositiveNumber)->capture_default_str();
  demo->add_option("--proof", proof, "honest | random | proof file")->capture_default_str();
  demo->add_option("--decode-degree", dec_degree, "Decoder degree bound")->capture_default_str();
  demo->add_option("--tau", tau, "Decoder influence threshold")->capture_default_str();
  demo->callback([&] {
    action = [&] {
      const UniqueGame game = io::unique_game_from_json(io::load_json(game_file));
      const Hypergraph h = io::hypergraph_from_json(io::load_json(hyper_file));
      const GameValueReport value = solve_unique_game(game, g.guard());
      PcpProof p;
      if (proof == "honest") p = honest_proof(game, value.best_assignment);
      else if (proof == "random") p = random_proof(game, g.seed);
      else p = io::proof_from_json(io::load_json(proof));
      Json j = io::to_json(run_composed(game, p, h, gamma, rounds, g.seed));
      j["game"] = io::to_json(value);
      const DecodeResult d = decode(p, dec_degree, tau, g.seed);
      j["decoded_assignment"] = d.assignment;
      j["decoded_strong_value"] = strong_value(game, d.assignment);
      j["candidate_counts"] = d.candidate_counts;
      return j;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (g.threads > 0) kernels::set_threads(g.threads);
    emit(g, action());
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return verify_failed ? kExitCheckFailed : 0;
}
