// Command-line front end: normality checks, canonical forms, constructions,
// classification, searches and the theorem verification driver.
//
// Exit codes: check: 0 normal, 1 not normal, 2 error.
//             verify: 0 verified, 1 falsified, 3 inconclusive, 2 error.
//             everything else: 0 success, 2 error.
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "epat/canon.hpp"
#include "epat/classify.hpp"
#include "epat/constructions.hpp"
#include "epat/normality.hpp"
#include "epat/pattern.hpp"
#include "epat/report.hpp"
#include "epat/search.hpp"

namespace {

epat::Pattern load_pattern(const std::string& path) {
  if (path == "-") return epat::read_pattern(std::cin);
  std::ifstream in(path);
  if (!in) throw epat::DomainError("cannot open '" + path + "'");
  return epat::read_pattern(in);
}

struct CheckOptions {
  std::string file;
  std::vector<std::string> oracles;
  std::uint64_t seed = 0;
  int trials = 100;
  bool json = false;
};

int run_check(const CheckOptions& opt) {
  const epat::Pattern p = load_pattern(opt.file);
  std::vector<std::string> oracles = opt.oracles;
  if (oracles.empty()) oracles.push_back("lemma2");
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  bool normal = true;
  for (const auto& name : oracles) {
    bool r;
    if (name == "lemma2")
      r = epat::is_normal_lemma2(p);
    else if (name == "symbolic")
      r = epat::is_normal_symbolic(p);
    else if (name == "subsets")
      r = epat::is_normal_binary_assignments(p);
    else if (name == "random")
      r = epat::is_normal_random_specialization(p, opt.trials, opt.seed);
    else
      throw epat::DomainError("unknown oracle '" + name + "'");
    results[name] = r;
    normal = normal && r;
  }
  if (opt.json) {
    nlohmann::ordered_json j;
    j["order"] = p.order();
    j["classes"] = p.class_count();
    j["symmetric"] = epat::is_symmetric(p);
    j["oracles"] = results;
    j["normal"] = normal;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "order: " << p.order() << '\n'
              << "classes: " << p.class_count() << '\n'
              << "symmetric: " << (epat::is_symmetric(p) ? "true" : "false") << '\n';
    for (const auto& [name, r] : results.items())
      std::cout << "normal[" << name << "]: " << (r.get<bool>() ? "true" : "false") << '\n';
    std::cout << "normal: " << (normal ? "true" : "false") << '\n';
  }
  return normal ? 0 : 1;
}

struct CanonOptions {
  std::string file;
  bool json = false;
};

int run_canon(const CanonOptions& opt) {
  const epat::Pattern p = load_pattern(opt.file);
  const epat::CanonicalKey key = epat::canonical_key(p);
  const epat::Pattern rep = epat::Pattern::from_cells(p.order(), key.cells);
  if (opt.json) {
    nlohmann::ordered_json j;
    j["order"] = p.order();
    j["key"] = key.cells;
    j["witness"] = key.witness;
    j["pattern"] = epat::to_text(rep);
    std::cout << j.dump(2) << '\n';
  } else {
    epat::write_pattern(std::cout, rep);
    std::cout << "witness:";
    for (int v : key.witness) std::cout << ' ' << v;
    std::cout << '\n';
  }
  return 0;
}

int run_extremal(int n, int k) {
  const epat::Pattern p = k < 0 ? epat::extremal(n) : epat::with_k_classes(n, k);
  epat::write_pattern(std::cout, p);
  return 0;
}

int run_classify(int n, int ones, bool json) {
  const epat::ClassificationReport rep = epat::classify_normal_binary(n, ones);
  if (json)
    std::cout << epat::to_json(rep).dump(2) << '\n';
  else
    std::cout << epat::to_text(rep);
  return 0;
}

struct SearchOptions {
  epat::SearchConfig cfg;
  std::string strategy = "pruned-dfs";
  bool allow_symmetric = false;
  bool json = false;
};

int run_search_cmd(SearchOptions opt) {
  opt.cfg.strategy = epat::strategy_from_name(opt.strategy);
  opt.cfg.require_nonsymmetric = !opt.allow_symmetric;
  const epat::SearchResult res = epat::run_search(opt.cfg);
  if (opt.json)
    std::cout << epat::to_json(res.report).dump(2) << '\n';
  else
    std::cout << epat::to_text(res.report);
  return 0;
}

int run_verify(int n, std::uint64_t budget, int workers, bool json) {
  const epat::TheoremReport rep = epat::verify_theorem(n, budget, workers);
  if (json)
    std::cout << epat::to_json(rep).dump(2) << '\n';
  else
    std::cout << epat::to_text(rep);
  switch (rep.verdict) {
    case epat::Verdict::verified:
    case epat::Verdict::verified_degenerate:
      return 0;
    case epat::Verdict::falsified:
      return 1;
    case epat::Verdict::inconclusive:
      return 3;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entry pattern normality toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto* check = app.add_subcommand("check", "decide normality of a pattern file");
  auto check_opt = std::make_shared<CheckOptions>();
  check->add_option("file", check_opt->file, "pattern file ('-' for stdin)")->required();
  check->add_option("--oracle", check_opt->oracles,
                    "oracle(s): lemma2, symbolic, subsets, random (repeatable)");
  check->add_option("--seed", check_opt->seed, "seed for the random oracle");
  check->add_option("--trials", check_opt->trials, "trials for the random oracle")
      ->check(CLI::PositiveNumber);
  check->add_flag("--json", check_opt->json, "JSON output");
  check->callback([&action, check_opt] { action = [check_opt] { return run_check(*check_opt); }; });

  auto* canon = app.add_subcommand("canon", "canonical form and witness permutation");
  auto canon_opt = std::make_shared<CanonOptions>();
  canon->add_option("file", canon_opt->file, "pattern file ('-' for stdin)")->required();
  canon->add_flag("--json", canon_opt->json, "JSON output");
  canon->callback([&action, canon_opt] { action = [canon_opt] { return run_canon(*canon_opt); }; });

  auto* extremal = app.add_subcommand("extremal", "emit the extremal pattern (or one with --k classes)");
  auto ext_n = std::make_shared<int>(0);
  auto ext_k = std::make_shared<int>(-1);
  extremal->add_option("--n", *ext_n, "order")->required();
  extremal->add_option("--k", *ext_k, "class count in [2, n(n-3)/2+3]");
  extremal->callback([&action, ext_n, ext_k] {
    action = [ext_n, ext_k] { return run_extremal(*ext_n, *ext_k); };
  });

  auto* classify = app.add_subcommand("classify", "classify normal 0-1 matrices by ones count");
  auto cls_n = std::make_shared<int>(0);
  auto cls_m = std::make_shared<int>(0);
  auto cls_json = std::make_shared<bool>(false);
  classify->add_option("--n", *cls_n, "order")->required();
  classify->add_option("--ones", *cls_m, "ones count")->required();
  classify->add_flag("--json", *cls_json, "JSON output");
  classify->callback([&action, cls_n, cls_m, cls_json] {
    action = [cls_n, cls_m, cls_json] { return run_classify(*cls_n, *cls_m, *cls_json); };
  });

  auto* search = app.add_subcommand("search", "search for nonsymmetric normal patterns");
  auto search_opt = std::make_shared<SearchOptions>();
  search->add_option("--n", search_opt->cfg.order, "order")->required();
  search->add_option("--min-k", search_opt->cfg.min_classes, "minimum class count");
  search->add_option("--max-k", search_opt->cfg.max_classes, "maximum class count (0 = n^2)");
  search->add_option("--strategy", search_opt->strategy,
                     "exhaustive-rgs, pruned-dfs, lemma6-reduction or catalog-cover");
  search->add_option("--budget", search_opt->cfg.node_budget, "node budget");
  search->add_option("--workers", search_opt->cfg.worker_count, "worker threads")
      ->check(CLI::PositiveNumber);
  search->add_option("--seed", search_opt->cfg.seed, "seed (reserved)");
  search->add_flag("--allow-symmetric", search_opt->allow_symmetric,
                   "include symmetric patterns");
  search->add_flag("--json", search_opt->json, "JSON output");
  search->callback([&action, search_opt] {
    action = [search_opt] { return run_search_cmd(*search_opt); };
  });

  auto* verify = app.add_subcommand("verify", "verify the class-count bound and uniqueness");
  auto ver_n = std::make_shared<int>(0);
  auto ver_budget = std::make_shared<std::uint64_t>(epat::kDefaultNodeBudget);
  auto ver_workers = std::make_shared<int>(1);
  auto ver_json = std::make_shared<bool>(false);
  verify->add_option("--n", *ver_n, "order (2..5)")->required();
  verify->add_option("--budget", *ver_budget, "node budget");
  verify->add_option("--workers", *ver_workers, "worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--json", *ver_json, "JSON output");
  verify->callback([&action, ver_n, ver_budget, ver_workers, ver_json] {
    action = [ver_n, ver_budget, ver_workers, ver_json] {
      return run_verify(*ver_n, *ver_budget, *ver_workers, *ver_json);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const epat::ParseError& e) {
    std::cerr << "parse error at line " << e.line << ", column " << e.column << ": " << e.what()
              << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
