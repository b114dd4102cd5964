// Theorem-verification searches over entry patterns: exhaustive
// restricted-growth sweeps, eq3-pruned DFS with symmetry reduction, the
// bordered-form reduction for strata where some class has at most two cells,
// and exact-cover assembly from catalogs of normal 0-1 matrices.
//
// Determinism: reports are byte-identical across runs and worker counts. The
// node budget is accounted at shard granularity in a fixed shard order; a
// shard that would overrun its remaining allotment is cut at the cap and its
// partial results are discarded, so parallel speculation cannot change the
// outcome.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "epat/canon.hpp"
#include "epat/pattern.hpp"

namespace epat {

inline constexpr int kMaxExhaustiveOrder = 3;  // Bell(9) = 21147 strings
inline constexpr int kMaxSearchOrder = 5;
inline constexpr std::uint64_t kDefaultNodeBudget = 200'000'000;
inline constexpr int kMaxWitnessesPerReport = 100;

enum class Strategy { exhaustive_rgs, pruned_dfs, lemma6_reduction, catalog_cover };

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct SearchConfig {
  int order = 3;
  int min_classes = 2;
  int max_classes = 0;  // 0 means n^2 (unbounded)
  bool require_nonsymmetric = true;
  std::uint64_t node_budget = kDefaultNodeBudget;
  Strategy strategy = Strategy::exhaustive_rgs;
  int worker_count = 1;
  std::uint64_t seed = 0;  // reserved; no strategy uses randomized tie-breaks
  // Optional catalog-cover restriction to specific occupancy profiles
  // (multisets of per-class ones counts summing to n^2).
  std::vector<std::vector<int>> profiles;
  // pruned-dfs only; disabling changes nothing but speed.
  bool prefix_symmetry_reduction = true;
};

struct SearchReport {
  SearchConfig config;
  bool completed = false;
  std::uint64_t nodes_visited = 0;
  std::uint64_t leaves_visited = 0;
  int max_classes_found = 0;  // 0 when no witness exists
  // Similarity classes at max_classes_found, lexicographically smallest keys
  // first, at most kMaxWitnessesPerReport entries. member_count is the number
  // of enumeration hits, which depends on the strategy's symmetry reduction.
  std::vector<SimilarityClass> witnesses;
  std::map<int, std::uint64_t> counts_by_k;  // k -> number of similarity classes
  std::map<std::string, std::uint64_t> nodes_pruned_by_rule;
  std::vector<std::string> notes;
};

struct SearchResult {
  SearchReport report;
  // Every similarity class found, all k, sorted by (k, key). Unlike
  // report.witnesses this list is not capped.
  std::vector<SimilarityClass> classes;
};

SearchResult exhaustive_search(const SearchConfig& config);
SearchResult pruned_search(const SearchConfig& config);
SearchResult lemma6_reduction_search(const SearchConfig& config);
SearchResult catalog_cover_search(const SearchConfig& config);
SearchResult run_search(const SearchConfig& config);  // dispatches on config.strategy

enum class Verdict { verified, verified_degenerate, falsified, inconclusive };

std::string verdict_name(Verdict v);

struct TheoremStratum {
  std::string name;
  SearchReport report;
};

struct TheoremReport {
  int order = 0;
  int bound = 0;  // n(n-3)/2+3 for n >= 3; 0 for the degenerate n = 2 case
  Verdict verdict = Verdict::inconclusive;
  std::vector<ClassId> expected_key;  // canonical key cells of extremal(n), n >= 3
  std::vector<TheoremStratum> strata;
  std::vector<std::string> notes;
  std::uint64_t nodes_total = 0;
};

/// Composite verification: (a) no nonsymmetric normal pattern of order n
/// exceeds the bound, (b) exactly one similarity class attains it, (c) that
/// class is extremal(n). Budgeted sub-searches that do not complete yield an
/// inconclusive verdict, never a false "verified".
TheoremReport verify_theorem(int n, std::uint64_t node_budget = kDefaultNodeBudget,
                             int worker_count = 1);

}  // namespace epat
