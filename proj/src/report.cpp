#include "epat/report.hpp"

#include <sstream>

namespace epat {

namespace {

std::string cells_string(const std::vector<ClassId>& cells) {
  std::ostringstream out;
  for (std::size_t t = 0; t < cells.size(); ++t) {
    if (t) out << ' ';
    out << cells[t];
  }
  return out.str();
}

std::string binary_string(const std::vector<std::uint8_t>& cells) {
  std::string s;
  s.reserve(cells.size());
  for (auto v : cells) s += static_cast<char>('0' + v);
  return s;
}

// worker_count is deliberately not echoed: reports are byte-identical for
// any worker count, and the echo must not break that.
void config_text(std::ostringstream& out, const SearchConfig& cfg) {
  out << "strategy: " << strategy_name(cfg.strategy) << '\n'
      << "order: " << cfg.order << '\n'
      << "min_classes: " << cfg.min_classes << '\n'
      << "max_classes: " << cfg.max_classes << '\n'
      << "require_nonsymmetric: " << (cfg.require_nonsymmetric ? "true" : "false") << '\n'
      << "node_budget: " << cfg.node_budget << '\n'
      << "seed: " << cfg.seed << '\n';
  for (const auto& prof : cfg.profiles) {
    out << "profile:";
    for (int v : prof) out << ' ' << v;
    out << '\n';
  }
}

nlohmann::ordered_json config_json(const SearchConfig& cfg) {
  nlohmann::ordered_json j;
  j["strategy"] = strategy_name(cfg.strategy);
  j["order"] = cfg.order;
  j["min_classes"] = cfg.min_classes;
  j["max_classes"] = cfg.max_classes;
  j["require_nonsymmetric"] = cfg.require_nonsymmetric;
  j["node_budget"] = cfg.node_budget;
  j["seed"] = cfg.seed;
  if (!cfg.profiles.empty()) j["profiles"] = cfg.profiles;
  return j;
}

}  // namespace

std::string to_text(const SearchReport& rep) {
  std::ostringstream out;
  out << "report: search\n";
  config_text(out, rep.config);
  out << "completed: " << (rep.completed ? "true" : "false") << '\n'
      << "nodes_visited: " << rep.nodes_visited << '\n'
      << "leaves_visited: " << rep.leaves_visited << '\n'
      << "max_classes_found: " << rep.max_classes_found << '\n';
  out << "counts_by_k:\n";
  for (const auto& [k, cnt] : rep.counts_by_k) out << "  " << k << ": " << cnt << '\n';
  out << "witnesses: " << rep.witnesses.size() << '\n';
  for (std::size_t i = 0; i < rep.witnesses.size(); ++i) {
    const auto& w = rep.witnesses[i];
    out << "witness " << i << ":\n"
        << "  classes: " << w.representative.class_count() << '\n'
        << "  member_count: " << w.member_count << '\n'
        << "  key: " << cells_string(w.key.cells) << '\n';
    std::istringstream body(to_text(w.representative));
    std::string line;
    while (std::getline(body, line)) out << "  " << line << '\n';
  }
  out << "pruned_by_rule:\n";
  for (const auto& [rule, cnt] : rep.nodes_pruned_by_rule)
    out << "  " << rule << ": " << cnt << '\n';
  for (const auto& note : rep.notes) out << "note: " << note << '\n';
  return out.str();
}

nlohmann::ordered_json to_json(const SearchReport& rep) {
  nlohmann::ordered_json j;
  j["report"] = "search";
  j["config"] = config_json(rep.config);
  j["completed"] = rep.completed;
  j["nodes_visited"] = rep.nodes_visited;
  j["leaves_visited"] = rep.leaves_visited;
  j["max_classes_found"] = rep.max_classes_found;
  auto counts = nlohmann::ordered_json::object();
  for (const auto& [k, cnt] : rep.counts_by_k) counts[std::to_string(k)] = cnt;
  j["counts_by_k"] = counts;
  auto witnesses = nlohmann::ordered_json::array();
  for (const auto& w : rep.witnesses) {
    nlohmann::ordered_json wj;
    wj["classes"] = w.representative.class_count();
    wj["member_count"] = w.member_count;
    wj["key"] = w.key.cells;
    wj["pattern"] = to_text(w.representative);
    witnesses.push_back(std::move(wj));
  }
  j["witnesses"] = witnesses;
  auto pruned = nlohmann::ordered_json::object();
  for (const auto& [rule, cnt] : rep.nodes_pruned_by_rule) pruned[rule] = cnt;
  j["pruned_by_rule"] = pruned;
  j["notes"] = rep.notes;
  return j;
}

std::string to_text(const ClassificationReport& rep) {
  std::ostringstream out;
  out << "report: classify\n"
      << "order: " << rep.order << '\n'
      << "ones: " << rep.ones << '\n'
      << "total_matrices: " << rep.total_matrices << '\n'
      << "classes: " << rep.classes.size() << '\n';
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    const auto& cls = rep.classes[i];
    out << "class " << i << ":\n"
        << "  member_count: " << cls.member_count << '\n'
        << "  key: " << binary_string(cls.key) << '\n';
    for (int r = 0; r < cls.representative.order(); ++r) {
      out << "  ";
      for (int c = 0; c < cls.representative.order(); ++c) out << cls.representative.get(r, c);
      out << '\n';
    }
  }
  return out.str();
}

nlohmann::ordered_json to_json(const ClassificationReport& rep) {
  nlohmann::ordered_json j;
  j["report"] = "classify";
  j["order"] = rep.order;
  j["ones"] = rep.ones;
  j["total_matrices"] = rep.total_matrices;
  auto classes = nlohmann::ordered_json::array();
  for (const auto& cls : rep.classes) {
    nlohmann::ordered_json cj;
    cj["member_count"] = cls.member_count;
    cj["key"] = binary_string(cls.key);
    auto rows = nlohmann::ordered_json::array();
    for (int r = 0; r < cls.representative.order(); ++r) {
      std::string row;
      for (int c = 0; c < cls.representative.order(); ++c)
        row += static_cast<char>('0' + cls.representative.get(r, c));
      rows.push_back(row);
    }
    cj["rows"] = rows;
    classes.push_back(std::move(cj));
  }
  j["classes"] = classes;
  return j;
}

std::string to_text(const TheoremReport& rep) {
  std::ostringstream out;
  out << "report: verify\n"
      << "order: " << rep.order << '\n'
      << "bound: " << rep.bound << '\n'
      << "verdict: " << verdict_name(rep.verdict) << '\n'
      << "nodes_total: " << rep.nodes_total << '\n';
  if (!rep.expected_key.empty()) out << "expected_key: " << cells_string(rep.expected_key) << '\n';
  for (const auto& note : rep.notes) out << "note: " << note << '\n';
  for (const auto& stratum : rep.strata) {
    out << "stratum: " << stratum.name << '\n';
    std::istringstream body(to_text(stratum.report));
    std::string line;
    while (std::getline(body, line)) out << "  " << line << '\n';
  }
  return out.str();
}

nlohmann::ordered_json to_json(const TheoremReport& rep) {
  nlohmann::ordered_json j;
  j["report"] = "verify";
  j["order"] = rep.order;
  j["bound"] = rep.bound;
  j["verdict"] = verdict_name(rep.verdict);
  j["nodes_total"] = rep.nodes_total;
  j["expected_key"] = rep.expected_key;
  j["notes"] = rep.notes;
  auto strata = nlohmann::ordered_json::array();
  for (const auto& stratum : rep.strata) {
    nlohmann::ordered_json sj;
    sj["name"] = stratum.name;
    sj["report"] = to_json(stratum.report);
    strata.push_back(std::move(sj));
  }
  j["strata"] = strata;
  return j;
}

}  // namespace epat
