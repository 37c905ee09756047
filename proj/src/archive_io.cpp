#include "tropetwist/archive_io.hpp"

#include <stdexcept>

#include "tropetwist/dsl.hpp"

namespace tropetwist {

namespace {

using nlohmann::json;

EdgeKind kind_from_string(const std::string& s) {
  for (EdgeKind k : kAllEdgeKinds) {
    if (edge_operator(k) == s) return k;
  }
  throw std::invalid_argument("unknown edge kind '" + s + "'");
}

json pattern_to_json(const RulePattern& p) {
  json nodes = json::array();
  for (const SlotNode& n : p.nodes) nodes.push_back({{"slot", n.slot}, {"label", n.label.to_string()}});
  json edges = json::array();
  for (const SlotEdge& e : p.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", std::string(edge_operator(e.kind))}});
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

RulePattern pattern_from_json(const json& j) {
  RulePattern p;
  for (const json& n : j.at("nodes")) {
    const auto label = label_from_string(n.at("label").get<std::string>());
    if (!label) throw std::invalid_argument("unknown rule label " + n.at("label").dump());
    p.nodes.push_back(SlotNode{n.at("slot").get<SlotId>(), *label});
  }
  for (const json& e : j.at("edges")) {
    p.edges.push_back(SlotEdge{e.at("from").get<SlotId>(), e.at("to").get<SlotId>(),
                               kind_from_string(e.at("kind").get<std::string>())});
  }
  return p;
}

json evaluation_to_json(const Evaluation& e) {
  return {{"feasible", e.feasible},           {"fitness", e.fitness},
          {"cohesion", e.cohesion},           {"consistency", e.consistency},
          {"coherence", e.coherence},         {"interestingness", e.interestingness},
          {"step", e.step}};
}

json individual_to_json(const Individual& ind) {
  return {{"id", ind.id},
          {"genotype", genotype_to_json(ind.genotype)},
          {"recipe", recipe_to_json(ind.recipe)},
          {"phenotype", serialize_ng(ind.phenotype)},
          {"evaluation", evaluation_to_json(ind.evaluation)}};
}

}  // namespace

json genotype_to_json(const Genotype& g) {
  json rules = json::array();
  for (const ProductionRule& r : g.rules) {
    rules.push_back({{"lhs", pattern_to_json(r.lhs)}, {"rhs", pattern_to_json(r.rhs)}});
  }
  return {{"rules", rules}};
}

Genotype genotype_from_json(const json& j) {
  Genotype g;
  for (const json& r : j.at("rules")) {
    g.rules.push_back(ProductionRule{pattern_from_json(r.at("lhs")), pattern_from_json(r.at("rhs"))});
  }
  return g;
}

json recipe_to_json(const Recipe& r) {
  json steps = json::array();
  for (const RecipeStep& s : r.steps) steps.push_back({{"rule", s.rule}, {"count", s.count}});
  return steps;
}

json config_to_json(const RunConfig& c) {
  return {{"generations", c.generations},
          {"initial_population", c.initial_population},
          {"offspring_per_generation", c.offspring_per_generation},
          {"mutation_probability", c.mutation_probability},
          {"rule_add_remove_probability", c.rule_add_remove_probability},
          {"recipes_per_individual", c.recipes_per_individual},
          {"step_threshold", c.step_threshold},
          {"interestingness_bins", c.interestingness_bins},
          {"cell_capacity", c.cell_capacity},
          {"seed", c.seed},
          {"exclusive_variation", c.exclusive_variation},
          {"root", c.root_path}};
}

json archive_to_json(const EliteArchive& archive, const RunConfig& config) {
  json cells = json::array();
  for (std::size_t r = 0; r < archive.rows(); ++r) {
    for (std::size_t c = 0; c < archive.cols(); ++c) {
      const Cell& cell = archive.cell(r, c);
      if (cell.empty()) continue;
      json rec = {{"step", r},
                  {"interestingness_bin", c},
                  {"feasible_count", cell.feasible.size()},
                  {"infeasible_count", cell.infeasible.size()}};
      rec["elite"] = cell.elite() ? individual_to_json(*cell.elite()) : json(nullptr);
      rec["best_infeasible"] =
          cell.infeasible.empty() ? json(nullptr) : individual_to_json(cell.infeasible.front());
      cells.push_back(std::move(rec));
    }
  }
  return {{"config", config_to_json(config)},
          {"grid", {{"rows", archive.rows()}, {"cols", archive.cols()}}},
          {"coverage", coverage(archive)},
          {"cells", cells}};
}

std::string archive_document(const EliteArchive& archive, const RunConfig& config) {
  return archive_to_json(archive, config).dump(2) + "\n";
}

}  // namespace tropetwist
