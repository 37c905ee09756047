#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropetwist/evaluation.hpp"
#include "tropetwist/narrative_graph.hpp"
#include "tropetwist/rng.hpp"

namespace tropetwist {

enum class Wildcard : std::uint8_t { None, AnyHero, AnyVillain, AnyPlotDevice, Any };

// A rule node label: a concrete trope or a base-type wildcard.
struct Label {
  Wildcard wildcard = Wildcard::None;
  Trope trope = Trope::Hero;

  static constexpr Label concrete(Trope t) { return Label{Wildcard::None, t}; }
  static constexpr Label any(Wildcard w) { return Label{w, Trope::Hero}; }

  bool is_concrete() const { return wildcard == Wildcard::None; }
  bool matches(Trope t) const;
  std::string to_string() const;

  bool operator==(const Label& o) const {
    return wildcard == o.wildcard && (wildcard != Wildcard::None || trope == o.trope);
  }
};

// 13 concrete tropes followed by ANY_HERO, ANY_VILLAIN, ANY_PLD, ANY.
inline constexpr std::size_t kLabelCount = kTropeCount + 4;
Label label_at(std::size_t i);
std::optional<Label> label_from_string(std::string_view text);

using SlotId = int;

struct SlotNode {
  SlotId slot = 0;
  Label label;
  bool operator==(const SlotNode&) const = default;
};

struct SlotEdge {
  SlotId from = 0;
  SlotId to = 0;
  EdgeKind kind = EdgeKind::Directed;
  bool operator==(const SlotEdge&) const = default;
};

struct RulePattern {
  std::vector<SlotNode> nodes;
  std::vector<SlotEdge> edges;

  const SlotNode* find(SlotId slot) const;
  bool has_slot(SlotId slot) const { return find(slot) != nullptr; }
  // Bidirectional edges match in either orientation.
  bool has_edge(SlotId from, SlotId to, EdgeKind kind) const;
  SlotId max_slot() const;

  bool operator==(const RulePattern&) const = default;
};

// Slots present on both sides are preserved (and relabeled when the right
// side carries a different concrete trope); left-only slots are deleted with
// their incident edges; right-only slots are created. Left edges between
// preserved slots that are absent on the right are removed.
struct ProductionRule {
  RulePattern lhs;
  RulePattern rhs;
  bool operator==(const ProductionRule&) const = default;
};

struct Genotype {
  std::vector<ProductionRule> rules;
  bool operator==(const Genotype&) const = default;
};

struct RecipeStep {
  std::size_t rule = 0;
  std::size_t count = 1;
  bool operator==(const RecipeStep&) const = default;
};

struct Recipe {
  std::vector<RecipeStep> steps;
  std::size_t total() const;
  bool operator==(const Recipe&) const = default;
};

// Empty iff the rule is well formed.
std::vector<std::string> check_rule(const ProductionRule& rule);

// Drops edges that reference undeclared slots, self-edges, and duplicates.
void repair(ProductionRule& rule);

// Host node per left-side slot, in left-side node order.
using Match = std::vector<NodeIndex>;

// All injective, label-compatible embeddings of the left side, ordered
// lexicographically by the matched node ids.
std::vector<Match> find_matches(const ProductionRule& rule, const NarrativeGraph& host);
std::size_t count_matches(const ProductionRule& rule, const NarrativeGraph& host);

// Rewrites one uniformly chosen match. Unmatched rules return the host as is.
NarrativeGraph apply_rule(const ProductionRule& rule, const NarrativeGraph& host, Rng& rng);

// Draws rule indices (one per rule plus up to five extra) and coalesces them.
Recipe sample_recipe(const Genotype& genotype, Rng& rng);
// Repeated draws of a rule fold into one step, ordered by first draw.
Recipe recipe_from_draws(const std::vector<std::size_t>& draws);
NarrativeGraph apply_recipe(const Genotype& genotype, const Recipe& recipe,
                            const NarrativeGraph& root, Rng& rng);

inline constexpr std::size_t kRecipesPerIndividual = 10;

struct Derivation {
  NarrativeGraph phenotype;
  Recipe recipe;
  Evaluation evaluation;
};

// Tries `recipes` sampled recipes on fresh copies of the root and keeps the
// best result: feasible before infeasible, then higher fitness, then the
// earlier sample.
Derivation derive_phenotype(const Genotype& genotype, const Evaluator& evaluator, Rng& rng,
                            std::size_t recipes = kRecipesPerIndividual);

ProductionRule random_rule(Rng& rng);
Genotype random_genotype(Rng& rng);

enum class MutationKind : std::uint8_t {
  AddRule,
  RemoveRule,
  Relabel,
  AddNode,
  RemoveNode,
  AddEdge,
  RemoveEdge,
  ChangeEdgeKind,
};

inline constexpr double kRuleAddRemoveProbability = 0.1;

Genotype mutate(const Genotype& genotype, Rng& rng, MutationKind* applied = nullptr,
                double add_remove_probability = kRuleAddRemoveProbability);

// Swaps the left or right side of one random rule of each parent.
std::pair<Genotype, Genotype> crossover(const Genotype& a, const Genotype& b, Rng& rng);

}  // namespace tropetwist
