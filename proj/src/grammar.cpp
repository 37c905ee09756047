#include "tropetwist/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

namespace tropetwist {

namespace {

constexpr std::array<std::string_view, 4> kWildcardNames = {"ANY_HERO", "ANY_VILLAIN",
                                                            "ANY_PLD", "ANY"};

std::vector<Trope> tropes_of(BaseType b) {
  std::vector<Trope> out;
  for (Trope t : kAllTropes) {
    if (base_type(t) == b) out.push_back(t);
  }
  return out;
}

Trope resolve(const Label& label, Rng& rng) {
  switch (label.wildcard) {
    case Wildcard::None:
      return label.trope;
    case Wildcard::AnyHero: {
      const auto pool = tropes_of(BaseType::Hero);
      return pool[uniform_index(rng, pool.size())];
    }
    case Wildcard::AnyVillain: {
      const auto pool = tropes_of(BaseType::Villain);
      return pool[uniform_index(rng, pool.size())];
    }
    case Wildcard::AnyPlotDevice: {
      const auto pool = tropes_of(BaseType::PlotDevice);
      return pool[uniform_index(rng, pool.size())];
    }
    case Wildcard::Any:
      return kAllTropes[uniform_index(rng, kAllTropes.size())];
  }
  return label.trope;
}

Label random_label(Rng& rng) { return label_at(uniform_index(rng, kLabelCount)); }

EdgeKind random_kind(Rng& rng) { return kAllEdgeKinds[uniform_index(rng, kAllEdgeKinds.size())]; }

bool same_edge(const SlotEdge& e, SlotId from, SlotId to, EdgeKind kind) {
  if (e.kind != kind) return false;
  if (e.from == from && e.to == to) return true;
  return kind == EdgeKind::Bidirectional && e.from == to && e.to == from;
}

// Adds up to `count` random edges between distinct nodes of the pattern.
void add_random_edges(RulePattern& p, std::size_t count, Rng& rng) {
  if (p.nodes.size() < 2) return;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t a = uniform_index(rng, p.nodes.size());
    std::size_t b = uniform_index(rng, p.nodes.size() - 1);
    if (b >= a) ++b;
    const EdgeKind kind = random_kind(rng);
    const SlotId from = p.nodes[a].slot;
    const SlotId to = p.nodes[b].slot;
    if (!p.has_edge(from, to, kind)) p.edges.push_back(SlotEdge{from, to, kind});
  }
}

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

void repair_pattern(RulePattern& p) {
  std::set<SlotId> seen;
  std::erase_if(p.nodes, [&seen](const SlotNode& n) { return !seen.insert(n.slot).second; });
  std::vector<SlotEdge> kept;
  for (const SlotEdge& e : p.edges) {
    if (e.from == e.to || !seen.count(e.from) || !seen.count(e.to)) continue;
    const bool dup = std::any_of(kept.begin(), kept.end(), [&e](const SlotEdge& k) {
      return same_edge(k, e.from, e.to, e.kind);
    });
    if (!dup) kept.push_back(e);
  }
  p.edges = std::move(kept);
}

// Host adjacency with one bit per edge kind; bidirectional edges are set in
// both orientations.
class Adjacency {
 public:
  explicit Adjacency(const NarrativeGraph& g) : n_(g.node_count()), bits_(n_ * n_, 0) {
    for (const Edge& e : g.edges()) {
      bits_[e.source * n_ + e.target] |= bit(e.kind);
      if (e.kind == EdgeKind::Bidirectional) bits_[e.target * n_ + e.source] |= bit(e.kind);
    }
  }
  bool has(NodeIndex a, NodeIndex b, EdgeKind k) const { return bits_[a * n_ + b] & bit(k); }

 private:
  static std::uint8_t bit(EdgeKind k) { return std::uint8_t(1u << static_cast<unsigned>(k)); }
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

// Backtracking enumeration of left-side embeddings in lexicographic node-id
// order. `visit` returns false to stop early.
class Matcher {
 public:
  Matcher(const RulePattern& lhs, const NarrativeGraph& host) : lhs_(lhs), adj_(host) {
    std::vector<NodeIndex> by_id(host.node_count());
    for (NodeIndex i = 0; i < by_id.size(); ++i) by_id[i] = i;
    std::sort(by_id.begin(), by_id.end(),
              [&host](NodeIndex a, NodeIndex b) { return host.node(a).id < host.node(b).id; });
    candidates_.resize(lhs.nodes.size());
    for (std::size_t s = 0; s < lhs.nodes.size(); ++s) {
      for (NodeIndex h : by_id) {
        if (lhs.nodes[s].label.matches(host.trope(h))) candidates_[s].push_back(h);
      }
    }
    // Edges are checked once both endpoints are assigned.
    checks_.resize(lhs.nodes.size());
    for (const SlotEdge& e : lhs.edges) {
      const std::size_t a = position(e.from);
      const std::size_t b = position(e.to);
      checks_[std::max(a, b)].push_back(Check{a, b, e.kind});
    }
    used_.assign(host.node_count(), false);
    current_.assign(lhs.nodes.size(), 0);
  }

  template <typename Visit>
  void run(Visit&& visit) {
    if (lhs_.nodes.empty()) return;
    stop_ = false;
    recurse(0, visit);
  }

 private:
  struct Check {
    std::size_t a;
    std::size_t b;
    EdgeKind kind;
  };

  std::size_t position(SlotId slot) const {
    for (std::size_t i = 0; i < lhs_.nodes.size(); ++i) {
      if (lhs_.nodes[i].slot == slot) return i;
    }
    return 0;
  }

  template <typename Visit>
  void recurse(std::size_t depth, Visit& visit) {
    if (depth == lhs_.nodes.size()) {
      if (!visit(current_)) stop_ = true;
      return;
    }
    for (NodeIndex h : candidates_[depth]) {
      if (used_[h]) continue;
      current_[depth] = h;
      bool ok = true;
      for (const Check& c : checks_[depth]) {
        if (!adj_.has(current_[c.a], current_[c.b], c.kind)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used_[h] = true;
      recurse(depth + 1, visit);
      used_[h] = false;
      if (stop_) return;
    }
  }

  const RulePattern& lhs_;
  Adjacency adj_;
  std::vector<std::vector<NodeIndex>> candidates_;
  std::vector<std::vector<Check>> checks_;
  std::vector<bool> used_;
  Match current_;
  bool stop_ = false;
};

// Next unused id of the form n<k>.
class FreshIds {
 public:
  explicit FreshIds(const NarrativeGraph& g) : g_(g) {
    for (const Node& n : g.nodes()) {
      if (n.id.size() < 2 || n.id[0] != 'n') continue;
      if (!std::all_of(n.id.begin() + 1, n.id.end(), [](char c) { return std::isdigit(c); })) {
        continue;
      }
      if (n.id.size() > 12) continue;
      next_ = std::max(next_, std::stoull(n.id.substr(1)) + 1);
    }
  }

  std::string next() {
    for (;;) {
      std::string id = "n" + std::to_string(next_++);
      if (!g_.find(id)) return id;
    }
  }

 private:
  const NarrativeGraph& g_;
  unsigned long long next_ = 0;
};

}  // namespace

bool Label::matches(Trope t) const {
  switch (wildcard) {
    case Wildcard::None:
      return trope == t;
    case Wildcard::AnyHero:
      return base_type(t) == BaseType::Hero;
    case Wildcard::AnyVillain:
      return base_type(t) == BaseType::Villain;
    case Wildcard::AnyPlotDevice:
      return base_type(t) == BaseType::PlotDevice;
    case Wildcard::Any:
      return true;
  }
  return false;
}

std::string Label::to_string() const {
  if (wildcard == Wildcard::None) return std::string(symbol(trope));
  return std::string(kWildcardNames[static_cast<std::size_t>(wildcard) - 1]);
}

Label label_at(std::size_t i) {
  if (i < kTropeCount) return Label::concrete(kAllTropes[i]);
  return Label::any(static_cast<Wildcard>(i - kTropeCount + 1));
}

std::optional<Label> label_from_string(std::string_view text) {
  if (auto t = trope_from_symbol(text)) return Label::concrete(*t);
  for (std::size_t i = 0; i < kWildcardNames.size(); ++i) {
    std::string upper(text);
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper == kWildcardNames[i]) return Label::any(static_cast<Wildcard>(i + 1));
  }
  return std::nullopt;
}

const SlotNode* RulePattern::find(SlotId slot) const {
  for (const SlotNode& n : nodes) {
    if (n.slot == slot) return &n;
  }
  return nullptr;
}

bool RulePattern::has_edge(SlotId from, SlotId to, EdgeKind kind) const {
  return std::any_of(edges.begin(), edges.end(),
                     [&](const SlotEdge& e) { return same_edge(e, from, to, kind); });
}

SlotId RulePattern::max_slot() const {
  SlotId m = -1;
  for (const SlotNode& n : nodes) m = std::max(m, n.slot);
  return m;
}

std::size_t Recipe::total() const {
  std::size_t sum = 0;
  for (const RecipeStep& s : steps) sum += s.count;
  return sum;
}

std::vector<std::string> check_rule(const ProductionRule& rule) {
  std::vector<std::string> out;
  if (rule.lhs.nodes.empty()) out.push_back("left side has no nodes");
  auto check_side = [&out](const RulePattern& p, std::string_view side) {
    std::set<SlotId> seen;
    for (const SlotNode& n : p.nodes) {
      if (!seen.insert(n.slot).second) {
        out.push_back(std::string(side) + ": duplicate slot " + std::to_string(n.slot));
      }
    }
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
      const SlotEdge& e = p.edges[i];
      if (!seen.count(e.from) || !seen.count(e.to)) {
        out.push_back(std::string(side) + ": edge references undeclared slot");
      } else if (e.from == e.to) {
        out.push_back(std::string(side) + ": self-edge on slot " + std::to_string(e.from));
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (same_edge(p.edges[j], e.from, e.to, e.kind)) {
          out.push_back(std::string(side) + ": duplicate edge");
          break;
        }
      }
    }
  };
  check_side(rule.lhs, "lhs");
  check_side(rule.rhs, "rhs");
  return out;
}

void repair(ProductionRule& rule) {
  repair_pattern(rule.lhs);
  repair_pattern(rule.rhs);
}

std::vector<Match> find_matches(const ProductionRule& rule, const NarrativeGraph& host) {
  std::vector<Match> out;
  Matcher(rule.lhs, host).run([&out](const Match& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::size_t count_matches(const ProductionRule& rule, const NarrativeGraph& host) {
  std::size_t n = 0;
  Matcher(rule.lhs, host).run([&n](const Match&) {
    ++n;
    return true;
  });
  return n;
}

NarrativeGraph apply_rule(const ProductionRule& rule, const NarrativeGraph& host, Rng& rng) {
  Matcher matcher(rule.lhs, host);
  std::size_t total = 0;
  matcher.run([&total](const Match&) {
    ++total;
    return true;
  });
  if (total == 0) return host;

  const std::size_t pick = uniform_index(rng, total);
  Match chosen;
  std::size_t seen = 0;
  matcher.run([&](const Match& m) {
    if (seen++ != pick) return true;
    chosen = m;
    return false;
  });

  NarrativeGraph out = host;
  std::vector<std::pair<SlotId, NodeIndex>> bound;
  for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
    bound.emplace_back(rule.lhs.nodes[i].slot, chosen[i]);
  }
  auto host_of = [&bound](SlotId slot) -> std::optional<NodeIndex> {
    for (const auto& [s, h] : bound) {
      if (s == slot) return h;
    }
    return std::nullopt;
  };

  std::vector<NodeIndex> doomed;
  for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
    const SlotId slot = rule.lhs.nodes[i].slot;
    const SlotNode* kept = rule.rhs.find(slot);
    if (!kept) {
      doomed.push_back(chosen[i]);
    } else if (kept->label.is_concrete() && kept->label.trope != out.trope(chosen[i])) {
      out.set_trope(chosen[i], kept->label.trope);
    }
  }

  for (const SlotEdge& e : rule.lhs.edges) {
    if (!rule.rhs.has_slot(e.from) || !rule.rhs.has_slot(e.to)) continue;
    if (rule.rhs.has_edge(e.from, e.to, e.kind)) continue;
    out.remove_edge(*host_of(e.from), *host_of(e.to), e.kind);
  }

  FreshIds fresh(host);
  for (const SlotNode& n : rule.rhs.nodes) {
    if (rule.lhs.has_slot(n.slot)) continue;
    const Trope t = resolve(n.label, rng);
    bound.emplace_back(n.slot, out.add_node(fresh.next(), t));
  }

  for (const SlotEdge& e : rule.rhs.edges) {
    const auto a = host_of(e.from);
    const auto b = host_of(e.to);
    if (!a || !b || *a == *b) continue;
    out.try_add_edge(*a, *b, e.kind);
  }

  out.remove_nodes(doomed);
  return out;
}

Recipe sample_recipe(const Genotype& genotype, Rng& rng) {
  const std::size_t rules = genotype.rules.size();
  if (rules == 0) return {};
  std::vector<std::size_t> draws(rules + uniform_index(rng, 6));
  for (std::size_t& d : draws) d = uniform_index(rng, rules);
  return recipe_from_draws(draws);
}

Recipe recipe_from_draws(const std::vector<std::size_t>& draws) {
  Recipe recipe;
  std::vector<std::size_t> step_of;
  for (std::size_t r : draws) {
    if (r >= step_of.size()) step_of.resize(r + 1, SIZE_MAX);
    if (step_of[r] == SIZE_MAX) {
      step_of[r] = recipe.steps.size();
      recipe.steps.push_back(RecipeStep{r, 1});
    } else {
      ++recipe.steps[step_of[r]].count;
    }
  }
  return recipe;
}

NarrativeGraph apply_recipe(const Genotype& genotype, const Recipe& recipe,
                            const NarrativeGraph& root, Rng& rng) {
  NarrativeGraph g = root;
  for (const RecipeStep& step : recipe.steps) {
    for (std::size_t i = 0; i < step.count; ++i) g = apply_rule(genotype.rules.at(step.rule), g, rng);
  }
  return g;
}

Derivation derive_phenotype(const Genotype& genotype, const Evaluator& evaluator, Rng& rng,
                            std::size_t recipes) {
  std::optional<Derivation> best;
  for (std::size_t k = 0; k < std::max<std::size_t>(recipes, 1); ++k) {
    Recipe recipe = sample_recipe(genotype, rng);
    NarrativeGraph g = apply_recipe(genotype, recipe, evaluator.root(), rng);
    const Evaluation e = evaluator.evaluate(g);
    const bool better = !best || (e.feasible && !best->evaluation.feasible) ||
                        (e.feasible == best->evaluation.feasible &&
                         e.fitness > best->evaluation.fitness);
    if (better) best = Derivation{std::move(g), std::move(recipe), e};
  }
  return *std::move(best);
}

ProductionRule random_rule(Rng& rng) {
  ProductionRule rule;
  const int lhs_nodes = uniform_int(rng, 1, 3);
  for (SlotId s = 0; s < lhs_nodes; ++s) rule.lhs.nodes.push_back(SlotNode{s, random_label(rng)});
  add_random_edges(rule.lhs, uniform_index(rng, pair_count(lhs_nodes) + 1), rng);

  for (const SlotNode& n : rule.lhs.nodes) {
    if (!bernoulli(rng, 0.5)) continue;
    rule.rhs.nodes.push_back(SlotNode{n.slot, bernoulli(rng, 0.5) ? n.label : random_label(rng)});
  }
  const int fresh = uniform_int(rng, 0, 4 - static_cast<int>(rule.rhs.nodes.size()));
  for (int i = 0; i < fresh; ++i) {
    rule.rhs.nodes.push_back(SlotNode{lhs_nodes + i, random_label(rng)});
  }
  add_random_edges(rule.rhs, uniform_index(rng, pair_count(rule.rhs.nodes.size()) + 1), rng);
  return rule;
}

Genotype random_genotype(Rng& rng) {
  Genotype g;
  const int n = uniform_int(rng, 2, 5);
  for (int i = 0; i < n; ++i) g.rules.push_back(random_rule(rng));
  return g;
}

Genotype mutate(const Genotype& genotype, Rng& rng, MutationKind* applied,
                double add_remove_probability) {
  Genotype out = genotype;
  auto record = [applied](MutationKind k) {
    if (applied) *applied = k;
  };

  if (out.rules.empty() || bernoulli(rng, add_remove_probability)) {
    const bool remove = out.rules.size() > 1 && bernoulli(rng, 0.5);
    if (remove) {
      out.rules.erase(out.rules.begin() + static_cast<long>(uniform_index(rng, out.rules.size())));
      record(MutationKind::RemoveRule);
    } else {
      out.rules.push_back(random_rule(rng));
      record(MutationKind::AddRule);
    }
    return out;
  }

  ProductionRule& rule = out.rules[uniform_index(rng, out.rules.size())];
  const auto kind = static_cast<MutationKind>(
      static_cast<int>(MutationKind::Relabel) + uniform_int(rng, 0, 5));
  record(kind);

  switch (kind) {
    case MutationKind::Relabel: {
      const std::size_t total = rule.lhs.nodes.size() + rule.rhs.nodes.size();
      const std::size_t i = uniform_index(rng, total);
      SlotNode& n = i < rule.lhs.nodes.size() ? rule.lhs.nodes[i]
                                              : rule.rhs.nodes[i - rule.lhs.nodes.size()];
      n.label = random_label(rng);
      break;
    }
    case MutationKind::AddNode: {
      const SlotId slot = std::max(rule.lhs.max_slot(), rule.rhs.max_slot()) + 1;
      const bool attach = !rule.rhs.nodes.empty();
      SlotId anchor = 0;
      if (attach) anchor = rule.rhs.nodes[uniform_index(rng, rule.rhs.nodes.size())].slot;
      rule.rhs.nodes.push_back(SlotNode{slot, random_label(rng)});
      if (attach) {
        const EdgeKind k = random_kind(rng);
        if (bernoulli(rng, 0.5)) {
          rule.rhs.edges.push_back(SlotEdge{anchor, slot, k});
        } else {
          rule.rhs.edges.push_back(SlotEdge{slot, anchor, k});
        }
      }
      break;
    }
    case MutationKind::RemoveNode: {
      std::vector<std::size_t> loose;
      for (std::size_t i = 0; i < rule.rhs.nodes.size(); ++i) {
        const SlotId s = rule.rhs.nodes[i].slot;
        const bool referenced = std::any_of(rule.rhs.edges.begin(), rule.rhs.edges.end(),
                                            [s](const SlotEdge& e) { return e.from == s || e.to == s; });
        if (!referenced) loose.push_back(i);
      }
      if (!loose.empty()) {
        rule.rhs.nodes.erase(rule.rhs.nodes.begin() +
                             static_cast<long>(loose[uniform_index(rng, loose.size())]));
      }
      break;
    }
    case MutationKind::AddEdge: {
      RulePattern& side = bernoulli(rng, 0.5) ? rule.lhs : rule.rhs;
      add_random_edges(side, 1, rng);
      break;
    }
    case MutationKind::RemoveEdge:
    case MutationKind::ChangeEdgeKind: {
      const std::size_t total = rule.lhs.edges.size() + rule.rhs.edges.size();
      if (total == 0) break;
      const std::size_t i = uniform_index(rng, total);
      RulePattern& side = i < rule.lhs.edges.size() ? rule.lhs : rule.rhs;
      const std::size_t j = i < rule.lhs.edges.size() ? i : i - rule.lhs.edges.size();
      if (kind == MutationKind::RemoveEdge) {
        side.edges.erase(side.edges.begin() + static_cast<long>(j));
      } else {
        const auto current = static_cast<int>(side.edges[j].kind);
        side.edges[j].kind = static_cast<EdgeKind>((current + uniform_int(rng, 1, 2)) % 3);
      }
      break;
    }
    case MutationKind::AddRule:
    case MutationKind::RemoveRule:
      break;
  }
  repair(rule);
  return out;
}

std::pair<Genotype, Genotype> crossover(const Genotype& a, const Genotype& b, Rng& rng) {
  Genotype x = a;
  Genotype y = b;
  if (x.rules.empty() || y.rules.empty()) return {x, y};
  ProductionRule& rx = x.rules[uniform_index(rng, x.rules.size())];
  ProductionRule& ry = y.rules[uniform_index(rng, y.rules.size())];
  if (bernoulli(rng, 0.5)) {
    std::swap(rx.lhs, ry.lhs);
  } else {
    std::swap(rx.rhs, ry.rhs);
  }
  repair(rx);
  repair(ry);
  return {std::move(x), std::move(y)};
}

}  // namespace tropetwist
