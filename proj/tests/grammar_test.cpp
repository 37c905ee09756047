#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace tt_test;

namespace {

const char* kChain = "graph g\nnode h1 HERO\nnode c1 CONF\nnode e1 ENEMY\nedge h1 -> c1\nedge c1 -> e1";

SlotNode slot(SlotId s, Label l) { return SlotNode{s, l}; }
Label lab(Trope t) { return Label::concrete(t); }

ProductionRule relabel(Trope from, Trope to) {
  return ProductionRule{{{slot(0, lab(from))}, {}}, {{slot(0, lab(to))}, {}}};
}

}  // namespace

TEST_CASE("labels") {
  CHECK(label_from_string("any_hero") == Label::any(Wildcard::AnyHero));
  CHECK(label_from_string("MCG") == lab(Trope::MacGuffin));
  CHECK_FALSE(label_from_string("ANY_THING").has_value());
  for (std::size_t i = 0; i < kLabelCount; ++i) CHECK(label_from_string(label_at(i).to_string()) == label_at(i));
  CHECK(Label::any(Wildcard::AnyVillain).matches(Trope::Dragon));
  CHECK_FALSE(Label::any(Wildcard::AnyVillain).matches(Trope::ChosenOne));
  CHECK(Label::any(Wildcard::AnyPlotDevice).matches(Trope::ChekhovsGun));
  CHECK(Label::any(Wildcard::Any).matches(Trope::Conflict));
}

TEST_CASE("find matches") {
  const auto host = ng(kChain);
  ProductionRule any_hero{{{slot(0, Label::any(Wildcard::AnyHero))}, {}}, {}};
  CHECK(find_matches(any_hero, host) == std::vector<Match>{{0}});

  ProductionRule hc{{{slot(0, lab(Trope::Hero)), slot(1, lab(Trope::Conflict))},
                     {{0, 1, EdgeKind::Directed}}},
                    {}};
  CHECK(find_matches(hc, host) == std::vector<Match>{{0, 1}});
  ProductionRule backwards = hc;
  backwards.lhs.edges[0] = {1, 0, EdgeKind::Directed};
  CHECK(find_matches(backwards, host).empty());

  CHECK(find_matches(relabel(Trope::Dragon, Trope::Hero), host).empty());

  ProductionRule any_two{{{slot(0, Label::any(Wildcard::Any)), slot(1, Label::any(Wildcard::Any))}, {}}, {}};
  const auto all = find_matches(any_two, host);
  CHECK(all.size() == 6);
  CHECK(count_matches(any_two, host) == 6);
  // ordered by ids: c1 < e1 < h1
  CHECK(all.front() == Match{1, 2});
  CHECK(all.back() == Match{0, 2});
}

TEST_CASE("bidirectional lhs edges match either orientation") {
  const auto host = ng("graph g\nnode b HERO\nnode a NEO\nedge b <-> a");
  ProductionRule r{{{slot(0, lab(Trope::Hero)), slot(1, lab(Trope::ChosenOne))},
                    {{0, 1, EdgeKind::Bidirectional}}},
                   {}};
  CHECK(find_matches(r, host).size() == 1);
  CHECK(find_matches(r, host) == brute_force_matches(r, host));
}

TEST_CASE("matcher agrees with brute force") {
  Rng rng = make_stream(17);
  for (int i = 0; i < 200; ++i) {
    const auto rule = random_rule(rng);
    const auto host = random_story(rng, 6);
    CHECK(find_matches(rule, host) == brute_force_matches(rule, host));
  }
}

TEST_CASE("apply rule") {
  Rng rng = make_stream(1);
  const auto single = ng("graph g\nnode h HERO");
  const auto out = apply_rule(relabel(Trope::Hero, Trope::ChosenOne), single, rng);
  REQUIRE(out.node_count() == 1);
  CHECK(out.node(0).id == "h");
  CHECK(out.trope(0) == Trope::ChosenOne);

  ProductionRule erase{{{slot(0, Label::any(Wildcard::Any))}, {}}, {}};
  CHECK(apply_rule(erase, single, rng).empty());

  CHECK(apply_rule(relabel(Trope::Dragon, Trope::Hero), single, rng) == single);

  // Grow a conflict off a hero; the new nodes get fresh ids.
  ProductionRule grow{{{slot(0, lab(Trope::Hero))}, {}},
                      {{slot(0, lab(Trope::Hero)), slot(1, lab(Trope::Conflict)), slot(2, lab(Trope::BigBad))},
                       {{0, 1, EdgeKind::Directed}, {1, 2, EdgeKind::Directed}}}};
  const auto grown = apply_rule(grow, single, rng);
  CHECK(grown.node_count() == 3);
  CHECK(grown.edge_count() == 2);
  CHECK(validate(grown).empty());
  CHECK(grown.find("h").has_value());

  // An lhs edge missing on the right is removed.
  ProductionRule cut{{{slot(0, lab(Trope::Hero)), slot(1, lab(Trope::Conflict))},
                      {{0, 1, EdgeKind::Directed}}},
                     {{slot(0, lab(Trope::Hero)), slot(1, lab(Trope::Conflict))}, {}}};
  const auto cut_out = apply_rule(cut, ng(kChain), rng);
  CHECK(cut_out.node_count() == 3);
  CHECK(cut_out.edge_count() == 1);
}

TEST_CASE("rule rewrites keep graphs valid") {
  Rng rng = make_stream(23);
  for (int i = 0; i < 500; ++i) {
    const auto rule = random_rule(rng);
    const auto host = random_story(rng, 7);
    CHECK(validate(apply_rule(rule, host, rng)).empty());
  }
}

TEST_CASE("recipes") {
  Rng rng = make_stream(2);
  Genotype one{{relabel(Trope::Hero, Trope::ChosenOne)}};
  for (int i = 0; i < 200; ++i) {
    const Recipe r = sample_recipe(one, rng);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].rule == 0);
    CHECK(r.steps[0].count >= 1);
    CHECK(r.steps[0].count <= 6);
  }
  const Recipe coalesced = recipe_from_draws({1, 0, 1, 2});
  CHECK(coalesced.steps == std::vector<RecipeStep>{{1, 2}, {0, 1}, {2, 1}});
  CHECK(coalesced.total() == 4);
}

TEST_CASE("derive phenotype") {
  const Evaluator ev(ng(kChain));
  Genotype never{{relabel(Trope::Dragon, Trope::Hero)}};
  Rng rng = make_stream(4);
  CHECK(derive_phenotype(never, ev, rng).phenotype == ev.root());

  Genotype to_bad{{relabel(Trope::Enemy, Trope::BigBad)}};
  const auto d = derive_phenotype(to_bad, ev, rng);
  CHECK(d.phenotype.trope(*d.phenotype.find("e1")) == Trope::BigBad);
  CHECK(d.evaluation.feasible);

  Rng a = make_stream(9);
  Rng b = make_stream(9);
  Rng g = make_stream(10);
  const Genotype random = random_genotype(g);
  CHECK(derive_phenotype(random, ev, a).phenotype == derive_phenotype(random, ev, b).phenotype);
}

TEST_CASE("random genotypes") {
  Rng rng = make_stream(6);
  for (int i = 0; i < 10000; ++i) {
    const auto g = random_genotype(rng);
    CHECK(g.rules.size() >= 2);
    CHECK(g.rules.size() <= 5);
  }
  for (int i = 0; i < 500; ++i) CHECK(check_rule(random_rule(rng)).empty());
}

TEST_CASE("mutation") {
  Rng rng = make_stream(8);
  Genotype one{{relabel(Trope::Hero, Trope::ChosenOne)}};
  for (int i = 0; i < 200; ++i) {
    MutationKind kind{};
    const auto m = mutate(one, rng, &kind, 1.0);
    CHECK(m.rules.size() == 2);
    CHECK(kind == MutationKind::AddRule);
  }
  for (int i = 0; i < 2000; ++i) {
    const auto g = random_genotype(rng);
    const auto m = mutate(g, rng);
    CHECK_FALSE(m.rules.empty());
    for (const auto& r : m.rules) CHECK(check_rule(r).empty());
  }
}

TEST_CASE("crossover and repair") {
  Rng rng = make_stream(12);
  Genotype a{{relabel(Trope::Hero, Trope::ChosenOne)}};
  const auto [x, y] = crossover(a, a, rng);
  CHECK(x == a);
  CHECK(y == a);

  for (int i = 0; i < 1000; ++i) {
    const auto p = random_genotype(rng);
    const auto q = random_genotype(rng);
    const auto [c, d] = crossover(p, q, rng);
    CHECK(c.rules.size() == p.rules.size());
    CHECK(d.rules.size() == q.rules.size());
    for (const auto& r : c.rules) CHECK(check_rule(r).empty());
    for (const auto& r : d.rules) CHECK(check_rule(r).empty());
  }

  ProductionRule broken{{{slot(0, lab(Trope::Hero))}, {}},
                        {{slot(0, lab(Trope::Hero)), slot(1, lab(Trope::Conflict))},
                         {{0, 1, EdgeKind::Directed}, {0, 7, EdgeKind::Directed}, {1, 1, EdgeKind::Entail},
                          {0, 1, EdgeKind::Directed}}}};
  CHECK_FALSE(check_rule(broken).empty());
  repair(broken);
  CHECK(check_rule(broken).empty());
  CHECK(broken.rhs.edges == std::vector<SlotEdge>{{0, 1, EdgeKind::Directed}});
}
