#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tropetwist/patterns.hpp"

using namespace tt_test;

namespace {

const char* kChain = "graph g\nnode h1 HERO\nnode c1 CONF\nnode e1 ENEMY\nedge h1 -> c1\nedge c1 -> e1";
const char* kEntail = "graph g\nnode a EMP\nnode b DRAKE\nnode c NEO\nedge a |> b\nedge b |> c";

}  // namespace

TEST_CASE("conflict chain catalog") {
  const auto c = detect_all(ng(kChain));
  REQUIRE(c.micro.size() == 3);
  CHECK(c.micro[0].kind == MicroKind::Character);
  CHECK(c.micro[1].kind == MicroKind::Structure);
  CHECK(c.micro[2].kind == MicroKind::Character);
  CHECK(c.micro[2].group == BaseType::Villain);
  CHECK(c.explicit_conflicts() == 1);
  CHECK(c.implicit_conflicts() == 1);
  CHECK(c.derivations.empty());
  CHECK(c.reveals.empty());
  CHECK(c.apds.empty());
  CHECK(c.plot_points.empty());
  CHECK(c.plot_twists.empty());
  CHECK(c.auxiliary.empty());
}

TEST_CASE("entail chain gives one derivation and a twist") {
  const auto g = ng(kEntail);
  const auto c = detect_all(g);
  REQUIRE(c.derivations.size() == 1);
  CHECK(c.derivations[0].root == 0);
  CHECK(c.derivations[0].derivatives == std::vector<NodeIndex>{1, 2});
  REQUIRE(c.plot_points.size() == 2);
  REQUIRE(c.plot_twists.size() == 1);
  CHECK(c.plot_twists[0].node == 2);
  REQUIRE(c.plot_twists[0].links.size() == 1);
  CHECK(c.plot_twists[0].links[0].position == 2);
  CHECK(c.auxiliary.empty());
}

TEST_CASE("isolated hero is nothing") {
  const auto c = detect_all(ng("graph g\nnode h HERO"));
  CHECK(c.micro.size() == 1);
  REQUIRE(c.auxiliary.size() == 1);
  CHECK(c.auxiliary[0].kind == AuxiliaryKind::Nothing);
}

TEST_CASE("conflicts enumerate source-target products") {
  const auto g = ng("graph g\nnode h1 HERO\nnode c1 CONF\nnode e1 ENEMY\nnode h2 HERO\n"
                    "edge h1 -> c1\nedge c1 -> e1\nedge h2 -> c1");
  const auto conflicts = detect_conflicts(g);
  CHECK(conflicts.size() == 4);
  std::set<std::pair<NodeIndex, NodeIndex>> expl;
  std::set<std::pair<NodeIndex, NodeIndex>> impl;
  for (const auto& cp : conflicts) (cp.is_explicit ? expl : impl).insert({cp.source, cp.target});
  CHECK(expl == std::set<std::pair<NodeIndex, NodeIndex>>{{0, 2}, {3, 2}});
  CHECK(impl == std::set<std::pair<NodeIndex, NodeIndex>>{{2, 0}, {2, 3}});
}

TEST_CASE("self-conflict stored once") {
  const auto conflicts = detect_conflicts(ng("graph g\nnode h HERO\nnode c CONF\nedge h <-> c"));
  REQUIRE(conflicts.size() == 1);
  CHECK(conflicts[0].self_conflict);
  CHECK(conflicts[0].source == conflicts[0].target);
  CHECK(detect_conflicts(ng("graph g\nnode c CONF\nnode m MCG\nedge m -> c")).empty());
}

TEST_CASE("entail cycle is rooted at the smallest id") {
  const auto d = detect_derivations(ng("graph g\nnode b DRAKE\nnode a BAD\nedge a |> b\nedge b |> a"));
  REQUIRE(d.size() == 1);
  CHECK(d[0].root == 1);
  CHECK(d[0].derivatives == std::vector<NodeIndex>{0});
  CHECK(detect_derivations(ng(kChain)).empty());
}

TEST_CASE("reveal makes the conflicts on its pair fake") {
  const auto g = ng(std::string(kChain) + "\nedge e1 -> h1");
  const auto c = detect_all(g);
  REQUIRE(c.reveals.size() == 1);
  CHECK(c.reveals[0].source == 2);
  CHECK(c.reveals[0].target == 0);
  CHECK(c.reveals[0].fake_conflicts.size() == 1);
  CHECK(c.fake_explicit_conflicts() == 1);
  for (const auto& cp : c.conflicts) CHECK(cp.fake);
  REQUIRE(c.plot_twists.size() == 1);
  CHECK(c.plot_twists[0].node == 2);
  CHECK(c.auxiliary.empty());
}

TEST_CASE("active plot devices") {
  const auto g = ng("graph g\nnode h HERO\nnode c CONF\nnode e ENEMY\nnode m MCG\nnode p PLD\n"
                    "node k CHK\nedge h -> c\nedge c -> e\nedge e -> m\nedge m <-> p\nedge k -> h\n"
                    "edge k -> e");
  const auto apds = detect_active_plot_devices(g);
  REQUIRE(apds.size() == 2);
  CHECK(apds[0].node == 3);
  CHECK(apds[0].incoming == 2);
  CHECK(apds[0].outgoing == 1);
  CHECK(apds[1].node == 4);
  const auto c = detect_all(g);
  // m and p are adjacent APDs, so both twist.
  CHECK(c.plot_twists.size() == 2);
  // k has two outgoing edges: not an APD, both edges broken, k is nothing.
  CHECK(c.count(AuxiliaryKind::BrokenLink) == 2);
  CHECK(c.count(AuxiliaryKind::Nothing) == 1);
}

TEST_CASE("auxiliary consumption") {
  const auto stray = detect_all(ng("graph g\nnode h HERO\nnode h2 HERO\nnode p PLD\nedge h -> h2\nedge h -> p"));
  for (const auto& a : stray.auxiliary) {
    if (a.kind == AuxiliaryKind::BrokenLink) CHECK(a.index != 1);
  }
  const auto cc = detect_all(ng("graph g\nnode a CONF\nnode b CONF\nedge a -> b"));
  CHECK(cc.count(AuxiliaryKind::BrokenLink) == 1);
  CHECK(cc.count(AuxiliaryKind::Nothing) == 2);
}

TEST_CASE("catalog invariants on random graphs") {
  Rng rng = make_stream(3);
  for (int i = 0; i < 500; ++i) {
    const auto g = random_story(rng, 9);
    const auto c = detect_all(g);
    CHECK(c == detect_all(g));
    CHECK(c.micro.size() == g.node_count());
    std::size_t selfs = 0;
    for (const auto& cp : c.conflicts) selfs += cp.is_explicit && cp.self_conflict;
    CHECK(c.implicit_conflicts() + selfs == c.explicit_conflicts());
    std::set<NodeIndex> points;
    for (const auto& p : c.plot_points) CHECK(points.insert(p.node).second);
    for (const auto& t : c.plot_twists) CHECK(points.count(t.node) == 1);
  }
}
