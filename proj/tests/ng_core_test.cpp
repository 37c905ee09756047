#include "doctest.h"
#include "support.hpp"
#include "tropetwist/dot.hpp"

using namespace tt_test;

TEST_CASE("trope symbols and base types") {
  CHECK(trope_from_symbol("5ma") == Trope::FiveManBand);
  CHECK(trope_from_symbol("Drake") == Trope::Dragon);
  CHECK_FALSE(trope_from_symbol("WIZARD").has_value());
  for (Trope t : kAllTropes) CHECK(trope_from_symbol(symbol(t)) == t);
  CHECK(base_type(Trope::ChosenOne) == BaseType::Hero);
  CHECK(base_type(Trope::Conflict) == BaseType::Structure);
  CHECK(base_type(Trope::Dragon) == BaseType::Villain);
  CHECK(base_type(Trope::MayHelpInQuest) == BaseType::PlotDevice);
}

TEST_CASE("parse a conflict chain") {
  const auto g = ng("graph g\nnode h1 HERO\nnode c1 CONF\nnode e1 ENEMY\nedge h1 -> c1\nedge c1 -> e1");
  CHECK(g.name() == "g");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(*g.find("h1"), *g.find("c1"), EdgeKind::Directed));
}

TEST_CASE("parse entail chain") {
  const auto g = ng("graph g\nnode a EMP\nnode b DRAKE\nnode c NEO\nedge a |> b\nedge b |> c");
  CHECK(g.has_edge(0, 1, EdgeKind::Entail));
  CHECK(g.has_edge(1, 2, EdgeKind::Entail));
  CHECK_FALSE(g.has_edge(1, 0, EdgeKind::Entail));
}

TEST_CASE("parse is case-insensitive and skips comments") {
  const auto g = ng("# header\nGRAPH g\nNode x hero  # trailing\nnode y 5ma\nEDGE x <-> y\n");
  CHECK(g.trope(0) == Trope::Hero);
  CHECK(g.trope(1) == Trope::FiveManBand);
  CHECK(g.has_edge(1, 0, EdgeKind::Bidirectional));
}

TEST_CASE("parse errors carry positions") {
  auto fails = [](std::string_view text, std::size_t line) {
    try {
      parse_ng(text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      return true;
    }
    return false;
  };
  CHECK(fails("graph g\nedge x -> y", 2));
  CHECK(fails("graph g\nnode a WIZARD", 2));
  CHECK(fails("graph g\nnode a HERO\nnode a HERO", 3));
  CHECK(fails("graph g\nnode a HERO\nnode b HERO\nedge a -> b\nedge a -> b", 5));
  CHECK(fails("graph g\nnode a HERO\nnode b HERO\nedge a <-> b\nedge b <-> a", 5));
  CHECK(fails("graph g\nnode a HERO\nedge a -> a", 3));
  CHECK(fails("node a HERO", 1));
  CHECK(fails("graph g\nnode a HERO\nedge a => a", 3));
}

TEST_CASE("serialize") {
  CHECK(serialize_ng(ng("graph g")) == "graph g\n");
  const auto g = ng("graph g\nnode z HERO\nnode a CONF\nedge z <-> a");
  const std::string text = serialize_ng(g);
  CHECK(text.find("edge a <-> z") != std::string::npos);
  CHECK(parse_ng(text) == g);
}

TEST_CASE("dot export") {
  const auto g = ng("graph g\nnode h1 HERO\nnode c1 CONF\nnode e1 EMP\nnode m MCG\n"
                    "edge h1 -> c1\nedge c1 <-> e1\nedge e1 |> m");
  const std::string dot = to_dot(g);
  CHECK(dot.rfind("digraph g {", 0) == 0);
  CHECK(dot.find("h1 [label=\"HERO\" shape=box]") != std::string::npos);
  CHECK(dot.find("c1 [label=\"CONF\" shape=diamond]") != std::string::npos);
  CHECK(dot.find("shape=hexagon") != std::string::npos);
  CHECK(dot.find("shape=ellipse") != std::string::npos);
  CHECK(dot.find("arrowhead=diamond") != std::string::npos);
  CHECK(dot.find("dir=both") != std::string::npos);
  const std::string empty = to_dot(ng("graph e"));
  CHECK(empty.rfind("digraph e {", 0) == 0);
  CHECK(empty.find('}') != std::string::npos);
}

TEST_CASE("validate") {
  CHECK(validate(ng("graph g\nnode h1 HERO\nnode c1 CONF\nnode e1 ENEMY\nedge h1 -> c1\nedge c1 -> e1"))
            .empty());
  const auto dup = NarrativeGraph::from_parts(
      "g", {{"a", Trope::Hero}, {"b", Trope::Conflict}},
      {{0, 1, EdgeKind::Directed}, {0, 1, EdgeKind::Directed}});
  const auto v = validate(dup);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("a -> b") != std::string::npos);
  const auto bad = NarrativeGraph::from_parts(
      "g", {{"b", Trope::Hero}, {"a", Trope::Conflict}},
      {{0, 1, EdgeKind::Bidirectional}, {0, 0, EdgeKind::Directed}, {0, 7, EdgeKind::Entail}});
  CHECK(validate(bad).size() == 3);
}

TEST_CASE("parsed graphs always validate") {
  Rng rng = make_stream(11);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_graph(rng, 8, 0.4);
    CHECK(validate(parse_ng(serialize_ng(g))).empty());
  }
}

TEST_CASE("weak components") {
  CHECK(weak_components(ng("graph g\nnode a HERO\nnode b CONF\nnode c EMP\nedge a -> b\nedge c |> b"))
            .size() == 1);
  CHECK(weak_components(ng("graph g\nnode a HERO\nnode b CONF")).size() == 2);
  CHECK(weak_components(ng("graph g")).empty());
}

TEST_CASE("graph editing") {
  NarrativeGraph g("g");
  const auto a = g.add_node("a", Trope::Hero);
  const auto b = g.add_node("b", Trope::Conflict);
  const auto c = g.add_node("c", Trope::Enemy);
  CHECK_THROWS_AS(g.add_node("a", Trope::Enemy), GraphError);
  g.add_edge(b, a, EdgeKind::Bidirectional);
  CHECK(g.edges()[0].source == a);
  CHECK_FALSE(g.try_add_edge(a, b, EdgeKind::Bidirectional));
  CHECK_FALSE(g.try_add_edge(a, a, EdgeKind::Directed));
  g.add_edge(b, c, EdgeKind::Directed);
  const NodeIndex doomed[] = {a};
  g.remove_nodes(doomed);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(*g.find("b"), *g.find("c"), EdgeKind::Directed));
}
