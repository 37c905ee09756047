#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tropetwist/dsl.hpp"
#include "tropetwist/grammar.hpp"
#include "tropetwist/narrative_graph.hpp"
#include "tropetwist/rng.hpp"

namespace tt_test {

using namespace tropetwist;

inline NarrativeGraph ng(std::string_view text) { return parse_ng(text); }

// Random valid graph with up to `max_nodes` nodes. Ids are shuffled so id
// order and insertion order disagree.
inline NarrativeGraph random_graph(Rng& rng, std::size_t max_nodes, double edge_density = 0.25) {
  NarrativeGraph g("r" + std::to_string(uniform_index(rng, 1000)));
  const std::size_t n = uniform_index(rng, max_nodes + 1);
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_node("v" + std::to_string(ids[i]), kAllTropes[uniform_index(rng, kAllTropes.size())]);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !bernoulli(rng, edge_density)) continue;
      g.try_add_edge(a, b, kAllEdgeKinds[uniform_index(rng, kAllEdgeKinds.size())]);
    }
  }
  return g;
}

// Graph biased towards pattern-rich shapes: characters around conflicts,
// entail chains and plot devices.
inline NarrativeGraph random_story(Rng& rng, std::size_t max_nodes) {
  static constexpr Trope kPool[] = {Trope::Hero,    Trope::Hero,      Trope::Conflict,
                                    Trope::Conflict, Trope::Enemy,    Trope::BigBad,
                                    Trope::Dragon,   Trope::MacGuffin, Trope::ChosenOne,
                                    Trope::Superhero, Trope::PlotDevice, Trope::Empire};
  NarrativeGraph g("s");
  const std::size_t n = 1 + uniform_index(rng, max_nodes);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_node("v" + std::to_string(i), kPool[uniform_index(rng, std::size(kPool))]);
  }
  const std::size_t edges = uniform_index(rng, 2 * n + 1);
  for (std::size_t k = 0; k < edges && n > 1; ++k) {
    g.try_add_edge(uniform_index(rng, n), uniform_index(rng, n),
                   kAllEdgeKinds[uniform_index(rng, kAllEdgeKinds.size())]);
  }
  return g;
}

}  // namespace tt_test
