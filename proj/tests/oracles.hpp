#pragma once

#include <algorithm>
#include <vector>

#include "tropetwist/grammar.hpp"

namespace tt_test {

using namespace tropetwist;

// Every injective slot assignment, tried in lexicographic id order, kept when
// labels match and every left-side edge exists in the host.
inline std::vector<Match> brute_force_matches(const ProductionRule& rule, const NarrativeGraph& host) {
  std::vector<Match> out;
  const std::size_t k = rule.lhs.nodes.size();
  if (k == 0 || k > host.node_count()) return out;
  std::vector<NodeIndex> order(host.node_count());
  for (NodeIndex i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](NodeIndex a, NodeIndex b) { return host.node(a).id < host.node(b).id; });

  auto slot_pos = [&](SlotId s) {
    for (std::size_t i = 0; i < k; ++i) {
      if (rule.lhs.nodes[i].slot == s) return i;
    }
    return k;
  };

  std::vector<std::size_t> pick(k, 0);
  const std::size_t n = order.size();
  while (true) {
    std::vector<bool> seen(n, false);
    bool injective = true;
    for (std::size_t p : pick) {
      if (seen[p]) injective = false;
      seen[p] = true;
    }
    if (injective) {
      Match m(k);
      for (std::size_t i = 0; i < k; ++i) m[i] = order[pick[i]];
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) ok = rule.lhs.nodes[i].label.matches(host.trope(m[i]));
      for (const SlotEdge& e : rule.lhs.edges) {
        if (!ok) break;
        ok = host.has_edge(m[slot_pos(e.from)], m[slot_pos(e.to)], e.kind);
      }
      if (ok) out.push_back(m);
    }
    // odometer increment, last position fastest
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++pick[i] < n) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
  }
}

}  // namespace tt_test
