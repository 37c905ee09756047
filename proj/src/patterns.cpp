#include "tropetwist/patterns.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>

namespace tropetwist {

namespace {

bool is_conflict_node(const NarrativeGraph& g, NodeIndex n) {
  return base_type(g.trope(n)) == BaseType::Structure;
}

bool is_plot_device(Trope t) { return base_type(t) == BaseType::PlotDevice; }

// Edge e lets `other` reach conflict node c (other -> c or other <-> c).
bool is_source_leg(const Edge& e, NodeIndex c, NodeIndex& other) {
  if (e.kind == EdgeKind::Directed && e.target == c) {
    other = e.source;
    return true;
  }
  if (e.kind == EdgeKind::Bidirectional && (e.source == c || e.target == c)) {
    other = e.source == c ? e.target : e.source;
    return true;
  }
  return false;
}

// Edge e leads from conflict node c to `other` (c -> other or c <-> other).
bool is_target_leg(const Edge& e, NodeIndex c, NodeIndex& other) {
  if (e.kind == EdgeKind::Directed && e.source == c) {
    other = e.target;
    return true;
  }
  if (e.kind == EdgeKind::Bidirectional && (e.source == c || e.target == c)) {
    other = e.source == c ? e.target : e.source;
    return true;
  }
  return false;
}

bool same_pair(NodeIndex a, NodeIndex b, NodeIndex c, NodeIndex d) {
  return (a == c && b == d) || (a == d && b == c);
}

std::string_view assoc_name(PlotAssociation a) {
  switch (a) {
    case PlotAssociation::Derivation:
      return "derivation";
    case PlotAssociation::Reveal:
      return "reveal";
    case PlotAssociation::ActivePlotDevice:
      return "apd";
  }
  return "?";
}

}  // namespace

std::size_t PatternCatalog::explicit_conflicts() const {
  return static_cast<std::size_t>(std::count_if(
      conflicts.begin(), conflicts.end(), [](const ConflictPattern& c) { return c.is_explicit; }));
}

std::size_t PatternCatalog::implicit_conflicts() const {
  return conflicts.size() - explicit_conflicts();
}

std::size_t PatternCatalog::fake_explicit_conflicts() const {
  return static_cast<std::size_t>(
      std::count_if(conflicts.begin(), conflicts.end(),
                    [](const ConflictPattern& c) { return c.is_explicit && c.fake; }));
}

std::size_t PatternCatalog::character_count() const {
  return static_cast<std::size_t>(
      std::count_if(micro.begin(), micro.end(),
                    [](const MicroPattern& m) { return m.kind == MicroKind::Character; }));
}

std::size_t PatternCatalog::total_instances() const {
  return micro.size() + conflicts.size() + derivations.size() + reveals.size() + apds.size() +
         plot_points.size() + plot_twists.size() + auxiliary.size();
}

std::size_t PatternCatalog::count(AuxiliaryKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      auxiliary.begin(), auxiliary.end(), [kind](const AuxiliaryPattern& a) { return a.kind == kind; }));
}

bool PatternCatalog::operator==(const PatternCatalog& o) const {
  auto micro_eq = [](const MicroPattern& a, const MicroPattern& b) {
    return a.kind == b.kind && a.node == b.node && a.group == b.group;
  };
  auto conf_eq = [](const ConflictPattern& a, const ConflictPattern& b) {
    return a.conflict == b.conflict && a.source == b.source && a.target == b.target &&
           a.is_explicit == b.is_explicit && a.fake == b.fake &&
           a.self_conflict == b.self_conflict && a.source_edge == b.source_edge &&
           a.target_edge == b.target_edge;
  };
  auto der_eq = [](const DerivationPattern& a, const DerivationPattern& b) {
    return a.root == b.root && a.derivatives == b.derivatives;
  };
  auto rev_eq = [](const RevealPattern& a, const RevealPattern& b) {
    return a.source == b.source && a.target == b.target && a.edge == b.edge &&
           a.fake_conflicts == b.fake_conflicts;
  };
  auto apd_eq = [](const ActivePlotDevice& a, const ActivePlotDevice& b) {
    return a.node == b.node && a.incoming == b.incoming && a.outgoing == b.outgoing;
  };
  auto pp_eq = [](const PlotPoint& a, const PlotPoint& b) {
    return a.node == b.node && a.assoc == b.assoc && a.owner == b.owner;
  };
  auto pt_eq = [](const PlotTwist& a, const PlotTwist& b) {
    return a.node == b.node &&
           std::equal(a.links.begin(), a.links.end(), b.links.begin(), b.links.end(),
                      [](const TwistLink& x, const TwistLink& y) {
                        return x.assoc == y.assoc && x.owner == y.owner &&
                               x.position == y.position;
                      });
  };
  auto aux_eq = [](const AuxiliaryPattern& a, const AuxiliaryPattern& b) {
    return a.kind == b.kind && a.index == b.index;
  };
  auto eq = [](const auto& a, const auto& b, auto pred) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), pred);
  };
  return tropes == o.tropes && edge_count == o.edge_count && eq(micro, o.micro, micro_eq) &&
         eq(conflicts, o.conflicts, conf_eq) && eq(derivations, o.derivations, der_eq) &&
         eq(reveals, o.reveals, rev_eq) && eq(apds, o.apds, apd_eq) &&
         eq(plot_points, o.plot_points, pp_eq) && eq(plot_twists, o.plot_twists, pt_eq) &&
         eq(auxiliary, o.auxiliary, aux_eq);
}

std::vector<MicroPattern> detect_micro(const NarrativeGraph& g) {
  std::vector<MicroPattern> out;
  out.reserve(g.node_count());
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    const BaseType b = base_type(g.trope(i));
    MicroKind kind = MicroKind::Character;
    if (b == BaseType::Structure) kind = MicroKind::Structure;
    if (b == BaseType::PlotDevice) kind = MicroKind::PlotDevice;
    out.push_back(MicroPattern{kind, i, b});
  }
  return out;
}

std::vector<ConflictPattern> detect_conflicts(const NarrativeGraph& g) {
  std::vector<ConflictPattern> out;
  const auto edges = g.edges();
  struct Leg {
    NodeIndex node;
    std::size_t edge;
  };
  for (NodeIndex c = 0; c < g.node_count(); ++c) {
    if (!is_conflict_node(g, c)) continue;
    std::vector<Leg> sources;
    std::vector<Leg> targets;
    auto add = [&g](std::vector<Leg>& legs, NodeIndex n, std::size_t e) {
      if (!is_character(g.trope(n))) return;
      for (const Leg& l : legs) {
        if (l.node == n) return;
      }
      legs.push_back(Leg{n, e});
    };
    for (std::size_t e = 0; e < edges.size(); ++e) {
      NodeIndex other = 0;
      if (is_source_leg(edges[e], c, other)) add(sources, other, e);
      if (is_target_leg(edges[e], c, other)) add(targets, other, e);
    }
    std::sort(sources.begin(), sources.end(), [](const Leg& a, const Leg& b) { return a.node < b.node; });
    std::sort(targets.begin(), targets.end(), [](const Leg& a, const Leg& b) { return a.node < b.node; });
    for (const Leg& s : sources) {
      for (const Leg& t : targets) {
        const bool self = s.node == t.node;
        out.push_back(ConflictPattern{c, s.node, t.node, true, false, self, s.edge, t.edge});
        if (!self) {
          out.push_back(ConflictPattern{c, t.node, s.node, false, false, false, t.edge, s.edge});
        }
      }
    }
  }
  return out;
}

std::vector<DerivationPattern> detect_derivations(const NarrativeGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeIndex>> entails(n);
  std::vector<std::size_t> incoming(n, 0);
  for (const Edge& e : g.edges()) {
    if (e.kind != EdgeKind::Entail) continue;
    entails[e.source].push_back(e.target);
    ++incoming[e.target];
  }

  auto bfs = [&](NodeIndex root) {
    std::vector<bool> seen(n, false);
    std::vector<NodeIndex> order;
    std::deque<NodeIndex> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const NodeIndex u = queue.front();
      queue.pop_front();
      for (NodeIndex v : entails[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        order.push_back(v);
        queue.push_back(v);
      }
    }
    return order;
  };

  std::vector<DerivationPattern> out;
  std::vector<bool> covered(n, false);
  auto emit = [&](NodeIndex root) {
    DerivationPattern d{root, bfs(root)};
    covered[root] = true;
    for (NodeIndex v : d.derivatives) covered[v] = true;
    out.push_back(std::move(d));
  };

  for (NodeIndex i = 0; i < n; ++i) {
    if (incoming[i] == 0 && !entails[i].empty()) emit(i);
  }

  // Entailment cycles with no root: pick the smallest id among nodes in a
  // source component of what is left uncovered.
  for (;;) {
    std::vector<NodeIndex> candidates;
    for (NodeIndex i = 0; i < n; ++i) {
      if (!covered[i] && !entails[i].empty()) candidates.push_back(i);
    }
    if (candidates.empty()) break;
    std::vector<std::vector<bool>> reach(candidates.size(), std::vector<bool>(n, false));
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      for (NodeIndex v : bfs(candidates[k])) reach[k][v] = true;
    }
    std::optional<NodeIndex> best;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      bool upstream_exists = false;
      for (std::size_t j = 0; j < candidates.size() && !upstream_exists; ++j) {
        if (j != k && reach[j][candidates[k]] && !reach[k][candidates[j]]) upstream_exists = true;
      }
      if (upstream_exists) continue;
      if (!best || g.node(candidates[k]).id < g.node(*best).id) best = candidates[k];
    }
    emit(*best);
  }
  return out;
}

std::vector<RevealPattern> detect_reveals(const NarrativeGraph& g,
                                          std::vector<ConflictPattern>& conflicts) {
  std::vector<RevealPattern> out;
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    if (edge.kind != EdgeKind::Directed) continue;
    if (!is_character(g.trope(edge.source)) || !is_character(g.trope(edge.target))) continue;
    RevealPattern r{edge.source, edge.target, e, {}};
    for (std::size_t k = 0; k < conflicts.size(); ++k) {
      ConflictPattern& c = conflicts[k];
      if (!same_pair(c.source, c.target, r.source, r.target)) continue;
      c.fake = true;
      if (c.is_explicit) r.fake_conflicts.push_back(k);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ActivePlotDevice> detect_active_plot_devices(const NarrativeGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> in(n, 0);
  std::vector<std::size_t> out_deg(n, 0);
  for (const Edge& e : g.edges()) {
    ++out_deg[e.source];
    ++in[e.target];
    if (e.kind == EdgeKind::Bidirectional) {
      ++in[e.source];
      ++out_deg[e.target];
    }
  }
  std::vector<ActivePlotDevice> out;
  for (NodeIndex i = 0; i < n; ++i) {
    if (!is_plot_device(g.trope(i))) continue;
    if (in[i] >= 1 && out_deg[i] <= 1) out.push_back(ActivePlotDevice{i, in[i], out_deg[i]});
  }
  return out;
}

std::vector<PlotPoint> detect_plot_points(const PatternCatalog& partial) {
  std::vector<PlotPoint> out;
  std::vector<bool> seen(partial.node_count(), false);
  auto add = [&](NodeIndex node, PlotAssociation assoc, std::size_t owner) {
    if (seen[node]) return;
    seen[node] = true;
    out.push_back(PlotPoint{node, assoc, owner});
  };
  for (std::size_t d = 0; d < partial.derivations.size(); ++d) {
    for (NodeIndex v : partial.derivations[d].derivatives) add(v, PlotAssociation::Derivation, d);
  }
  for (std::size_t r = 0; r < partial.reveals.size(); ++r) {
    add(partial.reveals[r].source, PlotAssociation::Reveal, r);
  }
  for (std::size_t a = 0; a < partial.apds.size(); ++a) {
    add(partial.apds[a].node, PlotAssociation::ActivePlotDevice, a);
  }
  return out;
}

std::vector<PlotTwist> detect_plot_twists(const NarrativeGraph& g, const PatternCatalog& partial) {
  std::vector<PlotTwist> out;
  std::vector<std::size_t> slot(g.node_count(), SIZE_MAX);
  auto add = [&](NodeIndex node, TwistLink link) {
    if (slot[node] == SIZE_MAX) {
      slot[node] = out.size();
      out.push_back(PlotTwist{node, {}});
    }
    out[slot[node]].links.push_back(link);
  };

  for (std::size_t d = 0; d < partial.derivations.size(); ++d) {
    const DerivationPattern& der = partial.derivations[d];
    const BaseType root_base = base_type(g.trope(der.root));
    for (std::size_t p = 0; p < der.derivatives.size(); ++p) {
      const BaseType b = base_type(g.trope(der.derivatives[p]));
      if (b != root_base && b != BaseType::PlotDevice) {
        add(der.derivatives[p], TwistLink{PlotAssociation::Derivation, d, p + 1});
      }
    }
  }
  for (std::size_t r = 0; r < partial.reveals.size(); ++r) {
    add(partial.reveals[r].source, TwistLink{PlotAssociation::Reveal, r, 0});
  }
  std::vector<bool> is_apd(g.node_count(), false);
  for (const ActivePlotDevice& a : partial.apds) is_apd[a.node] = true;
  for (std::size_t a = 0; a < partial.apds.size(); ++a) {
    const NodeIndex node = partial.apds[a].node;
    const bool linked = std::any_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
      return (e.source == node && is_apd[e.target]) || (e.target == node && is_apd[e.source]);
    });
    if (linked) add(node, TwistLink{PlotAssociation::ActivePlotDevice, a, 0});
  }
  return out;
}

std::vector<AuxiliaryPattern> detect_auxiliary(const NarrativeGraph& g,
                                               const PatternCatalog& partial) {
  const auto edges = g.edges();
  std::vector<bool> in_meso(g.node_count(), false);
  std::vector<bool> consumed(edges.size(), false);

  for (const ConflictPattern& c : partial.conflicts) {
    in_meso[c.conflict] = in_meso[c.source] = in_meso[c.target] = true;
    if (!c.is_explicit) continue;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      NodeIndex other = 0;
      if (is_source_leg(edges[e], c.conflict, other) && other == c.source) consumed[e] = true;
      if (is_target_leg(edges[e], c.conflict, other) && other == c.target) consumed[e] = true;
    }
  }
  std::vector<bool> in_derivation(g.node_count(), false);
  for (const DerivationPattern& d : partial.derivations) {
    in_derivation[d.root] = true;
    for (NodeIndex v : d.derivatives) in_derivation[v] = true;
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].kind == EdgeKind::Entail && in_derivation[edges[e].source]) consumed[e] = true;
  }
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (in_derivation[i]) in_meso[i] = true;
  }
  for (const RevealPattern& r : partial.reveals) {
    in_meso[r.source] = in_meso[r.target] = true;
    consumed[r.edge] = true;
  }
  for (const ActivePlotDevice& a : partial.apds) {
    in_meso[a.node] = true;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].source == a.node || edges[e].target == a.node) consumed[e] = true;
    }
  }

  std::vector<AuxiliaryPattern> out;
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (!in_meso[i]) out.push_back(AuxiliaryPattern{AuxiliaryKind::Nothing, i});
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!consumed[e]) out.push_back(AuxiliaryPattern{AuxiliaryKind::BrokenLink, e});
  }
  return out;
}

PatternCatalog detect_all(const NarrativeGraph& g) {
  PatternCatalog cat;
  cat.tropes.reserve(g.node_count());
  for (const Node& n : g.nodes()) cat.tropes.push_back(n.trope);
  cat.edge_count = g.edge_count();

  cat.micro = detect_micro(g);
  cat.conflicts = detect_conflicts(g);
  cat.derivations = detect_derivations(g);
  cat.reveals = detect_reveals(g, cat.conflicts);
  cat.apds = detect_active_plot_devices(g);
  cat.plot_points = detect_plot_points(cat);
  cat.plot_twists = detect_plot_twists(g, cat);
  cat.auxiliary = detect_auxiliary(g, cat);
  return cat;
}

std::string describe(const NarrativeGraph& g, const PatternCatalog& cat) {
  std::ostringstream out;
  auto id = [&g](NodeIndex i) -> const std::string& { return g.node(i).id; };
  for (const MicroPattern& m : cat.micro) {
    const char* kind = m.kind == MicroKind::Structure   ? "SP"
                       : m.kind == MicroKind::Character ? "CP"
                                                        : "PDP";
    out << "micro " << kind << ' ' << id(m.node) << ' ' << symbol(g.trope(m.node));
    if (m.kind == MicroKind::Character) out << ' ' << name(m.group);
    out << '\n';
  }
  for (const ConflictPattern& c : cat.conflicts) {
    out << "conflict " << (c.is_explicit ? "explicit " : "implicit ") << id(c.source) << " -> "
        << id(c.conflict) << " -> " << id(c.target);
    if (c.self_conflict) out << " self";
    if (c.fake) out << " fake";
    out << '\n';
  }
  for (const DerivationPattern& d : cat.derivations) {
    out << "derivation " << id(d.root) << ':';
    for (NodeIndex v : d.derivatives) out << ' ' << id(v);
    out << '\n';
  }
  for (const RevealPattern& r : cat.reveals) {
    out << "reveal " << id(r.source) << " -> " << id(r.target)
        << " fakes=" << r.fake_conflicts.size() << '\n';
  }
  for (const ActivePlotDevice& a : cat.apds) {
    out << "apd " << id(a.node) << " in=" << a.incoming << " out=" << a.outgoing << '\n';
  }
  for (const PlotPoint& p : cat.plot_points) {
    out << "plot_point " << id(p.node) << ' ' << assoc_name(p.assoc) << '\n';
  }
  for (const PlotTwist& t : cat.plot_twists) {
    out << "plot_twist " << id(t.node);
    for (const TwistLink& l : t.links) out << ' ' << assoc_name(l.assoc);
    out << '\n';
  }
  for (const AuxiliaryPattern& a : cat.auxiliary) {
    if (a.kind == AuxiliaryKind::Nothing) {
      out << "nothing " << id(a.index) << '\n';
    } else {
      const Edge& e = g.edges()[a.index];
      out << "broken_link " << id(e.source) << ' ' << edge_operator(e.kind) << ' '
          << id(e.target) << '\n';
    }
  }
  return out.str();
}

}  // namespace tropetwist
