#include "tropetwist/narrative_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace tropetwist {

std::string_view edge_operator(EdgeKind k) {
  switch (k) {
    case EdgeKind::Directed:
      return "->";
    case EdgeKind::Bidirectional:
      return "<->";
    case EdgeKind::Entail:
      return "|>";
  }
  return "?";
}

NarrativeGraph NarrativeGraph::from_parts(std::string name, std::vector<Node> nodes,
                                          std::vector<Edge> edges) {
  NarrativeGraph g(std::move(name));
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  return g;
}

std::optional<NodeIndex> NarrativeGraph::find(std::string_view id) const {
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  return std::nullopt;
}

NodeIndex NarrativeGraph::add_node(std::string id, Trope trope) {
  if (id.empty()) throw GraphError("empty node id");
  if (find(id)) throw GraphError("duplicate node id '" + id + "'");
  nodes_.push_back(Node{std::move(id), trope});
  return nodes_.size() - 1;
}

Edge NarrativeGraph::canonical(NodeIndex source, NodeIndex target, EdgeKind kind) const {
  if (kind == EdgeKind::Bidirectional && nodes_[target].id < nodes_[source].id) {
    std::swap(source, target);
  }
  return Edge{source, target, kind};
}

bool NarrativeGraph::has_edge(NodeIndex source, NodeIndex target, EdgeKind kind) const {
  if (source >= nodes_.size() || target >= nodes_.size()) return false;
  const Edge e = canonical(source, target, kind);
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

bool NarrativeGraph::try_add_edge(NodeIndex source, NodeIndex target, EdgeKind kind) {
  if (source >= nodes_.size() || target >= nodes_.size()) {
    throw GraphError("edge endpoint out of range");
  }
  if (source == target) return false;
  const Edge e = canonical(source, target, kind);
  if (std::find(edges_.begin(), edges_.end(), e) != edges_.end()) return false;
  edges_.push_back(e);
  return true;
}

void NarrativeGraph::add_edge(NodeIndex source, NodeIndex target, EdgeKind kind) {
  if (source >= nodes_.size() || target >= nodes_.size()) {
    throw GraphError("edge endpoint out of range");
  }
  const std::string label = nodes_[source].id + " " + std::string(edge_operator(kind)) +
                            " " + nodes_[target].id;
  if (source == target) throw GraphError("self-loop " + label);
  if (!try_add_edge(source, target, kind)) throw GraphError("duplicate edge " + label);
}

bool NarrativeGraph::remove_edge(NodeIndex source, NodeIndex target, EdgeKind kind) {
  if (source >= nodes_.size() || target >= nodes_.size()) return false;
  const Edge e = canonical(source, target, kind);
  auto it = std::find(edges_.begin(), edges_.end(), e);
  if (it == edges_.end()) return false;
  edges_.erase(it);
  return true;
}

void NarrativeGraph::remove_nodes(std::span<const NodeIndex> doomed) {
  if (doomed.empty()) return;
  std::vector<bool> drop(nodes_.size(), false);
  for (NodeIndex i : doomed) drop.at(i) = true;

  std::vector<NodeIndex> remap(nodes_.size(), 0);
  std::vector<Node> kept;
  kept.reserve(nodes_.size());
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    if (drop[i]) continue;
    remap[i] = kept.size();
    kept.push_back(std::move(nodes_[i]));
  }
  std::vector<Edge> kept_edges;
  kept_edges.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (drop[e.source] || drop[e.target]) continue;
    kept_edges.push_back(Edge{remap[e.source], remap[e.target], e.kind});
  }
  nodes_ = std::move(kept);
  edges_ = std::move(kept_edges);
}

std::vector<std::string> validate(const NarrativeGraph& g) {
  std::vector<std::string> out;
  const auto nodes = g.nodes();

  std::set<std::string_view> seen_ids;
  for (const Node& n : nodes) {
    if (n.id.empty()) out.push_back("node with empty id");
    if (!seen_ids.insert(n.id).second) out.push_back("duplicate node id '" + n.id + "'");
  }

  auto describe = [&](const Edge& e) {
    auto id = [&](NodeIndex i) {
      return i < nodes.size() ? nodes[i].id : "#" + std::to_string(i);
    };
    return id(e.source) + " " + std::string(edge_operator(e.kind)) + " " + id(e.target);
  };

  std::set<std::tuple<NodeIndex, NodeIndex, EdgeKind>> seen_edges;
  for (const Edge& e : g.edges()) {
    if (e.source >= nodes.size() || e.target >= nodes.size()) {
      out.push_back("dangling edge " + describe(e));
      continue;
    }
    if (e.source == e.target) {
      out.push_back("self-loop " + describe(e));
      continue;
    }
    NodeIndex a = e.source;
    NodeIndex b = e.target;
    if (e.kind == EdgeKind::Bidirectional) {
      if (nodes[b].id < nodes[a].id) {
        out.push_back("non-canonical bidirectional edge " + describe(e));
        std::swap(a, b);
      }
    }
    if (!seen_edges.emplace(a, b, e.kind).second) {
      out.push_back("duplicate edge " + describe(e));
    }
  }
  return out;
}

std::vector<std::vector<NodeIndex>> weak_components(const NarrativeGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<NodeIndex> parent(n);
  std::iota(parent.begin(), parent.end(), NodeIndex{0});
  auto root = [&](NodeIndex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : g.edges()) {
    if (e.source >= n || e.target >= n) continue;
    const NodeIndex a = root(e.source);
    const NodeIndex b = root(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<std::vector<NodeIndex>> components;
  std::vector<std::size_t> slot(n, n);
  for (NodeIndex i = 0; i < n; ++i) {
    const NodeIndex r = root(i);
    if (slot[r] == n) {
      slot[r] = components.size();
      components.emplace_back();
    }
    components[slot[r]].push_back(i);
  }
  return components;
}

}  // namespace tropetwist
