#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tropetwist/trope.hpp"

namespace tropetwist {

// Directed: a -> b. Bidirectional: a <-> b. Entail: a entails b (a is stored
// as the source).
enum class EdgeKind : std::uint8_t { Directed, Bidirectional, Entail };

inline constexpr std::array<EdgeKind, 3> kAllEdgeKinds = {
    EdgeKind::Directed, EdgeKind::Bidirectional, EdgeKind::Entail};

std::string_view edge_operator(EdgeKind k);

using NodeIndex = std::size_t;

struct Node {
  std::string id;
  Trope trope = Trope::Hero;

  bool operator==(const Node&) const = default;
};

struct Edge {
  NodeIndex source = 0;
  NodeIndex target = 0;
  EdgeKind kind = EdgeKind::Directed;

  bool operator==(const Edge&) const = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Labeled directed multigraph of trope nodes. At most one edge per
// (source, target, kind); bidirectional edges are stored with the
// lexicographically smaller node id as source. Self-loops are rejected.
class NarrativeGraph {
 public:
  NarrativeGraph() = default;
  explicit NarrativeGraph(std::string name) : name_(std::move(name)) {}

  // Builds a graph without checking invariants. Used to describe malformed
  // input for validate().
  static NarrativeGraph from_parts(std::string name, std::vector<Node> nodes,
                                   std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  const Node& node(NodeIndex i) const { return nodes_.at(i); }
  Trope trope(NodeIndex i) const { return nodes_[i].trope; }
  std::optional<NodeIndex> find(std::string_view id) const;

  NodeIndex add_node(std::string id, Trope trope);
  void add_edge(NodeIndex source, NodeIndex target, EdgeKind kind);
  // Returns false instead of throwing when the edge is a duplicate or a
  // self-loop.
  bool try_add_edge(NodeIndex source, NodeIndex target, EdgeKind kind);
  bool has_edge(NodeIndex source, NodeIndex target, EdgeKind kind) const;
  bool remove_edge(NodeIndex source, NodeIndex target, EdgeKind kind);

  void set_trope(NodeIndex i, Trope trope) { nodes_.at(i).trope = trope; }

  // Removes the given nodes and every incident edge. Remaining nodes keep
  // their relative order.
  void remove_nodes(std::span<const NodeIndex> doomed);

  bool operator==(const NarrativeGraph&) const = default;

 private:
  Edge canonical(NodeIndex source, NodeIndex target, EdgeKind kind) const;

  std::string name_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

// Empty iff every graph invariant holds. Each entry names the offending
// node or edge.
std::vector<std::string> validate(const NarrativeGraph& g);

// Weakly connected components, all edge kinds treated as undirected.
// Components are ordered by their first node; members keep node order.
std::vector<std::vector<NodeIndex>> weak_components(const NarrativeGraph& g);

}  // namespace tropetwist
