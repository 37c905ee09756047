#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tropetwist/narrative_graph.hpp"

namespace tropetwist {

// SP, CP and PDP.
enum class MicroKind : std::uint8_t { Structure, Character, PlotDevice };

struct MicroPattern {
  MicroKind kind = MicroKind::Structure;
  NodeIndex node = 0;
  // Hero or Villain for character patterns, the node's base type otherwise.
  BaseType group = BaseType::Structure;
};

// source -> conflict -> target. Every explicit instance has an implicit
// mirror with the endpoints swapped, except self-conflicts (source == target)
// which are their own mirror and are stored once.
struct ConflictPattern {
  NodeIndex conflict = 0;
  NodeIndex source = 0;
  NodeIndex target = 0;
  bool is_explicit = true;
  bool fake = false;
  bool self_conflict = false;
  // Edge indices backing source->conflict and conflict->target.
  std::size_t source_edge = 0;
  std::size_t target_edge = 0;
};

struct DerivationPattern {
  NodeIndex root = 0;
  // Breadth-first over entailment edges, root excluded.
  std::vector<NodeIndex> derivatives;
};

struct RevealPattern {
  NodeIndex source = 0;
  NodeIndex target = 0;
  std::size_t edge = 0;
  // Indices into PatternCatalog::conflicts of the explicit conflicts this
  // reveal invalidates.
  std::vector<std::size_t> fake_conflicts;
};

struct ActivePlotDevice {
  NodeIndex node = 0;
  std::size_t incoming = 0;
  std::size_t outgoing = 0;
};

enum class PlotAssociation : std::uint8_t { Derivation, Reveal, ActivePlotDevice };

struct PlotPoint {
  NodeIndex node = 0;
  PlotAssociation assoc = PlotAssociation::Derivation;
  std::size_t owner = 0;  // index of the owning derivation / reveal / APD
};

struct TwistLink {
  PlotAssociation assoc = PlotAssociation::Derivation;
  std::size_t owner = 0;
  std::size_t position = 0;  // 1-based place among the derivatives
};

struct PlotTwist {
  NodeIndex node = 0;
  std::vector<TwistLink> links;
};

enum class AuxiliaryKind : std::uint8_t { Nothing, BrokenLink };

struct AuxiliaryPattern {
  AuxiliaryKind kind = AuxiliaryKind::Nothing;
  std::size_t index = 0;  // node index for Nothing, edge index for BrokenLink
};

// Every pattern instance of one graph. Carries the node tropes so metrics can
// be computed from catalogs alone.
struct PatternCatalog {
  std::vector<Trope> tropes;
  std::size_t edge_count = 0;

  std::vector<MicroPattern> micro;
  std::vector<ConflictPattern> conflicts;
  std::vector<DerivationPattern> derivations;
  std::vector<RevealPattern> reveals;
  std::vector<ActivePlotDevice> apds;
  std::vector<PlotPoint> plot_points;
  std::vector<PlotTwist> plot_twists;
  std::vector<AuxiliaryPattern> auxiliary;

  std::size_t node_count() const { return tropes.size(); }
  std::size_t explicit_conflicts() const;
  std::size_t implicit_conflicts() const;
  std::size_t fake_explicit_conflicts() const;
  std::size_t character_count() const;
  std::size_t total_instances() const;
  std::size_t count(AuxiliaryKind kind) const;

  bool operator==(const PatternCatalog&) const;
};

std::vector<MicroPattern> detect_micro(const NarrativeGraph& g);
std::vector<ConflictPattern> detect_conflicts(const NarrativeGraph& g);
std::vector<DerivationPattern> detect_derivations(const NarrativeGraph& g);
// Also flags the matching explicit conflicts (and their mirrors) as fake.
std::vector<RevealPattern> detect_reveals(const NarrativeGraph& g,
                                          std::vector<ConflictPattern>& conflicts);
std::vector<ActivePlotDevice> detect_active_plot_devices(const NarrativeGraph& g);
std::vector<PlotPoint> detect_plot_points(const PatternCatalog& partial);
std::vector<PlotTwist> detect_plot_twists(const NarrativeGraph& g, const PatternCatalog& partial);
std::vector<AuxiliaryPattern> detect_auxiliary(const NarrativeGraph& g,
                                               const PatternCatalog& partial);

PatternCatalog detect_all(const NarrativeGraph& g);

// One line per pattern instance.
std::string describe(const NarrativeGraph& g, const PatternCatalog& catalog);

}  // namespace tropetwist
