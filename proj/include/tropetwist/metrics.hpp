#pragma once

#include <cstddef>
#include <vector>

#include "tropetwist/narrative_graph.hpp"
#include "tropetwist/patterns.hpp"

namespace tropetwist {

// Steps farther than this are not distinguished.
inline constexpr int kStepThreshold = 11;

struct InterestWeights {
  double apd = 0.4;
  double plot_point = 0.2;
  double plot_twist = 0.4;
};

// Per-catalog counts shared by the quality terms. Built once per graph.
struct CatalogStats {
  explicit CatalogStats(const PatternCatalog& catalog);

  std::size_t nodes = 0;
  std::size_t structures = 0;
  std::size_t heroes = 0;
  std::size_t villains = 0;
  std::size_t plot_devices = 0;
  std::size_t characters = 0;
  std::size_t explicit_conflicts = 0;
  std::size_t fake_conflicts = 0;
  std::size_t all_derivatives = 0;
  std::vector<std::size_t> trope_counts;  // indexed by Trope
  std::vector<std::size_t> involvement;   // explicit conflicts touching each node

  std::size_t micro_group(const MicroPattern& m) const;
};

// 1 - |rg - eg| / max(rg, eg); 1 when both are zero.
double generic_quality(std::size_t rg_count, std::size_t eg_count);

// 1 for a trope that is unique in its base-type group, else the reciprocal of
// its occurrence count.
double repetition_quality(NodeIndex node, const PatternCatalog& eg);

// Share of explicit conflicts the node takes part in (as source, target, or
// for a conflict node as the routing node).
double involvement_quality(NodeIndex node, const PatternCatalog& eg);

double micro_quality(const MicroPattern& m, const PatternCatalog& eg, const PatternCatalog& rg);

// Meso-pattern qualities, addressed by index into the respective catalog list.
double conflict_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg);
double derivation_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg);
double reveal_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg);
double apd_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg);
double plot_point_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg);
double plot_twist_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg);

// Usability of an active plot device: min(1, (in + out) / (nodes / 2)).
double balance_gamma(const ActivePlotDevice& apd, std::size_t node_count);

double cohesion(const PatternCatalog& catalog);
double consistency(const PatternCatalog& eg, const PatternCatalog& rg);
double coherence(const PatternCatalog& eg, const PatternCatalog& rg);
double interestingness(const PatternCatalog& eg, const PatternCatalog& rg,
                       const InterestWeights& w = {});

// Typed multiset difference of node labels and (source trope, target trope,
// kind) edge descriptors, clamped to kStepThreshold.
int step_distance(const NarrativeGraph& a, const NarrativeGraph& b);

// Fitness for graphs failing the feasibility constraint: closeness to a single
// component and to at most one self-conflict per conflict node.
double infeasible_fitness(const NarrativeGraph& g, const PatternCatalog& catalog);

struct QualityReport {
  std::vector<double> micro;
  std::vector<double> conflicts;
  std::vector<double> derivations;
  std::vector<double> reveals;
  std::vector<double> apds;
  std::vector<double> plot_points;
  std::vector<double> plot_twists;
  double cohesion = 0.0;
  double consistency = 0.0;
  double coherence = 0.0;
  double interestingness = 0.0;
};

QualityReport quality_report(const PatternCatalog& eg, const PatternCatalog& rg,
                             const InterestWeights& w = {});

}  // namespace tropetwist
