#pragma once

#include "tropetwist/metrics.hpp"
#include "tropetwist/narrative_graph.hpp"
#include "tropetwist/patterns.hpp"

namespace tropetwist {

// Feasible iff the graph is one weakly connected component and no conflict
// node routes more than one self-conflict.
bool feasibility(const NarrativeGraph& g, const PatternCatalog& catalog);

struct Evaluation {
  bool feasible = false;
  // Coherence when feasible, infeasible_fitness otherwise.
  double fitness = 0.0;
  double cohesion = 0.0;
  double consistency = 0.0;
  double coherence = 0.0;
  double interestingness = 0.0;
  int step = 0;
};

// Scores graphs relative to a fixed root graph.
class Evaluator {
 public:
  explicit Evaluator(NarrativeGraph root);

  const NarrativeGraph& root() const { return root_; }
  const PatternCatalog& root_catalog() const { return root_catalog_; }

  Evaluation evaluate(const NarrativeGraph& g) const;

 private:
  NarrativeGraph root_;
  PatternCatalog root_catalog_;
};

}  // namespace tropetwist
