#include "tropetwist/evaluation.hpp"

#include <map>

namespace tropetwist {

bool feasibility(const NarrativeGraph& g, const PatternCatalog& catalog) {
  if (weak_components(g).size() != 1) return false;
  std::map<NodeIndex, int> self_conflicts;
  for (const ConflictPattern& c : catalog.conflicts) {
    if (c.is_explicit && c.self_conflict && ++self_conflicts[c.conflict] > 1) return false;
  }
  return true;
}

Evaluator::Evaluator(NarrativeGraph root)
    : root_(std::move(root)), root_catalog_(detect_all(root_)) {}

Evaluation Evaluator::evaluate(const NarrativeGraph& g) const {
  const PatternCatalog catalog = detect_all(g);
  const QualityReport report = quality_report(catalog, root_catalog_);
  Evaluation e;
  e.feasible = feasibility(g, catalog);
  e.cohesion = report.cohesion;
  e.consistency = report.consistency;
  e.coherence = report.coherence;
  e.interestingness = report.interestingness;
  e.fitness = e.feasible ? report.coherence : infeasible_fitness(g, catalog);
  e.step = step_distance(g, root_);
  return e;
}

}  // namespace tropetwist
