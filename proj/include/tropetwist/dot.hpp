#pragma once

#include <string>

#include "tropetwist/narrative_graph.hpp"

namespace tropetwist {

// Graphviz rendering. Node shapes follow the base type (Hero box, Structure
// diamond, Villain hexagon, PlotDevice ellipse); bidirectional edges use
// dir=both and entailment edges a diamond head.
std::string to_dot(const NarrativeGraph& g);

}  // namespace tropetwist
