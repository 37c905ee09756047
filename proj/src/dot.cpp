#include "tropetwist/dot.hpp"

#include <cctype>
#include <sstream>

namespace tropetwist {

namespace {

std::string_view shape(BaseType b) {
  switch (b) {
    case BaseType::Hero:
      return "box";
    case BaseType::Structure:
      return "diamond";
    case BaseType::Villain:
      return "hexagon";
    case BaseType::PlotDevice:
      return "ellipse";
  }
  return "ellipse";
}

// DOT ids may not start with a digit unless they are numerals.
std::string dot_id(const std::string& id) {
  if (!id.empty() && std::isdigit(static_cast<unsigned char>(id.front()))) {
    return "\"" + id + "\"";
  }
  return id;
}

}  // namespace

std::string to_dot(const NarrativeGraph& g) {
  std::ostringstream out;
  out << "digraph " << dot_id(g.name().empty() ? std::string("ng") : g.name()) << " {\n";
  for (const Node& n : g.nodes()) {
    out << "  " << dot_id(n.id) << " [label=\"" << symbol(n.trope)
        << "\" shape=" << shape(base_type(n.trope)) << "];\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  " << dot_id(g.node(e.source).id) << " -> " << dot_id(g.node(e.target).id);
    switch (e.kind) {
      case EdgeKind::Directed:
        break;
      case EdgeKind::Bidirectional:
        out << " [dir=both]";
        break;
      case EdgeKind::Entail:
        out << " [arrowhead=diamond]";
        break;
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tropetwist
