#include "tropetwist/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <tuple>

namespace tropetwist {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

template <typename... Terms>
double mean_of(Terms... terms) {
  const double sum = (clamp01(terms) + ...);
  return clamp01(sum / static_cast<double>(sizeof...(Terms)));
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Evaluates every quality of one graph relative to a root.
class Scorer {
 public:
  Scorer(const PatternCatalog& eg, const PatternCatalog& rg)
      : eg_(eg), rg_(rg), es_(eg), rs_(rg) {}

  double repetition(NodeIndex node) const {
    const std::size_t n = es_.trope_counts[static_cast<std::size_t>(eg_.tropes[node])];
    return n <= 1 ? 1.0 : 1.0 / static_cast<double>(n);
  }

  double involvement(NodeIndex node) const {
    return ratio(es_.involvement[node], es_.explicit_conflicts);
  }

  double micro(const MicroPattern& m) const {
    const double g = generic_quality(rs_.micro_group(m), es_.micro_group(m));
    switch (m.kind) {
      case MicroKind::Structure:
        return mean_of(g, involvement(m.node));
      case MicroKind::Character:
        return mean_of(g, repetition(m.node), involvement(m.node));
      case MicroKind::PlotDevice:
        return mean_of(g, repetition(m.node));
    }
    return 0.0;
  }

  double conflict(std::size_t i) const {
    const ConflictPattern& c = eg_.conflicts[i];
    std::size_t sharing = 0;
    for (const ConflictPattern& o : eg_.conflicts) {
      if (!o.is_explicit) continue;
      if ((o.source == c.source && o.target == c.target) ||
          (o.source == c.target && o.target == c.source)) {
        ++sharing;
      }
    }
    const double r = sharing <= 1 ? 1.0 : 1.0 / static_cast<double>(sharing);
    return mean_of(generic_quality(rg_.conflicts.size(), eg_.conflicts.size()), r);
  }

  double derivation(std::size_t i) const {
    const DerivationPattern& d = eg_.derivations[i];
    const BaseType root = base_type(eg_.tropes[d.root]);
    std::size_t diverse = 0;
    for (NodeIndex v : d.derivatives) {
      if (base_type(eg_.tropes[v]) != root) ++diverse;
    }
    return mean_of(generic_quality(rg_.derivations.size(), eg_.derivations.size()),
                   ratio(d.derivatives.size(), es_.all_derivatives),
                   ratio(diverse, d.derivatives.size()));
  }

  double reveal_fake_share(std::size_t i) const {
    return ratio(eg_.reveals[i].fake_conflicts.size(), es_.explicit_conflicts);
  }

  double reveal(std::size_t i) const {
    const double conflict_term =
        es_.explicit_conflicts == 0 ? 1.0 : 1.0 - reveal_fake_share(i);
    return mean_of(generic_quality(rg_.reveals.size(), eg_.reveals.size()),
                   ratio(eg_.reveals.size(), es_.characters), conflict_term);
  }

  double apd(std::size_t i) const {
    return mean_of(generic_quality(rg_.apds.size(), eg_.apds.size()),
                   balance_gamma(eg_.apds[i], es_.nodes));
  }

  double plot_point(std::size_t) const {
    const double share = ratio(eg_.plot_points.size(), es_.nodes);
    const double balance = 1.0 - std::abs(share - 0.5) * 2.0;
    return mean_of(generic_quality(rg_.plot_points.size(), eg_.plot_points.size()), balance);
  }

  double twist_involvement(const TwistLink& l) const {
    switch (l.assoc) {
      case PlotAssociation::Reveal:
        return reveal_fake_share(l.owner);
      case PlotAssociation::Derivation:
        return ratio(l.position, eg_.derivations[l.owner].derivatives.size());
      case PlotAssociation::ActivePlotDevice:
        return balance_gamma(eg_.apds[l.owner], es_.nodes);
    }
    return 0.0;
  }

  double plot_twist(std::size_t i) const {
    double involvement = 0.0;
    for (const TwistLink& l : eg_.plot_twists[i].links) {
      involvement = std::max(involvement, twist_involvement(l));
    }
    return mean_of(generic_quality(rg_.plot_twists.size(), eg_.plot_twists.size()), involvement,
                   ratio(eg_.plot_twists.size(), eg_.plot_points.size()));
  }

  double consistency() const {
    double sum = 0.0;
    for (const MicroPattern& m : eg_.micro) sum += micro(m);
    const double micro_mean =
        eg_.micro.empty() ? 0.0 : sum / static_cast<double>(eg_.micro.size());
    return clamp01(micro_mean - ratio(es_.fake_conflicts, es_.explicit_conflicts));
  }

  const PatternCatalog& eg() const { return eg_; }

 private:
  const PatternCatalog& eg_;
  const PatternCatalog& rg_;
  CatalogStats es_;
  CatalogStats rs_;
};

template <typename F>
std::vector<double> each(std::size_t n, F&& f) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  return out;
}

}  // namespace

CatalogStats::CatalogStats(const PatternCatalog& c)
    : nodes(c.node_count()), trope_counts(kTropeCount, 0), involvement(c.node_count(), 0) {
  for (Trope t : c.tropes) {
    ++trope_counts[static_cast<std::size_t>(t)];
    switch (base_type(t)) {
      case BaseType::Structure:
        ++structures;
        break;
      case BaseType::Hero:
        ++heroes;
        break;
      case BaseType::Villain:
        ++villains;
        break;
      case BaseType::PlotDevice:
        ++plot_devices;
        break;
    }
  }
  characters = heroes + villains;
  for (const ConflictPattern& cp : c.conflicts) {
    if (!cp.is_explicit) continue;
    ++explicit_conflicts;
    if (cp.fake) ++fake_conflicts;
    ++involvement[cp.conflict];
    ++involvement[cp.source];
    if (cp.target != cp.source) ++involvement[cp.target];
  }
  for (const DerivationPattern& d : c.derivations) all_derivatives += d.derivatives.size();
}

std::size_t CatalogStats::micro_group(const MicroPattern& m) const {
  switch (m.kind) {
    case MicroKind::Structure:
      return structures;
    case MicroKind::PlotDevice:
      return plot_devices;
    case MicroKind::Character:
      return m.group == BaseType::Hero ? heroes : villains;
  }
  return 0;
}

double generic_quality(std::size_t rg_count, std::size_t eg_count) {
  if (rg_count == 0 && eg_count == 0) return 1.0;
  const double diff = rg_count > eg_count ? double(rg_count - eg_count) : double(eg_count - rg_count);
  return 1.0 - diff / static_cast<double>(std::max(rg_count, eg_count));
}

double repetition_quality(NodeIndex node, const PatternCatalog& eg) {
  return Scorer(eg, eg).repetition(node);
}

double involvement_quality(NodeIndex node, const PatternCatalog& eg) {
  return Scorer(eg, eg).involvement(node);
}

double micro_quality(const MicroPattern& m, const PatternCatalog& eg, const PatternCatalog& rg) {
  return Scorer(eg, rg).micro(m);
}

double conflict_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg) {
  return Scorer(eg, rg).conflict(i);
}

double derivation_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg) {
  return Scorer(eg, rg).derivation(i);
}

double reveal_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg) {
  return Scorer(eg, rg).reveal(i);
}

double apd_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg) {
  return Scorer(eg, rg).apd(i);
}

double plot_point_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg) {
  return Scorer(eg, rg).plot_point(i);
}

double plot_twist_quality(std::size_t i, const PatternCatalog& eg, const PatternCatalog& rg) {
  return Scorer(eg, rg).plot_twist(i);
}

double balance_gamma(const ActivePlotDevice& apd, std::size_t node_count) {
  if (node_count == 0) return 0.0;
  const double half = static_cast<double>(node_count) / 2.0;
  return std::min(1.0, static_cast<double>(apd.incoming + apd.outgoing) / half);
}

double cohesion(const PatternCatalog& catalog) {
  if (catalog.auxiliary.empty()) return 1.0;
  return clamp01(1.0 - ratio(catalog.auxiliary.size(), catalog.total_instances()));
}

double consistency(const PatternCatalog& eg, const PatternCatalog& rg) {
  return Scorer(eg, rg).consistency();
}

double coherence(const PatternCatalog& eg, const PatternCatalog& rg) {
  return (consistency(eg, rg) + cohesion(eg)) / 2.0;
}

double interestingness(const PatternCatalog& eg, const PatternCatalog& rg, const InterestWeights& w) {
  return quality_report(eg, rg, w).interestingness;
}

QualityReport quality_report(const PatternCatalog& eg, const PatternCatalog& rg,
                             const InterestWeights& w) {
  const Scorer s(eg, rg);
  QualityReport r;
  r.micro = each(eg.micro.size(), [&](std::size_t i) { return s.micro(eg.micro[i]); });
  r.conflicts = each(eg.conflicts.size(), [&](std::size_t i) { return s.conflict(i); });
  r.derivations = each(eg.derivations.size(), [&](std::size_t i) { return s.derivation(i); });
  r.reveals = each(eg.reveals.size(), [&](std::size_t i) { return s.reveal(i); });
  r.apds = each(eg.apds.size(), [&](std::size_t i) { return s.apd(i); });
  r.plot_points = each(eg.plot_points.size(), [&](std::size_t i) { return s.plot_point(i); });
  r.plot_twists = each(eg.plot_twists.size(), [&](std::size_t i) { return s.plot_twist(i); });

  r.cohesion = cohesion(eg);
  r.consistency = s.consistency();
  r.coherence = (r.consistency + r.cohesion) / 2.0;
  r.interestingness = clamp01(w.apd * mean(r.apds) + w.plot_point * mean(r.plot_points) +
                              w.plot_twist * mean(r.plot_twists));
  return r;
}

int step_distance(const NarrativeGraph& a, const NarrativeGraph& b) {
  std::array<long, kTropeCount> labels{};
  for (const Node& n : a.nodes()) ++labels[static_cast<std::size_t>(n.trope)];
  for (const Node& n : b.nodes()) --labels[static_cast<std::size_t>(n.trope)];
  long distance = 0;
  for (long c : labels) distance += std::labs(c);

  using Descriptor = std::tuple<Trope, Trope, EdgeKind>;
  std::map<Descriptor, long> edges;
  auto tally = [&edges](const NarrativeGraph& g, long sign) {
    for (const Edge& e : g.edges()) {
      Trope s = g.trope(e.source);
      Trope t = g.trope(e.target);
      if (e.kind == EdgeKind::Bidirectional && t < s) std::swap(s, t);
      edges[{s, t, e.kind}] += sign;
    }
  };
  tally(a, 1);
  tally(b, -1);
  for (const auto& [descriptor, c] : edges) distance += std::labs(c);

  return static_cast<int>(std::min<long>(distance, kStepThreshold));
}

double infeasible_fitness(const NarrativeGraph& g, const PatternCatalog& catalog) {
  if (g.node_count() == 0) return 0.0;
  std::size_t largest = 0;
  for (const auto& comp : weak_components(g)) largest = std::max(largest, comp.size());

  std::map<NodeIndex, std::size_t> per_conflict;
  for (const ConflictPattern& c : catalog.conflicts) {
    if (c.is_explicit && c.self_conflict) ++per_conflict[c.conflict];
  }
  std::size_t total = 0;
  std::size_t excess = 0;
  for (const auto& [node, count] : per_conflict) {
    total += count;
    excess += count - 1;
  }
  const double self_term = total == 0 ? 1.0 : 1.0 - ratio(excess, total);
  return 0.5 * ratio(largest, g.node_count()) + 0.5 * self_term;
}

}  // namespace tropetwist
