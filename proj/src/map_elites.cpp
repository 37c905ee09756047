#include "tropetwist/map_elites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <tuple>

namespace tropetwist {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is handled
// by exactly one worker, so results written per index are order-independent.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&fn, t, threads, n] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
}

std::uint64_t make_id(std::size_t generation, std::size_t index) {
  return (static_cast<std::uint64_t>(generation) << 32) | static_cast<std::uint64_t>(index);
}

Individual develop(std::uint64_t id, Genotype genotype, const Evaluator& evaluator,
                   const RunConfig& config, Rng& rng) {
  Derivation d = derive_phenotype(genotype, evaluator, rng, config.recipes_per_individual);
  return Individual{id, std::move(genotype), std::move(d.phenotype), std::move(d.recipe),
                    d.evaluation};
}

// Inserts after every entry of equal or higher fitness; evicts past capacity.
std::pair<bool, std::size_t> insert_sorted(std::vector<Individual>& list, Individual ind,
                                           std::size_t capacity) {
  auto it = std::upper_bound(list.begin(), list.end(), ind.fitness(),
                             [](double f, const Individual& x) { return f > x.fitness(); });
  const auto pos = static_cast<std::size_t>(it - list.begin());
  if (pos >= capacity) return {false, pos};
  list.insert(it, std::move(ind));
  if (list.size() > capacity) list.pop_back();
  return {true, pos};
}

}  // namespace

void RunConfig::check() const {
  auto prob = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must be in [0,1]");
  };
  prob(mutation_probability, "mutation_probability");
  prob(rule_add_remove_probability, "rule_add_remove_probability");
  if (interestingness_bins < 1) throw std::invalid_argument("interestingness_bins must be >= 1");
  if (step_threshold < 0) throw std::invalid_argument("step_threshold must be >= 0");
  if (cell_capacity < 1) throw std::invalid_argument("cell_capacity must be >= 1");
  if (recipes_per_individual < 1) throw std::invalid_argument("recipes_per_individual must be >= 1");
}

CellIndex cell_index(int step, double interestingness, std::size_t bins, int threshold) {
  if (step < 0 || step > threshold) throw std::out_of_range("step outside [0, threshold]");
  if (!(interestingness >= 0.0 && interestingness <= 1.0)) {
    throw std::out_of_range("interestingness outside [0, 1]");
  }
  const auto col = static_cast<std::size_t>(std::floor(interestingness * static_cast<double>(bins)));
  return CellIndex{static_cast<std::size_t>(step), std::min(bins - 1, col)};
}

EliteArchive::EliteArchive(std::size_t rows, std::size_t cols, std::size_t capacity)
    : rows_(rows), cols_(cols), capacity_(capacity), cells_(rows * cols) {}

InsertOutcome EliteArchive::insert(Individual individual) {
  // Steps beyond a smaller configured threshold share the last row.
  const int last = static_cast<int>(rows_) - 1;
  const CellIndex at = cell_index(std::min(individual.evaluation.step, last),
                                  individual.evaluation.interestingness, cols_, last);
  Cell& c = cells_[at.row * cols_ + at.col];
  const bool feasible = individual.feasible();
  auto [survived, pos] =
      insert_sorted(feasible ? c.feasible : c.infeasible, std::move(individual), capacity_);
  return InsertOutcome{at, survived, survived && feasible && pos == 0};
}

InsertOutcome EliteArchive::update(Individual individual) {
  const std::uint64_t id = individual.id;
  for (Cell& c : cells_) {
    std::erase_if(c.feasible, [id](const Individual& x) { return x.id == id; });
    std::erase_if(c.infeasible, [id](const Individual& x) { return x.id == id; });
  }
  return insert(std::move(individual));
}

std::size_t EliteArchive::feasible_count() const {
  std::size_t n = 0;
  for (const Cell& c : cells_) n += c.feasible.size();
  return n;
}

std::size_t EliteArchive::infeasible_count() const {
  std::size_t n = 0;
  for (const Cell& c : cells_) n += c.infeasible.size();
  return n;
}

std::size_t EliteArchive::occupied_cells() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](const Cell& c) { return !c.feasible.empty(); }));
}

std::vector<const Individual*> EliteArchive::all() const {
  std::vector<const Individual*> out;
  for (const Cell& c : cells_) {
    for (const Individual& i : c.feasible) out.push_back(&i);
    for (const Individual& i : c.infeasible) out.push_back(&i);
  }
  return out;
}

double coverage(const EliteArchive& archive) {
  const std::size_t total = archive.rows() * archive.cols();
  return total == 0 ? 0.0 : static_cast<double>(archive.occupied_cells()) / static_cast<double>(total);
}

MetricsRow snapshot(const EliteArchive& archive, std::size_t generation) {
  MetricsRow row;
  row.generation = generation;
  row.coverage = coverage(archive);
  double fit = 0.0;
  double interest = 0.0;
  std::size_t elites = 0;
  for (std::size_t r = 0; r < archive.rows(); ++r) {
    for (std::size_t c = 0; c < archive.cols(); ++c) {
      const Individual* e = archive.cell(r, c).elite();
      if (!e) continue;
      fit += e->fitness();
      interest += e->evaluation.interestingness;
      ++elites;
    }
  }
  if (elites > 0) {
    row.avg_fitness = fit / static_cast<double>(elites);
    row.avg_interestingness = interest / static_cast<double>(elites);
  }
  row.feasible = archive.feasible_count();
  row.infeasible = archive.infeasible_count();
  return row;
}

std::string RunMetrics::to_csv() const {
  std::ostringstream out;
  out << "generation,coverage,avg_fitness,avg_interestingness,feasible,infeasible\n";
  out.precision(6);
  out << std::fixed;
  for (const MetricsRow& r : rows) {
    out << r.generation << ',' << r.coverage << ',' << r.avg_fitness << ','
        << r.avg_interestingness << ',' << r.feasible << ',' << r.infeasible << '\n';
  }
  return out.str();
}

RunResult evolve(const NarrativeGraph& root, const RunConfig& config, const ProgressFn& progress) {
  config.check();
  const Evaluator evaluator(root);
  if (!feasibility(evaluator.root(), evaluator.root_catalog())) {
    throw InfeasibleRootError("root graph '" + root.name() + "' is infeasible");
  }

  RunResult result{EliteArchive(static_cast<std::size_t>(config.step_threshold) + 1,
                                config.interestingness_bins, config.cell_capacity),
                   {}};
  EliteArchive& archive = result.archive;
  auto record = [&](std::size_t generation) {
    result.metrics.rows.push_back(snapshot(archive, generation));
    if (progress) progress(result.metrics.rows.back());
  };

  {
    std::vector<Individual> seeds(config.initial_population);
    parallel_for(seeds.size(), config.threads, [&](std::size_t i) {
      Rng rng = make_stream(config.seed, 0, i);
      Genotype g = random_genotype(rng);
      seeds[i] = develop(make_id(0, i), std::move(g), evaluator, config, rng);
    });
    for (Individual& ind : seeds) archive.insert(std::move(ind));
  }
  record(0);

  const std::size_t pairs = (config.offspring_per_generation + 1) / 2;
  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    const std::vector<const Individual*> pool = archive.all();
    std::vector<Genotype> parents;
    parents.reserve(2 * pairs);
    Rng select = make_stream(config.seed, gen, 0);
    for (std::size_t k = 0; k < 2 * pairs; ++k) {
      if (pool.empty()) {
        parents.push_back(random_genotype(select));
      } else {
        parents.push_back(pool[uniform_index(select, pool.size())]->genotype);
      }
    }

    std::vector<Individual> offspring(2 * pairs);
    parallel_for(pairs, config.threads, [&](std::size_t p) {
      Rng rng = make_stream(config.seed, gen, p + 1);
      const Genotype& a = parents[2 * p];
      const Genotype& b = parents[2 * p + 1];
      Genotype c1;
      Genotype c2;
      if (config.exclusive_variation && bernoulli(rng, config.mutation_probability)) {
        c1 = mutate(a, rng, nullptr, config.rule_add_remove_probability);
        c2 = mutate(b, rng, nullptr, config.rule_add_remove_probability);
      } else {
        std::tie(c1, c2) = crossover(a, b, rng);
        if (!config.exclusive_variation) {
          if (bernoulli(rng, config.mutation_probability)) {
            c1 = mutate(c1, rng, nullptr, config.rule_add_remove_probability);
          }
          if (bernoulli(rng, config.mutation_probability)) {
            c2 = mutate(c2, rng, nullptr, config.rule_add_remove_probability);
          }
        }
      }
      offspring[2 * p] = develop(make_id(gen, 2 * p), std::move(c1), evaluator, config, rng);
      if (2 * p + 1 < config.offspring_per_generation) {
        offspring[2 * p + 1] =
            develop(make_id(gen, 2 * p + 1), std::move(c2), evaluator, config, rng);
      }
    });
    offspring.resize(config.offspring_per_generation);
    for (Individual& ind : offspring) archive.insert(std::move(ind));
    record(gen);
  }
  return result;
}

}  // namespace tropetwist
