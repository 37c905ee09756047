#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropetwist/evaluation.hpp"
#include "tropetwist/grammar.hpp"
#include "tropetwist/narrative_graph.hpp"

namespace tropetwist {

struct RunConfig {
  std::size_t generations = 500;
  std::size_t initial_population = 1000;
  std::size_t offspring_per_generation = 100;
  double mutation_probability = 0.5;
  double rule_add_remove_probability = kRuleAddRemoveProbability;
  std::size_t recipes_per_individual = kRecipesPerIndividual;
  int step_threshold = kStepThreshold;
  std::size_t interestingness_bins = 10;
  std::size_t cell_capacity = 25;
  std::uint64_t seed = 0;
  // Either crossover or mutation per offspring instead of crossover followed
  // by optional mutation.
  bool exclusive_variation = false;
  std::size_t threads = 1;
  std::string root_path;

  // Throws std::invalid_argument on out-of-range values.
  void check() const;
};

struct Individual {
  std::uint64_t id = 0;
  Genotype genotype;
  NarrativeGraph phenotype;
  Recipe recipe;
  Evaluation evaluation;

  bool feasible() const { return evaluation.feasible; }
  double fitness() const { return evaluation.fitness; }
};

struct CellIndex {
  std::size_t row = 0;
  std::size_t col = 0;
  bool operator==(const CellIndex&) const = default;
};

// row = step, col = min(bins - 1, floor(interestingness * bins)).
// Throws std::out_of_range for a step outside [0, threshold] or an
// interestingness outside [0, 1].
CellIndex cell_index(int step, double interestingness, std::size_t bins = 10,
                     int threshold = kStepThreshold);

struct Cell {
  std::vector<Individual> feasible;    // descending fitness
  std::vector<Individual> infeasible;  // descending fitness

  const Individual* elite() const { return feasible.empty() ? nullptr : &feasible.front(); }
  bool empty() const { return feasible.empty() && infeasible.empty(); }
};

struct InsertOutcome {
  CellIndex cell;
  bool survived = false;
  bool new_elite = false;
};

// Behavioral grid whose cells keep bounded feasible and infeasible
// sub-populations.
class EliteArchive {
 public:
  EliteArchive(std::size_t rows = kStepThreshold + 1, std::size_t cols = 10,
               std::size_t capacity = 25);

  InsertOutcome insert(Individual individual);
  // Drops any stored individual with the same id, then inserts the new one.
  InsertOutcome update(Individual individual);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t capacity() const { return capacity_; }
  const Cell& cell(std::size_t row, std::size_t col) const { return cells_.at(row * cols_ + col); }
  const Cell& cell(CellIndex c) const { return cell(c.row, c.col); }

  std::size_t feasible_count() const;
  std::size_t infeasible_count() const;
  std::size_t occupied_cells() const;

  // Every stored individual: cells row-major, feasible before infeasible.
  std::vector<const Individual*> all() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t capacity_;
  std::vector<Cell> cells_;
};

// Share of grid cells holding at least one feasible individual.
double coverage(const EliteArchive& archive);

struct MetricsRow {
  std::size_t generation = 0;
  double coverage = 0.0;
  double avg_fitness = 0.0;          // over cell elites
  double avg_interestingness = 0.0;  // over cell elites
  std::size_t feasible = 0;
  std::size_t infeasible = 0;
};

struct RunMetrics {
  std::vector<MetricsRow> rows;
  std::string to_csv() const;
};

MetricsRow snapshot(const EliteArchive& archive, std::size_t generation);

class InfeasibleRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunResult {
  EliteArchive archive;
  RunMetrics metrics;
};

using ProgressFn = std::function<void(const MetricsRow&)>;

// Constrained MAP-Elites from a feasible root graph. (root, config) fully
// determines the result, independent of config.threads.
RunResult evolve(const NarrativeGraph& root, const RunConfig& config,
                 const ProgressFn& progress = {});

}  // namespace tropetwist
