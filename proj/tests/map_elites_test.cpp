#include "doctest.h"
#include "support.hpp"
#include "tropetwist/archive_io.hpp"
#include "tropetwist/config.hpp"
#include "tropetwist/map_elites.hpp"
#include "tropetwist/roots.hpp"

using namespace tt_test;

namespace {

Individual dummy(std::uint64_t id, int step, double interest, double fitness, bool feasible) {
  Individual ind;
  ind.id = id;
  ind.evaluation.step = step;
  ind.evaluation.interestingness = interest;
  ind.evaluation.fitness = fitness;
  ind.evaluation.feasible = feasible;
  return ind;
}

const char* kChain = "graph g\nnode h1 HERO\nnode c1 CONF\nnode e1 ENEMY\nedge h1 -> c1\nedge c1 -> e1";

}  // namespace

TEST_CASE("cell index") {
  CHECK(cell_index(0, 0.0) == CellIndex{0, 0});
  CHECK(cell_index(11, 1.0) == CellIndex{11, 9});
  CHECK(cell_index(4, 0.55) == CellIndex{4, 5});
  CHECK_THROWS_AS(cell_index(12, 0.5), std::out_of_range);
  CHECK_THROWS_AS(cell_index(-1, 0.5), std::out_of_range);
  CHECK_THROWS_AS(cell_index(3, 1.5), std::out_of_range);
}

TEST_CASE("archive insertion") {
  EliteArchive archive;
  auto first = archive.insert(dummy(1, 2, 0.3, 0.5, true));
  CHECK(first.survived);
  CHECK(first.new_elite);
  CHECK(archive.cell(2, 3).elite()->id == 1);

  auto better = archive.insert(dummy(2, 2, 0.35, 0.9, true));
  CHECK(better.new_elite);
  CHECK(archive.cell(2, 3).elite()->id == 2);

  // Ties go after the incumbents.
  auto tie = archive.insert(dummy(3, 2, 0.31, 0.9, true));
  CHECK(tie.survived);
  CHECK_FALSE(tie.new_elite);
  CHECK(archive.cell(2, 3).feasible[1].id == 3);

  auto infeasible = archive.insert(dummy(4, 2, 0.3, 0.99, false));
  CHECK(infeasible.survived);
  CHECK_FALSE(infeasible.new_elite);
  CHECK(archive.cell(2, 3).elite()->id == 2);
  CHECK(archive.cell(2, 3).infeasible.size() == 1);

  EliteArchive full;
  for (int i = 0; i < 25; ++i) full.insert(dummy(100 + i, 0, 0.0, 0.5 + 0.01 * i, true));
  CHECK(full.cell(0, 0).feasible.size() == 25);
  CHECK_FALSE(full.insert(dummy(200, 0, 0.0, 0.1, true)).survived);
  CHECK(full.cell(0, 0).feasible.size() == 25);
  CHECK(full.insert(dummy(201, 0, 0.0, 0.6, true)).survived);
  CHECK(full.cell(0, 0).feasible.size() == 25);
  CHECK(full.cell(0, 0).feasible.back().fitness() > 0.5);
}

TEST_CASE("archive update migrates by id") {
  EliteArchive archive;
  archive.insert(dummy(7, 1, 0.1, 0.2, false));
  archive.update(dummy(7, 3, 0.8, 0.9, true));
  CHECK(archive.cell(1, 1).empty());
  CHECK(archive.cell(3, 8).elite()->id == 7);
  CHECK(archive.all().size() == 1);
}

TEST_CASE("coverage") {
  EliteArchive archive;
  CHECK(coverage(archive) == 0.0);
  archive.insert(dummy(1, 0, 0.0, 1.0, true));
  archive.insert(dummy(2, 0, 0.0, 1.0, false));
  archive.insert(dummy(3, 5, 0.5, 1.0, false));
  CHECK(coverage(archive) == doctest::Approx(1.0 / 120));
  for (int r = 0; r <= 11; ++r) {
    for (int c = 0; c < 10; ++c) archive.insert(dummy(10 + r * 10 + c, r, c / 10.0, 0.5, true));
  }
  CHECK(coverage(archive) == 1.0);
}

TEST_CASE("evolve basics") {
  RunConfig config;
  config.generations = 0;
  config.initial_population = 30;
  config.offspring_per_generation = 10;
  config.seed = 3;
  const auto root = ng(kChain);
  const auto zero = evolve(root, config);
  CHECK(zero.metrics.rows.size() == 1);
  CHECK(zero.archive.feasible_count() + zero.archive.infeasible_count() <= 30);

  config.generations = 5;
  const auto a = evolve(root, config);
  const auto b = evolve(root, config);
  CHECK(a.metrics.rows.size() == 6);
  CHECK(archive_document(a.archive, config) == archive_document(b.archive, config));
  CHECK(a.metrics.to_csv() == b.metrics.to_csv());

  RunConfig threaded = config;
  threaded.threads = 3;
  CHECK(archive_document(evolve(root, threaded).archive, config) == archive_document(a.archive, config));

  CHECK_THROWS_AS(evolve(ng("graph g\nnode a HERO\nnode b CONF"), config), InfeasibleRootError);
  RunConfig bad = config;
  bad.mutation_probability = 2.0;
  CHECK_THROWS_AS(evolve(root, bad), std::invalid_argument);
}

TEST_CASE("metrics csv") {
  RunMetrics m;
  m.rows.push_back(MetricsRow{0, 0.25, 0.5, 0.125, 3, 4});
  CHECK(m.to_csv() ==
        "generation,coverage,avg_fitness,avg_interestingness,feasible,infeasible\n"
        "0,0.250000,0.500000,0.125000,3,4\n");
}

TEST_CASE("genotype json round trip") {
  Rng rng = make_stream(31);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_genotype(rng);
    CHECK(genotype_from_json(genotype_to_json(g)) == g);
  }
}

TEST_CASE("config files") {
  RunConfig c;
  apply_config_text(c, "# run\ngenerations = 20\nseed=9\nmutation_probability = 0.25\n"
                       "exclusive_variation = true\nroot = data/x.ng\n");
  CHECK(c.generations == 20);
  CHECK(c.seed == 9);
  CHECK(c.mutation_probability == 0.25);
  CHECK(c.exclusive_variation);
  CHECK(c.root_path == "data/x.ng");
  CHECK(c.initial_population == 1000);
  CHECK_THROWS_AS(apply_config_text(c, "colour = red"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(c, "generations = lots"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(c, "generations"), std::invalid_argument);
}

TEST_CASE("bundled roots") {
  const auto roots = load_examples();
  REQUIRE(roots.size() == 3);
  for (const auto& r : roots) {
    const auto c = detect_all(r);
    CHECK(feasibility(r, c));
    CHECK(cohesion(c) == 1.0);
  }
  CHECK_FALSE(detect_all(roots[0]).reveals.empty());
  bool ends_at_mcg = false;
  for (const auto& d : detect_all(roots[1]).derivations) {
    for (NodeIndex v : d.derivatives) ends_at_mcg |= roots[1].trope(v) == Trope::MacGuffin;
  }
  CHECK(ends_at_mcg);
}
