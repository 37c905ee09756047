#include "tropetwist/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tropetwist/archive_io.hpp"
#include "tropetwist/config.hpp"
#include "tropetwist/dot.hpp"
#include "tropetwist/dsl.hpp"
#include "tropetwist/evaluation.hpp"
#include "tropetwist/map_elites.hpp"
#include "tropetwist/metrics.hpp"
#include "tropetwist/patterns.hpp"

namespace tropetwist {

namespace {

namespace fs = std::filesystem;

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

int cmd_validate(const std::string& file, std::ostream& out) {
  const NarrativeGraph g = load_ng(file);
  const auto violations = validate(g);
  for (const std::string& v : violations) out << v << '\n';
  if (violations.empty()) out << "ok\n";
  return violations.empty() ? 0 : 1;
}

int cmd_patterns(const std::string& file, std::ostream& out) {
  const NarrativeGraph g = load_ng(file);
  out << describe(g, detect_all(g));
  return 0;
}

int cmd_eval(const std::string& file, const std::string& root_file, std::ostream& out) {
  const NarrativeGraph g = load_ng(file);
  const NarrativeGraph root = root_file.empty() ? g : load_ng(root_file);
  const Evaluator evaluator(root);
  const Evaluation e = evaluator.evaluate(g);
  out << "cohesion=" << fixed3(e.cohesion) << '\n'
      << "consistency=" << fixed3(e.consistency) << '\n'
      << "coherence=" << fixed3(e.coherence) << '\n'
      << "interestingness=" << fixed3(e.interestingness) << '\n'
      << "step=" << fixed3(static_cast<double>(e.step) / kStepThreshold) << '\n';
  return 0;
}

int cmd_distance(const std::string& a, const std::string& b, std::ostream& out) {
  out << step_distance(load_ng(a), load_ng(b)) << '\n';
  return 0;
}

int cmd_render(const std::string& file, const std::string& out_file, std::ostream& out) {
  const std::string dot = to_dot(load_ng(file));
  if (out_file.empty()) {
    out << dot;
  } else {
    write_file(out_file, dot);
  }
  return 0;
}

void emit_run(const fs::path& dir, const RunResult& result, const RunConfig& config) {
  fs::create_directories(dir / "elites");
  write_file(dir / "archive.json", archive_document(result.archive, config));
  write_file(dir / "metrics.csv", result.metrics.to_csv());
  const EliteArchive& archive = result.archive;
  for (std::size_t r = 0; r < archive.rows(); ++r) {
    const Individual* best = nullptr;
    for (std::size_t c = 0; c < archive.cols(); ++c) {
      const Individual* e = archive.cell(r, c).elite();
      if (e && (!best || e->fitness() > best->fitness())) best = e;
    }
    if (!best) continue;
    const std::string stem = "step_" + std::to_string(r);
    write_file(dir / "elites" / (stem + ".ng"), serialize_ng(best->phenotype));
    write_file(dir / "elites" / (stem + ".dot"), to_dot(best->phenotype));
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trope-based narrative graph analysis and generation"};
  app.require_subcommand(1);

  std::string file;
  std::string file_b;
  std::string root_file;
  std::string out_path;

  auto* validate_cmd = app.add_subcommand("validate", "Check a .ng file for structural violations");
  validate_cmd->add_option("file", file, "Narrative graph")->required();

  auto* patterns_cmd = app.add_subcommand("patterns", "List every detected pattern instance");
  patterns_cmd->add_option("file", file, "Narrative graph")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Print coherence and interestingness metrics");
  eval_cmd->add_option("file", file, "Narrative graph")->required();
  eval_cmd->add_option("--root", root_file, "Root graph (defaults to the file itself)");

  auto* distance_cmd = app.add_subcommand("distance", "Step distance between two graphs");
  distance_cmd->add_option("a", file, "First graph")->required();
  distance_cmd->add_option("b", file_b, "Second graph")->required();

  auto* render_cmd = app.add_subcommand("render", "Export a graph as Graphviz DOT");
  render_cmd->add_option("file", file, "Narrative graph")->required();
  render_cmd->add_option("--out", out_path, "Output .dot file (stdout when omitted)");

  RunConfig config;
  std::string config_file;
  std::size_t runs = 1;
  bool quiet = false;
  auto* evolve_cmd = app.add_subcommand("evolve", "Run Constrained MAP-Elites from a root graph");
  evolve_cmd->add_option("--root", root_file, "Root graph")->required();
  evolve_cmd->add_option("--config", config_file, "Config file of `key = value` lines");
  auto* seed_opt = evolve_cmd->add_option("--seed", config.seed, "Master seed");
  auto* gen_opt = evolve_cmd->add_option("--generations", config.generations, "Generations");
  auto* init_opt =
      evolve_cmd->add_option("--initial-population", config.initial_population, "Initial population");
  auto* off_opt = evolve_cmd->add_option("--offspring", config.offspring_per_generation,
                                         "Offspring per generation");
  auto* threads_opt = evolve_cmd->add_option("--threads", config.threads, "Worker threads");
  auto* excl_opt = evolve_cmd->add_flag("--exclusive-variation", config.exclusive_variation,
                                        "Crossover or mutation per pair, not both");
  evolve_cmd->add_option("--runs", runs, "Independent runs (seeds seed, seed+1, ...)");
  evolve_cmd->add_option("--out", out_path, "Output directory");
  evolve_cmd->add_flag("--quiet", quiet, "No progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(file, out);
    if (patterns_cmd->parsed()) return cmd_patterns(file, out);
    if (eval_cmd->parsed()) return cmd_eval(file, root_file, out);
    if (distance_cmd->parsed()) return cmd_distance(file, file_b, out);
    if (render_cmd->parsed()) return cmd_render(file, out_path, out);

    // Flags override the config file, which overrides defaults.
    RunConfig merged;
    if (!config_file.empty()) {
      apply_config_file(merged, config_file);
    } else if (fs::exists(kDefaultConfigFile)) {
      apply_config_file(merged, kDefaultConfigFile);
    }
    if (seed_opt->count()) merged.seed = config.seed;
    if (gen_opt->count()) merged.generations = config.generations;
    if (init_opt->count()) merged.initial_population = config.initial_population;
    if (off_opt->count()) merged.offspring_per_generation = config.offspring_per_generation;
    if (threads_opt->count()) merged.threads = config.threads;
    if (excl_opt->count()) merged.exclusive_variation = config.exclusive_variation;
    merged.root_path = root_file;

    const NarrativeGraph root = load_ng(root_file);
    const fs::path base = out_path.empty() ? fs::path("tropetwist_out") : fs::path(out_path);
    const std::uint64_t first_seed = merged.seed;
    for (std::size_t i = 0; i < std::max<std::size_t>(runs, 1); ++i) {
      RunConfig run_config = merged;
      run_config.seed = first_seed + i;
      ProgressFn progress;
      if (!quiet) {
        progress = [&err, i](const MetricsRow& row) {
          if (row.generation % 50 == 0) {
            err << "run " << i << " gen " << row.generation << " coverage=" << fixed3(row.coverage)
                << " fitness=" << fixed3(row.avg_fitness)
                << " interestingness=" << fixed3(row.avg_interestingness) << '\n';
          }
        };
      }
      const RunResult result = evolve(root, run_config, progress);
      const fs::path dir = base / ("run_" + std::to_string(i));
      emit_run(dir, result, run_config);
      const MetricsRow& last = result.metrics.rows.back();
      out << "run " << i << " seed=" << run_config.seed << " coverage=" << fixed3(last.coverage)
          << " avg_fitness=" << fixed3(last.avg_fitness)
          << " avg_interestingness=" << fixed3(last.avg_interestingness) << " out=" << dir.string()
          << '\n';
    }
    return 0;
  } catch (const InfeasibleRootError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace tropetwist
