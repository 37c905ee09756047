#include "tropetwist/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tropetwist {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view v, const std::string& where) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument(where + ": invalid number '" + std::string(v) + "'");
  }
  return out;
}

double parse_double(std::string_view v, const std::string& where) {
  try {
    std::size_t used = 0;
    const std::string s(v);
    const double d = std::stod(s, &used);
    if (used == s.size()) return d;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(where + ": invalid number '" + std::string(v) + "'");
}

bool parse_bool(std::string_view v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument(where + ": invalid boolean '" + std::string(v) + "'");
}

}  // namespace

void apply_config_text(RunConfig& c, std::string_view text) {
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument(where + ": expected `key = value`");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "generations") {
      c.generations = parse_number<std::size_t>(value, where);
    } else if (key == "initial_population") {
      c.initial_population = parse_number<std::size_t>(value, where);
    } else if (key == "offspring_per_generation") {
      c.offspring_per_generation = parse_number<std::size_t>(value, where);
    } else if (key == "mutation_probability") {
      c.mutation_probability = parse_double(value, where);
    } else if (key == "rule_add_remove_probability") {
      c.rule_add_remove_probability = parse_double(value, where);
    } else if (key == "recipes_per_individual") {
      c.recipes_per_individual = parse_number<std::size_t>(value, where);
    } else if (key == "step_threshold") {
      c.step_threshold = parse_number<int>(value, where);
    } else if (key == "interestingness_bins") {
      c.interestingness_bins = parse_number<std::size_t>(value, where);
    } else if (key == "cell_capacity") {
      c.cell_capacity = parse_number<std::size_t>(value, where);
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(value, where);
    } else if (key == "exclusive_variation") {
      c.exclusive_variation = parse_bool(value, where);
    } else if (key == "threads") {
      c.threads = parse_number<std::size_t>(value, where);
    } else if (key == "root") {
      c.root_path = std::string(value);
    } else {
      throw std::invalid_argument(where + ": unknown key '" + std::string(key) + "'");
    }
  }
}

void apply_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    apply_config_text(c, buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace tropetwist
