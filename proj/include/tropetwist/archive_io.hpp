#pragma once

#include <string>

#include "json.hpp"
#include "tropetwist/grammar.hpp"
#include "tropetwist/map_elites.hpp"

namespace tropetwist {

// Genotype records use the trope symbols plus ANY_HERO, ANY_VILLAIN, ANY_PLD
// and ANY for rule node labels, and the DSL operators for edge kinds.
nlohmann::json genotype_to_json(const Genotype& g);
Genotype genotype_from_json(const nlohmann::json& j);

nlohmann::json recipe_to_json(const Recipe& r);
nlohmann::json config_to_json(const RunConfig& c);

// Config echo plus one record per non-empty cell (coordinates, elite
// genotype, elite phenotype as `.ng` text, fitness and behavior values).
nlohmann::json archive_to_json(const EliteArchive& archive, const RunConfig& config);
std::string archive_document(const EliteArchive& archive, const RunConfig& config);

}  // namespace tropetwist
