#pragma once

#include <string>
#include <vector>

#include "tropetwist/narrative_graph.hpp"

namespace tropetwist {

// Directory holding the bundled root graphs (zelda_oot.ng, zelda_lttp.ng,
// smb.ng).
std::string default_data_dir();

inline constexpr const char* kRootFiles[] = {"zelda_oot.ng", "zelda_lttp.ng", "smb.ng"};

// The three bundled root graphs in the order above. Throws when a file is
// missing or fails to parse.
std::vector<NarrativeGraph> load_examples(const std::string& dir = default_data_dir());

}  // namespace tropetwist
