#include "tropetwist/roots.hpp"

#include "tropetwist/dsl.hpp"

namespace tropetwist {

std::string default_data_dir() { return TROPETWIST_DATA_DIR; }

std::vector<NarrativeGraph> load_examples(const std::string& dir) {
  std::vector<NarrativeGraph> out;
  for (const char* file : kRootFiles) out.push_back(load_ng(dir + "/" + file));
  return out;
}

}  // namespace tropetwist
