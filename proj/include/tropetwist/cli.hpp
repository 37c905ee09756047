#pragma once

#include <ostream>

namespace tropetwist {

// Command-line entry point: validate | patterns | eval | distance | render |
// evolve. Returns 0 on success, 1 on parse/validation failures, 2 when
// `evolve` is given an infeasible root.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tropetwist
