#pragma once
// Command-line surface. run_cli parses argv (flags > environment > config
// file > defaults) and dispatches; run executes an already-resolved config.
// Exit codes: 0 success, 2 invalid input, 3 budget exceeded, 4 internal
// consistency failure.

#include "bll/borcherds.hpp"

#include <iosfwd>

namespace bll {

struct RunConfig {
  std::string command;  // table | qp | heegner | orbits | search | selftest
  std::optional<int> g;
  std::optional<QVec> v;          // chart coordinates
  std::string format = "json";    // json | markdown
  std::string cache_dir;          // empty: no cache file
  long long budget = EnumLimits{}.node_cap;
  int threads = 1;
  bool maximize = false;          // search objective; default minimizes
};

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace bll
