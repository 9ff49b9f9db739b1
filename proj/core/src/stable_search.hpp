#pragma once

#include <cstddef>
#include <vector>

#include "smr/model.hpp"
#include "smr/sm_engine.hpp"

namespace smr::detail {

// Backtracking over agents in index order; partners tried in preference order,
// staying unmatched last. A branch dies as soon as a blocking edge appears
// among decided agents, or some decided agent's preferred neighbor can no
// longer be matched well enough to avoid blocking.
struct StableSearch {
  const Instance& inst;
  std::vector<char> allowed;  // per edge index
  std::vector<Agent> forced;  // per agent, kUnmatched when free

  explicit StableSearch(const Instance& instance);
  EnumerationResult run(std::size_t limit) const;
};

}  // namespace smr::detail
