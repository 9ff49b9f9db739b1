#pragma once

#include <vector>

namespace smr::detail {

// Visits every subset of {0..n-1} with at most max_size elements, by size and
// then lexicographically. Stops early when visit returns true; returns whether
// it stopped.
template <typename Visit>
bool for_each_subset(int n, int max_size, Visit&& visit) {
  std::vector<int> chosen;
  for (int size = 0; size <= max_size && size <= n; ++size) {
    chosen.resize(size);
    for (int i = 0; i < size; ++i) chosen[i] = i;
    while (true) {
      if (visit(static_cast<const std::vector<int>&>(chosen))) return true;
      int i = size - 1;
      while (i >= 0 && chosen[i] == n - size + i) --i;
      if (i < 0) break;
      ++chosen[i];
      for (int j = i + 1; j < size; ++j) chosen[j] = chosen[j - 1] + 1;
    }
  }
  return false;
}

}  // namespace smr::detail
