#pragma once

#include <vector>

#include "smr/rational.hpp"

namespace smr::detail {

// Edmonds-Karp on exact rational capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adjacency_(nodes) {}

  void add_arc(int from, int to, const Rational& capacity);
  Rational run(int source, int sink);
  // Nodes reachable from the source in the final residual graph.
  std::vector<bool> source_side(int source) const;

 private:
  struct Arc {
    int to;
    Rational residual;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adjacency_;
};

}  // namespace smr::detail
