#include "max_flow.hpp"

#include <algorithm>
#include <queue>

namespace smr::detail {

void MaxFlow::add_arc(int from, int to, const Rational& capacity) {
  adjacency_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, capacity});
  adjacency_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, Rational(0)});
}

Rational MaxFlow::run(int source, int sink) {
  Rational total = 0;
  const int n = static_cast<int>(adjacency_.size());
  while (true) {
    std::vector<int> via(n, -1);
    std::vector<bool> seen(n, false);
    std::queue<int> frontier;
    frontier.push(source);
    seen[source] = true;
    while (!frontier.empty() && !seen[sink]) {
      int v = frontier.front();
      frontier.pop();
      for (int id : adjacency_[v]) {
        const Arc& arc = arcs_[id];
        if (seen[arc.to] || sgn(arc.residual) <= 0) continue;
        seen[arc.to] = true;
        via[arc.to] = id;
        frontier.push(arc.to);
      }
    }
    if (!seen[sink]) return total;
    Rational push = -1;
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      const Rational& r = arcs_[via[v]].residual;
      if (push < 0 || r < push) push = r;
    }
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].residual -= push;
      arcs_[via[v] ^ 1].residual += push;
    }
    total += push;
  }
}

std::vector<bool> MaxFlow::source_side(int source) const {
  std::vector<bool> seen(adjacency_.size(), false);
  std::vector<int> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int id : adjacency_[v]) {
      const Arc& arc = arcs_[id];
      if (!seen[arc.to] && sgn(arc.residual) > 0) {
        seen[arc.to] = true;
        stack.push_back(arc.to);
      }
    }
  }
  return seen;
}

}  // namespace smr::detail
