#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smr {

// Simple undirected graph on vertices 0..n-1; edges stored (i<j), sorted.
class Graph {
 public:
  Graph() = default;
  // Throws InvalidArgument on loops, duplicates or out-of-range endpoints.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::vector<int> neighbors(int v) const;
  int degree(int v) const;
  bool adjacent(int u, int v) const;

  static Graph complete(int n);
  static Graph complete_bipartite(int a, int b);
  static Graph cycle(int n);

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

// Literals are non-zero integers: +v / -v for variable v (1-based).
struct CnfFormula {
  int variables = 0;
  std::vector<std::vector<int>> clauses;

  bool is_monotone_2cnf() const;
  bool is_22_e3sat() const;
  bool satisfied_by(const std::vector<bool>& assignment) const;  // assignment[v-1]
};

// "graph <n>" then "e i j" lines (1-based vertices); '#' comments.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

// "cnf <n> <m>" then one clause per line, literals as signed integers, an
// optional trailing 0; '#' and DIMACS 'c' comments.
CnfFormula parse_cnf(std::string_view text);
std::string serialize_cnf(const CnfFormula& f);

}  // namespace smr
