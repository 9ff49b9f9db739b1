#pragma once

#include <cstdint>
#include <optional>

#include "smr/model.hpp"
#include "smr/io.hpp"
#include "smr/source.hpp"

namespace smr {

struct GenSpec {
  InstanceKind kind = InstanceKind::marriage;
  int n = 4;  // agents per side (marriage) or in total (roommates)
  double density = 1.0;
  int p_count = 0;
  int q_count = 0;
  std::uint64_t seed = 0;
  std::optional<int> degree_cap;
};

// Erdos-Renyi graph over the allowed pairs, lists shuffled independently per
// agent, then P and Q sampled without replacement (P first). With a degree
// cap, candidate pairs are visited in random order and kept only while both
// endpoints are under the cap. Throws InvalidArgument on an infeasible spec.
ParsedInstance gen_random(const GenSpec& spec);

Graph random_graph(int n, double density, std::uint64_t seed);
// Monotone 2-CNF on `variables` variables with `clauses` distinct clauses.
CnfFormula random_monotone_2cnf(int variables, int clauses, std::uint64_t seed);
// Random (2,2)-E3-SAT formula; variables must be a multiple of 3.
CnfFormula random_e3sat22(int variables, std::uint64_t seed);
// Random bipartite graph with 3t degree-2 vertices and 2t degree-3 vertices.
Graph random_biregular_23(int t, std::uint64_t seed);

}  // namespace smr
