#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smr/smr.hpp"

namespace smr::testing {

inline ParsedInstance fig1() { return read_instance_file(std::string(SMR_TEST_DATA) + "/fig1.txt"); }

inline Edge edge(const Instance& inst, const char* a, const char* b) { return parse_edge(inst, a, b); }

inline Matching matching(const Instance& inst, std::vector<std::pair<const char*, const char*>> pairs) {
  Matching m(inst.size());
  for (auto [a, b] : pairs) m.add(parse_edge(inst, a, b));
  return m;
}

inline ParsedInstance random_sm(int n, std::uint64_t seed, double density = 0.6, int p = 0, int q = 0) {
  GenSpec spec;
  spec.kind = InstanceKind::marriage;
  spec.n = n;
  spec.density = density;
  spec.seed = seed;
  spec.p_count = p;
  spec.q_count = q;
  return gen_random(spec);
}

inline ParsedInstance random_sr(int n, std::uint64_t seed, double density = 0.5, int p = 0, int q = 0) {
  GenSpec spec;
  spec.kind = InstanceKind::roommates;
  spec.n = n;
  spec.density = density;
  spec.seed = seed;
  spec.p_count = p;
  spec.q_count = q;
  return gen_random(spec);
}

// Restriction counts clipped to what the generated graph can hold: draws the
// graph first, then samples the restricted edges from it.
inline ParsedInstance with_restrictions(ParsedInstance base, int p, int q, std::uint64_t seed) {
  std::vector<Edge> edges = base.instance.edges();
  std::uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  for (std::size_t i = edges.size(); i > 1; --i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    std::swap(edges[i - 1], edges[(state >> 33) % i]);
  }
  std::size_t np = std::min<std::size_t>(p, edges.size());
  std::size_t nq = std::min<std::size_t>(q, edges.size() - np);
  std::vector<Edge> forbidden(edges.begin(), edges.begin() + np);
  std::vector<Edge> forced;
  for (std::size_t i = np; i < edges.size() && forced.size() < nq; ++i) {
    bool clash = false;
    for (const Edge& f : forced) clash = clash || f.shares_endpoint(edges[i]);
    if (!clash) forced.push_back(edges[i]);
  }
  base.restrictions = RestrictionSet(forbidden, forced);
  return base;
}

}  // namespace smr::testing
