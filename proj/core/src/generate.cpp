#include "smr/generate.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "smr/errors.hpp"

namespace smr {

ParsedInstance gen_random(const GenSpec& spec) {
  if (spec.n < 0) throw InvalidArgument("negative agent count");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) throw InvalidArgument("density must lie in (0, 1]");
  if (spec.p_count < 0 || spec.q_count < 0) throw InvalidArgument("negative restriction count");
  if (spec.degree_cap && *spec.degree_cap < 1 && spec.n > 1) {
    throw InvalidArgument("degree cap below 1 leaves no edges to sample");
  }

  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution keep(spec.density);
  const bool marriage = spec.kind == InstanceKind::marriage;
  const int agents = marriage ? 2 * spec.n : spec.n;

  std::vector<Edge> candidates;
  for (Agent a = 0; a < agents; ++a) {
    for (Agent b = a + 1; b < agents; ++b) {
      if (marriage && (a < spec.n) == (b < spec.n)) continue;
      candidates.push_back(Edge{a, b});
    }
  }
  std::vector<Edge> edges;
  if (spec.degree_cap) {
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<int> degree(agents, 0);
    for (const Edge& e : candidates) {
      if (!keep(rng)) continue;
      if (degree[e.a] >= *spec.degree_cap || degree[e.b] >= *spec.degree_cap) continue;
      ++degree[e.a];
      ++degree[e.b];
      edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
  } else {
    for (const Edge& e : candidates) {
      if (keep(rng)) edges.push_back(e);
    }
  }
  if (static_cast<std::size_t>(spec.p_count + spec.q_count) > edges.size()) {
    throw InvalidArgument("requested " + std::to_string(spec.p_count + spec.q_count) +
                          " restricted edges but only " + std::to_string(edges.size()) + " edges were generated");
  }

  std::vector<std::vector<Agent>> prefs(agents);
  for (const Edge& e : edges) {
    prefs[e.a].push_back(e.b);
    prefs[e.b].push_back(e.a);
  }
  for (auto& list : prefs) std::shuffle(list.begin(), list.end(), rng);

  std::vector<Edge> pool = edges;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<Edge> p(pool.begin(), pool.begin() + spec.p_count);
  std::vector<Edge> q(pool.begin() + spec.p_count, pool.begin() + spec.p_count + spec.q_count);

  ParsedInstance out;
  out.instance = marriage ? Instance::marriage(spec.n, spec.n, std::move(prefs))
                          : Instance::roommates(spec.n, std::move(prefs));
  out.restrictions = RestrictionSet(std::move(p), std::move(q));
  return out;
}

Graph random_graph(int n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (keep(rng)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

CnfFormula random_monotone_2cnf(int variables, int clauses, std::uint64_t seed) {
  std::vector<std::vector<int>> all;
  for (int i = 1; i <= variables; ++i) {
    for (int j = i + 1; j <= variables; ++j) all.push_back({i, j});
  }
  if (clauses < 0 || static_cast<std::size_t>(clauses) > all.size()) {
    throw InvalidArgument("cannot draw " + std::to_string(clauses) + " distinct clauses");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(clauses);
  return CnfFormula{variables, std::move(all)};
}

CnfFormula random_e3sat22(int variables, std::uint64_t seed) {
  if (variables <= 0 || variables % 3 != 0) throw InvalidArgument("variable count must be a positive multiple of 3");
  std::mt19937_64 rng(seed);
  std::vector<int> literals;
  for (int v = 1; v <= variables; ++v) {
    for (int lit : {v, v, -v, -v}) literals.push_back(lit);
  }
  const int clauses = static_cast<int>(literals.size()) / 3;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(literals.begin(), literals.end(), rng);
    CnfFormula f{variables, {}};
    bool ok = true;
    for (int c = 0; c < clauses && ok; ++c) {
      std::vector<int> clause(literals.begin() + 3 * c, literals.begin() + 3 * c + 3);
      std::set<int> vars;
      for (int lit : clause) vars.insert(std::abs(lit));
      ok = vars.size() == 3;
      f.clauses.push_back(std::move(clause));
    }
    if (ok) return f;
  }
  throw InvalidArgument("no (2,2)-E3-SAT formula with distinct clause variables found");
}

Graph random_biregular_23(int t, std::uint64_t seed) {
  if (t <= 0) throw InvalidArgument("t must be positive");
  std::mt19937_64 rng(seed);
  const int left = 3 * t;
  std::vector<int> stubs;
  for (int w = 0; w < 2 * t; ++w) {
    for (int k = 0; k < 3; ++k) stubs.push_back(left + w);
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<int, int>> edges;
    bool ok = true;
    for (int u = 0; u < left && ok; ++u) {
      ok = edges.insert({u, stubs[2 * u]}).second && edges.insert({u, stubs[2 * u + 1]}).second;
    }
    if (ok) return Graph(5 * t, {edges.begin(), edges.end()});
  }
  throw InvalidArgument("no simple (2,3)-biregular graph found");
}

}  // namespace smr
