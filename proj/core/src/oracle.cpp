#include "smr/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "smr/errors.hpp"
#include "smr/evaluate.hpp"
#include "subsets.hpp"

namespace smr {

namespace {

void check_guard(const Instance& inst, const OracleGuard& guard) {
  if (guard.override_guard || inst.size() <= guard.max_agents) return;
  double estimate = 1;
  for (Agent a = 0; a < inst.size(); ++a) estimate *= std::sqrt(inst.degree(a) + 1.0);
  throw SizeGuardExceeded("matching enumeration over " + std::to_string(inst.size()) + " agents exceeds the guard of " +
                              std::to_string(guard.max_agents),
                          estimate);
}

void check_source_guard(int size, const SourceGuard& guard, const char* what) {
  if (guard.override_guard || size <= guard.max_size) return;
  throw SizeGuardExceeded(std::string(what) + " of size " + std::to_string(size) + " exceeds the guard of " +
                              std::to_string(guard.max_size),
                          std::pow(2.0, size));
}

// Keeps the optimum under (value, lexicographic witness) order.
template <typename Better>
struct Best {
  std::optional<OracleValue> value;
  Better better;

  void offer(const Matching& m, std::size_t v) {
    if (!value || better(v, value->value) ||
        (v == value->value && lexicographically_less(m, value->witness))) {
      value = OracleValue{m, v};
    }
  }
};

}  // namespace

void enum_matchings(const Instance& inst, const std::function<bool(const Matching&)>& visit,
                    const OracleGuard& guard) {
  check_guard(inst, guard);
  const int n = inst.size();
  Matching m(n);
  std::vector<bool> decided(n, false);
  bool stop = false;
  auto dfs = [&](auto&& self, Agent from) -> void {
    Agent a = from;
    while (a < n && decided[a]) ++a;
    if (a == n) {
      if (!visit(m)) stop = true;
      return;
    }
    decided[a] = true;
    self(self, a + 1);
    for (Agent b : inst.prefs(a)) {
      if (stop) break;
      if (decided[b]) continue;
      decided[b] = true;
      m.add(Edge::of(a, b));
      self(self, a + 1);
      m.remove(Edge::of(a, b));
      decided[b] = false;
    }
    decided[a] = false;
  };
  dfs(dfs, 0);
}

std::size_t count_matchings(const Instance& inst, const OracleGuard& guard) {
  std::size_t count = 0;
  enum_matchings(inst, [&](const Matching&) { return ++count, true; }, guard);
  return count;
}

OracleValue oracle_min_bp(const Instance& inst, const RestrictionSet& r, const OracleGuard& guard) {
  r.check_against(inst);
  if (!r.forced_is_matching()) throw StructuralInfeasibility("forced edges share an endpoint");
  Best<std::less<>> best;
  enum_matchings(
      inst,
      [&](const Matching& m) {
        if (satisfies(m, r)) best.offer(m, blocking_pairs(inst, m).count());
        return true;
      },
      guard);
  return *best.value;
}

std::optional<OracleValue> oracle_min_violations(const Instance& inst, const RestrictionSet& r,
                                                 const OracleGuard& guard) {
  r.check_against(inst);
  Best<std::less<>> best;
  enum_matchings(
      inst,
      [&](const Matching& m) {
        if (is_stable(inst, m)) best.offer(m, violation_counts(m, r).total());
        return true;
      },
      guard);
  return best.value;
}

std::optional<OracleValue> oracle_max_forced(const Instance& inst, const std::vector<Edge>& forced,
                                             const OracleGuard& guard) {
  RestrictionSet q({}, forced);
  q.check_against(inst);
  Best<std::greater<>> best;
  enum_matchings(
      inst,
      [&](const Matching& m) {
        if (!is_stable(inst, m)) return true;
        std::size_t kept = 0;
        for (const Edge& e : q.forced()) kept += m.contains(e) ? 1 : 0;
        best.offer(m, kept);
        return true;
      },
      guard);
  return best.value;
}

std::vector<Matching> oracle_stable_matchings(const Instance& inst, const OracleGuard& guard) {
  std::vector<Matching> out;
  enum_matchings(
      inst,
      [&](const Matching& m) {
        if (is_stable(inst, m)) out.push_back(m);
        return true;
      },
      guard);
  std::sort(out.begin(), out.end(), lexicographically_less);
  return out;
}

std::optional<OracleValue> oracle_psmi(const Instance& inst, const OracleGuard& guard) {
  Best<std::less<>> best;
  enum_matchings(
      inst,
      [&](const Matching& m) {
        if (2 * m.size() == static_cast<std::size_t>(inst.size())) best.offer(m, blocking_pairs(inst, m).count());
        return true;
      },
      guard);
  return best.value;
}

std::vector<int> oracle_vertex_cover_witness(const Graph& g, const SourceGuard& guard) {
  check_source_guard(g.n(), guard, "vertex cover search");
  std::vector<int> cover;
  detail::for_each_subset(g.n(), g.n(), [&](const std::vector<int>& chosen) {
    std::vector<bool> in(g.n(), false);
    for (int v : chosen) in[v] = true;
    for (auto [a, b] : g.edges()) {
      if (!in[a] && !in[b]) return false;
    }
    cover = chosen;
    return true;
  });
  return cover;
}

int oracle_vertex_cover(const Graph& g, const SourceGuard& guard) {
  return static_cast<int>(oracle_vertex_cover_witness(g, guard).size());
}

int oracle_max_independent_set(const Graph& g, const SourceGuard& guard) {
  return g.n() - oracle_vertex_cover(g, guard);
}

std::optional<std::vector<std::pair<int, int>>> oracle_exact_maximal_matching_witness(
    const Graph& g, int k, const SourceGuard& guard) {
  check_source_guard(g.n(), guard, "exact maximal matching search");
  const auto& edges = g.edges();
  const int m = static_cast<int>(edges.size());
  std::vector<bool> used(g.n(), false);
  std::vector<std::pair<int, int>> chosen;
  std::optional<std::vector<std::pair<int, int>>> found;
  auto maximal = [&] {
    for (auto [a, b] : edges) {
      if (!used[a] && !used[b]) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, int i) -> void {
    if (found) return;
    if (static_cast<int>(chosen.size()) == k) {
      if (maximal()) found = chosen;
      return;
    }
    if (i == m || static_cast<int>(chosen.size()) + (m - i) < k) return;
    auto [a, b] = edges[i];
    if (!used[a] && !used[b]) {
      used[a] = used[b] = true;
      chosen.push_back(edges[i]);
      self(self, i + 1);
      chosen.pop_back();
      used[a] = used[b] = false;
    }
    self(self, i + 1);
  };
  if (k >= 0) dfs(dfs, 0);
  return found;
}

bool oracle_exact_maximal_matching(const Graph& g, int k, const SourceGuard& guard) {
  return oracle_exact_maximal_matching_witness(g, k, guard).has_value();
}

namespace {

// Satisfying assignment with the fewest true variables; ties broken by the
// smallest bit pattern (variable 1 is the lowest bit).
std::optional<std::vector<bool>> min_true_assignment(const CnfFormula& f, const SourceGuard& guard) {
  check_source_guard(f.variables, guard, "truth-table search");
  std::optional<std::uint64_t> best;
  const std::uint64_t total = std::uint64_t{1} << f.variables;
  std::vector<bool> assignment(f.variables);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    if (best && std::popcount(bits) >= std::popcount(*best)) continue;
    for (int v = 0; v < f.variables; ++v) assignment[v] = (bits >> v) & 1;
    if (f.satisfied_by(assignment)) best = bits;
  }
  if (!best) return std::nullopt;
  for (int v = 0; v < f.variables; ++v) assignment[v] = (*best >> v) & 1;
  return assignment;
}

}  // namespace

std::optional<int> oracle_min_true_assignment(const CnfFormula& f, const SourceGuard& guard) {
  auto a = min_true_assignment(f, guard);
  if (!a) return std::nullopt;
  return static_cast<int>(std::count(a->begin(), a->end(), true));
}

std::optional<std::vector<bool>> oracle_satisfying_assignment(const CnfFormula& f, const SourceGuard& guard) {
  return min_true_assignment(f, guard);
}

}  // namespace smr
