#include "smr/sr_engine.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "exact_lp.hpp"
#include "smr/errors.hpp"
#include "smr/evaluate.hpp"
#include "stable_search.hpp"
#include "subsets.hpp"

namespace smr {

namespace {

// Preference table with deletions, as used by both phases of Irving's
// algorithm.
class Table {
 public:
  explicit Table(const Instance& inst) : inst_(inst), alive_(static_cast<std::size_t>(inst.size()) * inst.size(), 0) {
    for (const Edge& e : inst.edges()) {
      set(e.a, e.b, 1);
      set(e.b, e.a, 1);
    }
  }

  bool alive(Agent x, Agent y) const { return alive_[static_cast<std::size_t>(x) * inst_.size() + y] != 0; }
  void remove(Agent x, Agent y) {
    set(x, y, 0);
    set(y, x, 0);
  }

  // k-th alive entry of x's list (0-based), or kUnmatched.
  Agent nth(Agent x, int k) const {
    for (Agent y : inst_.prefs(x)) {
      if (alive(x, y) && k-- == 0) return y;
    }
    return kUnmatched;
  }
  Agent last(Agent x) const {
    auto list = inst_.prefs(x);
    for (auto it = list.rbegin(); it != list.rend(); ++it) {
      if (alive(x, *it)) return *it;
    }
    return kUnmatched;
  }
  int length(Agent x) const {
    int count = 0;
    for (Agent y : inst_.prefs(x)) count += alive(x, y) ? 1 : 0;
    return count;
  }
  // Delete every entry of y's list that y ranks below x.
  void truncate_after(Agent y, Agent x) {
    auto list = inst_.prefs(y);
    for (int r = inst_.rank(y, x) + 1; r < static_cast<int>(list.size()); ++r) {
      if (alive(y, list[r])) remove(y, list[r]);
    }
  }

 private:
  void set(Agent x, Agent y, char v) { alive_[static_cast<std::size_t>(x) * inst_.size() + y] = v; }

  const Instance& inst_;
  std::vector<char> alive_;
};

std::size_t checked_limit_enumeration(const EnumerationResult& result) {
  if (result.truncated) throw Error("stable matching enumeration truncated; instance too large for exact mode");
  return result.matchings.size();
}

}  // namespace

std::optional<Matching> irving(const Instance& inst) {
  const int n = inst.size();
  Table table(inst);

  std::vector<Agent> holder(n, kUnmatched);
  std::deque<Agent> free;
  for (Agent x = 0; x < n; ++x) free.push_back(x);
  while (!free.empty()) {
    Agent x = free.front();
    free.pop_front();
    Agent y = table.nth(x, 0);
    if (y == kUnmatched) continue;
    Agent previous = holder[y];
    holder[y] = x;
    table.truncate_after(y, x);
    if (previous != kUnmatched) free.push_front(previous);
  }

  std::vector<bool> listed(n);
  for (Agent x = 0; x < n; ++x) listed[x] = table.length(x) > 0;
  while (true) {
    Agent start = kUnmatched;
    for (Agent x = 0; x < n; ++x) {
      if (table.length(x) >= 2) {
        start = x;
        break;
      }
    }
    if (start == kUnmatched) break;
    std::vector<int> seen(n, -1);
    std::vector<Agent> walk;
    Agent cur = start;
    while (seen[cur] < 0) {
      seen[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      Agent second = table.nth(cur, 1);
      if (second == kUnmatched) throw std::logic_error("rotation walk reached a short list");
      cur = table.last(second);
    }
    std::vector<Agent> xs(walk.begin() + seen[cur], walk.end());
    std::vector<Agent> ys;
    for (Agent x : xs) ys.push_back(table.nth(x, 1));
    for (std::size_t i = 0; i < xs.size(); ++i) table.truncate_after(ys[i], xs[i]);
    for (Agent x = 0; x < n; ++x) {
      if (listed[x] && table.length(x) == 0) return std::nullopt;
    }
  }

  Matching m(n);
  for (Agent x = 0; x < n; ++x) {
    Agent y = table.nth(x, 0);
    if (y == kUnmatched || y < x) continue;
    if (table.nth(y, 0) != x) throw std::logic_error("phase 2 left an asymmetric table");
    m.add(Edge{x, y});
  }
  if (!is_stable(inst, m)) throw std::logic_error("irving produced an unstable matching");
  return m;
}

EnumerationResult enumerate_stable_sr(const Instance& inst, std::size_t limit) {
  return detail::StableSearch(inst).run(limit);
}

FeasibilityResult sr_restricted_feasible(const Instance& inst, const RestrictionSet& r) {
  r.check_against(inst);
  if (!r.forced_is_matching()) return {FeasibilityStatus::structurally_infeasible, std::nullopt};
  RestrictionSet transformed = forced_to_forbidden(inst, r);
  detail::StableSearch search(inst);
  for (const Edge& e : transformed.forbidden()) search.allowed[inst.edge_index(e)] = 0;
  for (const Edge& q : r.forced()) {
    search.forced[q.a] = q.b;
    search.forced[q.b] = q.a;
  }
  EnumerationResult found = search.run(1);
  if (found.matchings.empty()) return {FeasibilityStatus::infeasible, std::nullopt};
  return {FeasibilityStatus::feasible, std::move(found.matchings.front())};
}

bool FractionalStableSolution::half_integral() const {
  const Rational half(1, 2);
  return std::all_of(x.begin(), x.end(), [&](const Rational& v) { return v == 0 || v == half || v == 1; });
}

std::optional<FractionalStableSolution> solve_stability_lp(const Instance& inst, const WeightAssignment& w) {
  const auto& edges = inst.edges();
  const int m = static_cast<int>(edges.size());
  std::vector<Rational> cost(m);
  for (int i = 0; i < m; ++i) cost[i] = w.get(edges[i]);

  std::vector<detail::LpRow> rows;
  for (Agent v = 0; v < inst.size(); ++v) {
    if (inst.degree(v) == 0) continue;
    detail::LpRow row;
    for (Agent u : inst.prefs(v)) row.coeffs.push_back({inst.edge_index(Edge::of(u, v)), Rational(1)});
    row.sense = detail::RowSense::less_equal;
    row.rhs = 1;
    rows.push_back(std::move(row));
  }
  for (int i = 0; i < m; ++i) {
    const Edge& e = edges[i];
    detail::LpRow row;
    row.coeffs.push_back({i, Rational(1)});
    for (Agent end : {e.a, e.b}) {
      Agent other = e.other(end);
      for (Agent better : inst.prefs(end)) {
        if (better == other) break;
        row.coeffs.push_back({inst.edge_index(Edge::of(end, better)), Rational(1)});
      }
    }
    row.sense = detail::RowSense::greater_equal;
    row.rhs = 1;
    rows.push_back(std::move(row));
  }
  detail::LpSolution lp = detail::solve_lp(m, cost, rows);
  if (lp.status == detail::LpStatus::infeasible) return std::nullopt;
  if (lp.status == detail::LpStatus::unbounded) throw std::logic_error("stability LP cannot be unbounded");
  return FractionalStableSolution{std::move(lp.x), std::move(lp.objective)};
}

namespace {

struct HalfComponent {
  std::vector<Edge> classes[2];
  Rational weight[2];
  bool odd_cycle = false;
};

// Splits the support's half edges into paths and cycles, each with its two
// alternating classes.
std::vector<HalfComponent> half_components(const Instance& inst, const FractionalStableSolution& lp,
                                           const WeightAssignment& w) {
  const Rational half(1, 2);
  const auto& edges = inst.edges();
  std::vector<std::vector<int>> incident(inst.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (lp.x[i] != half) continue;
    incident[edges[i].a].push_back(static_cast<int>(i));
    incident[edges[i].b].push_back(static_cast<int>(i));
  }
  for (const auto& list : incident) {
    if (list.size() > 2) throw std::logic_error("half edges do not form paths and cycles");
  }
  std::vector<bool> used(edges.size(), false);
  std::vector<HalfComponent> out;
  auto trace = [&](Agent start, int first_edge) {
    HalfComponent comp;
    Agent at = start;
    int edge = first_edge;
    int position = 0;
    while (edge >= 0 && !used[edge]) {
      used[edge] = true;
      comp.classes[position % 2].push_back(edges[edge]);
      comp.weight[position % 2] += w.get(edges[edge]);
      ++position;
      at = edges[edge].other(at);
      int next = -1;
      for (int cand : incident[at]) {
        if (!used[cand]) next = cand;
      }
      edge = next;
    }
    bool cycle = at == start && incident[start].size() == 2;
    comp.odd_cycle = cycle && position % 2 == 1;
    for (auto& cls : comp.classes) std::sort(cls.begin(), cls.end());
    out.push_back(std::move(comp));
  };
  for (Agent v = 0; v < inst.size(); ++v) {
    if (incident[v].size() == 1 && !used[incident[v][0]]) trace(v, incident[v][0]);
  }
  for (Agent v = 0; v < inst.size(); ++v) {
    for (int e : incident[v]) {
      if (!used[e]) trace(v, e);
    }
  }
  return out;
}

int preferred_class(const HalfComponent& comp) {
  if (comp.weight[0] != comp.weight[1]) return comp.weight[0] < comp.weight[1] ? 0 : 1;
  if (comp.classes[1].empty()) return 0;
  if (comp.classes[0].empty()) return 1;
  return comp.classes[0].front() < comp.classes[1].front() ? 0 : 1;
}

}  // namespace

ApproxSolveResult sr_min_weight_2approx(const Instance& inst, const WeightAssignment& w) {
  if (!w.all_nonnegative()) throw InvalidArgument("2-approximation needs non-negative weights");
  if (!irving(inst)) throw Error("instance has no stable matching");
  auto lp = solve_stability_lp(inst, w);
  if (!lp) throw std::logic_error("stability LP infeasible although a stable matching exists");
  if (!lp->half_integral()) throw std::logic_error("stability LP extreme point is not half-integral");

  Matching fixed(inst.size());
  const auto& edges = inst.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (lp->x[i] == 1) fixed.add(edges[i]);
  }
  auto comps = half_components(inst, *lp, w);
  bool has_odd = std::any_of(comps.begin(), comps.end(), [](const HalfComponent& c) { return c.odd_cycle; });

  auto assemble = [&](const std::vector<int>& choice) {
    Matching m = fixed;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (const Edge& e : comps[c].classes[choice[c]]) m.add(e);
    }
    return m;
  };

  ApproxSolveResult out;
  out.lp = *lp;
  if (!has_odd) {
    std::vector<int> choice(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) choice[c] = preferred_class(comps[c]);
    Matching m = assemble(choice);
    if (is_stable(inst, m)) {
      out.result = {m, w.total(m), {}};
      return out;
    }
    out.direct_rounding = false;
    if (comps.size() <= 16) {
      std::vector<std::pair<Rational, unsigned>> options;
      for (unsigned mask = 0; mask < (1u << comps.size()); ++mask) {
        Rational total = 0;
        for (std::size_t c = 0; c < comps.size(); ++c) total += comps[c].weight[(mask >> c) & 1u];
        options.push_back({total, mask});
      }
      std::stable_sort(options.begin(), options.end(),
                       [](const auto& x, const auto& y) { return x.first < y.first; });
      for (const auto& [total, mask] : options) {
        for (std::size_t c = 0; c < comps.size(); ++c) choice[c] = static_cast<int>((mask >> c) & 1u);
        Matching candidate = assemble(choice);
        if (is_stable(inst, candidate)) {
          out.result = {candidate, total + w.total(fixed), {}};
          return out;
        }
      }
    }
  }
  out.direct_rounding = false;
  // Any stable matching inside the support keeps the factor: every support
  // edge carries at least one half of its weight in the LP objective.
  detail::StableSearch search(inst);
  for (std::size_t i = 0; i < edges.size(); ++i) search.allowed[i] = sgn(lp->x[i]) > 0 ? 1 : 0;
  EnumerationResult inside = search.run(kDefaultEnumerationLimit);
  if (inside.matchings.empty()) {
    // Odd half-cycles can exclude every stable matching from the support.
    // The cheapest stable matching overall is then within twice the LP value.
    std::fill(search.allowed.begin(), search.allowed.end(), 1);
    inside = search.run(kDefaultEnumerationLimit);
    if (inside.matchings.empty()) throw std::logic_error("stable matching vanished during rounding");
    out.exhaustive_fallback = true;
  }
  const Matching* best = nullptr;
  for (const Matching& m : inside.matchings) {
    if (!best || w.total(m) < w.total(*best)) best = &m;
  }
  out.result = {*best, w.total(*best), {}};
  return out;
}

WeightAssignment approx2_weights(const Instance& inst, const RestrictionSet& r, std::size_t stable_size) {
  Rational base = stable_size == 0 ? Rational(0)
                                   : Rational(static_cast<long>(r.forced().size()), static_cast<long>(stable_size));
  base.canonicalize();
  WeightAssignment w;
  for (const Edge& e : inst.edges()) {
    if (r.is_forced(e)) {
      w.set(e, base - 1);
    } else if (r.is_forbidden(e)) {
      w.set(e, base + 1);
    } else {
      w.set(e, base);
    }
  }
  return w;
}

std::optional<ViolationSolveResult> sr_min_restricted_violations(const Instance& inst, const RestrictionSet& r,
                                                                 ViolationMode mode) {
  r.check_against(inst);
  if (mode == ViolationMode::exact) {
    EnumerationResult all = enumerate_stable_sr(inst, 1'000'000);
    if (checked_limit_enumeration(all) == 0) return std::nullopt;
    const Matching* best = nullptr;
    std::size_t best_total = 0;
    for (const Matching& m : all.matchings) {
      std::size_t total = violation_counts(m, r).total();
      if (!best || total < best_total || (total == best_total && lexicographically_less(m, *best))) {
        best = &m;
        best_total = total;
      }
    }
    return ViolationSolveResult{*best, violation_counts(*best, r)};
  }
  auto stable = irving(inst);
  if (!stable) return std::nullopt;
  const std::size_t size = stable->size();
  const std::size_t forced = r.forced().size();
  if (forced > 0 && size == 0) throw InvalidArgument("forced edges but every stable matching is empty");
  if (forced > 0 && forced < size) {
    throw InvalidArgument("approx2 requires Q empty or |Q| >= |M|; the case 0 < |Q| < |M| is open");
  }
  ApproxSolveResult approx = sr_min_weight_2approx(inst, approx2_weights(inst, r, size));
  ViolationSolveResult out{approx.result.matching, violation_counts(approx.result.matching, r)};
  if (approx.result.weight != static_cast<long>(out.violations.total())) {
    throw std::logic_error("approx2 weight differs from the violation count");
  }
  return out;
}

std::optional<Matching> sr_flip_subset(const Instance& inst, const RestrictionSet& r, int k) {
  r.check_against(inst);
  std::vector<Edge> restricted = r.forbidden();
  restricted.insert(restricted.end(), r.forced().begin(), r.forced().end());
  std::sort(restricted.begin(), restricted.end());
  k = std::clamp(k, 0, static_cast<int>(restricted.size()));
  std::optional<Matching> found;
  detail::for_each_subset(static_cast<int>(restricted.size()), k, [&](const std::vector<int>& chosen) {
    std::vector<Edge> p;
    std::vector<Edge> q;
    std::size_t next = 0;
    for (int i = 0; i < static_cast<int>(restricted.size()); ++i) {
      bool flip = next < chosen.size() && chosen[next] == i;
      if (flip) ++next;
      bool forbidden = r.is_forbidden(restricted[i]);
      ((forbidden != flip) ? p : q).push_back(restricted[i]);
    }
    RestrictionSet flipped(std::move(p), std::move(q));
    if (!flipped.forced_is_matching()) return false;
    FeasibilityResult result = sr_restricted_feasible(inst, flipped);
    if (!result.feasible()) return false;
    found = std::move(result.matching);
    return true;
  });
  return found;
}

std::optional<ViolationSolveResult> sr_degree2_min_violations(const Instance& inst, const RestrictionSet& r) {
  if (inst.max_degree() > 2) throw InvalidArgument("degree-2 algorithm needs every list of length at most 2");
  r.check_against(inst);
  auto base = irving(inst);
  if (!base) return std::nullopt;
  const int n = inst.size();

  std::vector<int> component(n, -1);
  int components = 0;
  for (Agent s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    std::vector<Agent> stack{s};
    component[s] = components;
    while (!stack.empty()) {
      Agent v = stack.back();
      stack.pop_back();
      for (Agent u : inst.prefs(v)) {
        if (component[u] < 0) {
          component[u] = components;
          stack.push_back(u);
        }
      }
    }
    ++components;
  }

  Matching result(n);
  for (int c = 0; c < components; ++c) {
    std::vector<Agent> members;
    for (Agent v = 0; v < n; ++v) {
      if (component[v] == c) members.push_back(v);
    }
    // Matchings on this component covering exactly the invariant matched set.
    std::vector<Matching> candidates;
    Matching partial(n);
    auto extend = [&](auto&& self, std::size_t i) -> void {
      while (i < members.size() && (!base->matched(members[i]) || partial.matched(members[i]))) ++i;
      if (i == members.size()) {
        candidates.push_back(partial);
        return;
      }
      Agent a = members[i];
      for (Agent b : inst.prefs(a)) {
        if (!base->matched(b) || partial.matched(b)) continue;
        partial.add(Edge::of(a, b));
        self(self, i + 1);
        partial.remove(Edge::of(a, b));
      }
    };
    extend(extend, 0);

    const Matching* best = nullptr;
    std::size_t best_total = 0;
    for (const Matching& cand : candidates) {
      bool stable = true;
      for (Agent v : members) {
        for (Agent u : inst.prefs(v)) {
          if (v < u && blocks(inst, cand, Edge{v, u})) stable = false;
        }
      }
      if (!stable) continue;
      // Restrictions elsewhere do not depend on this component's choice.
      std::size_t local = 0;
      for (const Edge& e : r.forbidden()) local += (component[e.a] == c && cand.contains(e)) ? 1 : 0;
      for (const Edge& e : r.forced()) local += (component[e.a] == c && !cand.contains(e)) ? 1 : 0;
      if (!best || local < best_total || (local == best_total && lexicographically_less(cand, *best))) {
        best = &cand;
        best_total = local;
      }
    }
    if (!best) return std::nullopt;
    for (const Edge& e : best->pairs()) result.add(e);
  }
  return ViolationSolveResult{result, violation_counts(result, r)};
}

}  // namespace smr
