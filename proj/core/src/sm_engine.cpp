#include "smr/sm_engine.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "max_flow.hpp"
#include "smr/errors.hpp"
#include "smr/evaluate.hpp"

namespace smr {

namespace {

void require_marriage(const Instance& inst, const char* what) {
  if (!inst.is_marriage()) throw InvalidArgument(std::string(what) + " needs a marriage instance");
}

// Lowest-rank woman after m's current partner who prefers m to her own
// partner, or kUnmatched.
Agent successor(const Instance& inst, const std::vector<Agent>& mate, Agent m) {
  auto list = inst.prefs(m);
  for (int r = inst.rank(m, mate[m]) + 1; r < static_cast<int>(list.size()); ++r) {
    Agent w = list[r];
    if (mate[w] != kUnmatched && inst.rank(w, m) < inst.rank(w, mate[w])) return w;
  }
  return kUnmatched;
}

}  // namespace

Matching gale_shapley(const Instance& inst, Proposer side) {
  require_marriage(inst, "gale_shapley");
  const bool left = side == Proposer::left;
  const Agent first = left ? 0 : inst.left_count();
  const Agent last = left ? inst.left_count() : inst.size();
  std::vector<int> next(inst.size(), 0);
  std::vector<Agent> holder(inst.size(), kUnmatched);
  std::deque<Agent> free;
  for (Agent p = first; p < last; ++p) free.push_back(p);
  while (!free.empty()) {
    Agent p = free.front();
    free.pop_front();
    if (next[p] >= inst.degree(p)) continue;
    Agent r = inst.prefs(p)[next[p]++];
    Agent h = holder[r];
    if (h == kUnmatched) {
      holder[r] = p;
    } else if (inst.rank(r, p) < inst.rank(r, h)) {
      holder[r] = p;
      free.push_front(h);
    } else {
      free.push_front(p);
    }
  }
  Matching m(inst.size());
  for (Agent r = 0; r < inst.size(); ++r) {
    if (holder[r] != kUnmatched) m.add(Edge::of(r, holder[r]));
  }
  return m;
}

Matching RotationPoset::matching_of(const std::vector<bool>& closure) const {
  std::vector<Agent> mate = left_optimal.mates();
  for (std::size_t r = 0; r < rotations.size(); ++r) {
    if (!closure[r]) continue;
    const auto& pairs = rotations[r].pairs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      Agent m = pairs[i].first;
      Agent w = pairs[(i + 1) % pairs.size()].second;
      mate[m] = w;
      mate[w] = m;
    }
  }
  Matching out(static_cast<int>(mate.size()));
  for (Agent a = 0; a < static_cast<int>(mate.size()); ++a) {
    if (mate[a] > a) out.add(Edge{a, mate[a]});
  }
  return out;
}

bool RotationPoset::is_closed(const std::vector<bool>& closure) const {
  for (std::size_t r = 0; r < rotations.size(); ++r) {
    if (!closure[r]) continue;
    for (int p : predecessors[r]) {
      if (!closure[p]) return false;
    }
  }
  return true;
}

RotationPoset build_rotation_poset(const Instance& inst, const WeightAssignment& w) {
  require_marriage(inst, "build_rotation_poset");
  RotationPoset poset;
  poset.left_optimal = gale_shapley(inst, Proposer::left);
  poset.right_optimal = gale_shapley(inst, Proposer::right);

  const int n = inst.size();
  const int men = inst.left_count();
  std::vector<Agent> mate = poset.left_optimal.mates();
  std::vector<std::vector<int>> moves_of_man(n);
  // Per woman: partner after each step, and the rotation causing the step.
  std::vector<std::vector<std::pair<int, Agent>>> timeline(n);
  for (Agent a = men; a < n; ++a) timeline[a].push_back({-1, mate[a]});

  auto at_final = [&](Agent m) { return mate[m] == poset.right_optimal.partner(m); };

  while (true) {
    Agent start = kUnmatched;
    for (Agent m = 0; m < men; ++m) {
      if (mate[m] != kUnmatched && !at_final(m)) {
        start = m;
        break;
      }
    }
    if (start == kUnmatched) break;

    std::vector<int> visited(men, -1);
    std::vector<Agent> walk;
    Agent cur = start;
    while (visited[cur] < 0) {
      visited[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      Agent s = successor(inst, mate, cur);
      if (s == kUnmatched || at_final(cur)) throw std::logic_error("rotation walk left the lattice");
      cur = mate[s];
    }
    Rotation rho;
    for (std::size_t i = visited[cur]; i < walk.size(); ++i) rho.pairs.push_back({walk[i], mate[walk[i]]});

    const int id = static_cast<int>(poset.rotations.size());
    const std::size_t r = rho.pairs.size();
    Rational delta = 0;
    for (std::size_t i = 0; i < r; ++i) {
      Agent m = rho.pairs[i].first;
      Agent from = rho.pairs[i].second;
      Agent to = rho.pairs[(i + 1) % r].second;
      delta += w.get(Edge::of(m, to)) - w.get(Edge::of(m, from));
      moves_of_man[m].push_back(id);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Agent m = rho.pairs[i].first;
      Agent to = rho.pairs[(i + 1) % r].second;
      mate[m] = to;
      mate[to] = m;
      timeline[to].push_back({id, m});
    }
    poset.rotations.push_back(std::move(rho));
    poset.rotation_weight.push_back(delta);
  }
  for (Agent a = 0; a < n; ++a) {
    if (mate[a] != poset.right_optimal.partner(a)) throw std::logic_error("chain did not reach the right-optimal matching");
  }

  poset.predecessors.assign(poset.rotations.size(), {});
  for (Agent m = 0; m < men; ++m) {
    for (std::size_t i = 1; i < moves_of_man[m].size(); ++i) {
      poset.predecessors[moves_of_man[m][i]].push_back(moves_of_man[m][i - 1]);
    }
  }
  for (std::size_t id = 0; id < poset.rotations.size(); ++id) {
    const auto& pairs = poset.rotations[id].pairs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      Agent m = pairs[i].first;
      int lo = inst.rank(m, pairs[i].second);
      int hi = inst.rank(m, pairs[(i + 1) % pairs.size()].second);
      for (int k = lo + 1; k < hi; ++k) {
        Agent skipped = inst.prefs(m)[k];
        const auto& steps = timeline[skipped];
        if (steps.empty() || steps.front().second == kUnmatched) {
          throw std::logic_error("skipped woman unmatched in every stable matching");
        }
        int threshold = inst.rank(skipped, m);
        if (inst.rank(skipped, steps.front().second) < threshold) continue;
        int cause = -2;
        for (const auto& [rot, partner] : steps) {
          if (rot >= 0 && inst.rank(skipped, partner) < threshold) {
            cause = rot;
            break;
          }
        }
        if (cause == -2) throw std::logic_error("no rotation lifts a skipped woman");
        if (cause != static_cast<int>(id)) poset.predecessors[id].push_back(cause);
      }
    }
    auto& preds = poset.predecessors[id];
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
  }
  return poset;
}

WeightedSolveResult min_weight_stable(const Instance& inst, const WeightAssignment& w) {
  RotationPoset poset = build_rotation_poset(inst, w);
  const int rotations = static_cast<int>(poset.size());
  const int source = rotations;
  const int sink = rotations + 1;
  Rational infinity = 1;
  for (const Rational& c : poset.rotation_weight) infinity += abs(c);

  detail::MaxFlow flow(rotations + 2);
  for (int r = 0; r < rotations; ++r) {
    const Rational& c = poset.rotation_weight[r];
    if (sgn(c) < 0) flow.add_arc(source, r, -c);
    if (sgn(c) > 0) flow.add_arc(r, sink, c);
    for (int p : poset.predecessors[r]) flow.add_arc(r, p, infinity);
  }
  flow.run(source, sink);
  std::vector<bool> side = flow.source_side(source);

  WeightedSolveResult result;
  result.closure.assign(rotations, false);
  result.weight = w.total(poset.left_optimal);
  for (int r = 0; r < rotations; ++r) {
    if (side[r]) {
      result.closure[r] = true;
      result.weight += poset.rotation_weight[r];
    }
  }
  result.matching = poset.matching_of(result.closure);
  if (!poset.is_closed(result.closure) || w.total(result.matching) != result.weight) {
    throw std::logic_error("min-cut closure is inconsistent");
  }
  return result;
}

WeightAssignment restriction_weights(const RestrictionSet& r) {
  WeightAssignment w;
  for (const Edge& e : r.forced()) w.set(e, -1);
  for (const Edge& e : r.forbidden()) w.set(e, 1);
  return w;
}

FeasibilityResult sm_restricted_feasible(const Instance& inst, const RestrictionSet& r) {
  require_marriage(inst, "sm_restricted_feasible");
  r.check_against(inst);
  if (!r.forced_is_matching()) return {FeasibilityStatus::structurally_infeasible, std::nullopt};
  WeightedSolveResult best = min_weight_stable(inst, restriction_weights(r));
  if (best.weight == -static_cast<long>(r.forced().size())) {
    return {FeasibilityStatus::feasible, std::move(best.matching)};
  }
  return {FeasibilityStatus::infeasible, std::nullopt};
}

ViolationSolveResult sm_min_restricted_violations(const Instance& inst, const RestrictionSet& r) {
  require_marriage(inst, "sm_min_restricted_violations");
  r.check_against(inst);
  WeightedSolveResult best = min_weight_stable(inst, restriction_weights(r));
  ViolationSolveResult out{best.matching, violation_counts(best.matching, r)};
  Rational expected = best.weight + static_cast<long>(r.forced().size());
  if (expected != static_cast<long>(out.violations.total())) {
    throw std::logic_error("violation total disagrees with the weight identity");
  }
  return out;
}

EnumerationResult enumerate_stable_sm(const Instance& inst, std::size_t limit) {
  RotationPoset poset = build_rotation_poset(inst);
  EnumerationResult out;
  const std::size_t rotations = poset.size();
  std::vector<bool> chosen(rotations, false);
  bool stop = false;
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (stop) return;
    if (i == rotations) {
      if (out.matchings.size() == limit) {
        out.truncated = true;
        stop = true;
        return;
      }
      out.matchings.push_back(poset.matching_of(chosen));
      return;
    }
    self(self, i + 1);
    bool ready = std::all_of(poset.predecessors[i].begin(), poset.predecessors[i].end(),
                             [&](int p) { return chosen[p]; });
    if (ready) {
      chosen[i] = true;
      self(self, i + 1);
      chosen[i] = false;
    }
  };
  visit(visit, 0);
  return out;
}

}  // namespace smr
