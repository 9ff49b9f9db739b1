#include "smr/minbp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "smr/errors.hpp"
#include "smr/evaluate.hpp"
#include "smr/sm_engine.hpp"
#include "smr/sr_engine.hpp"
#include "subsets.hpp"

namespace smr {

namespace {

constexpr Agent kUndecided = -2;

class BpSearch {
 public:
  BpSearch(const Instance& inst, const RestrictionSet& r, std::size_t bound)
      : inst_(inst), forbidden_(inst.edge_count(), 0), forced_(inst.size(), kUnmatched),
        mate_(inst.size(), kUndecided), best_(bound) {
    for (const Edge& e : r.forbidden()) forbidden_[inst.edge_index(e)] = 1;
    for (const Edge& q : r.forced()) {
      forced_[q.a] = q.b;
      forced_[q.b] = q.a;
    }
  }

  std::optional<Matching> run() {
    descend(0, 0);
    return witness_;
  }

 private:
  std::size_t new_blockers(Agent x, Agent also) const {
    std::size_t count = 0;
    for (Agent y : inst_.prefs(x)) {
      if (mate_[y] == kUndecided || y == mate_[x]) continue;
      if (y == also && also < x) continue;
      if (inst_.prefers(x, y, mate_[x]) && inst_.prefers(y, x, mate_[y])) ++count;
    }
    return count;
  }

  void descend(Agent from, std::size_t blocking) {
    Agent a = from;
    while (a < inst_.size() && mate_[a] != kUndecided) ++a;
    if (a == inst_.size()) {
      best_ = blocking;
      Matching m(inst_.size());
      for (Agent x = 0; x < inst_.size(); ++x) {
        if (mate_[x] > x) m.add(Edge{x, mate_[x]});
      }
      witness_ = std::move(m);
      return;
    }
    auto try_pair = [&](Agent b) {
      mate_[a] = b;
      mate_[b] = a;
      std::size_t added = new_blockers(a, b) + new_blockers(b, a);
      if (blocking + added < best_) descend(a + 1, blocking + added);
      mate_[a] = kUndecided;
      mate_[b] = kUndecided;
    };
    if (forced_[a] != kUnmatched) {
      if (mate_[forced_[a]] == kUndecided) try_pair(forced_[a]);
      return;
    }
    for (Agent b : inst_.prefs(a)) {
      if (mate_[b] == kUndecided && forced_[b] == kUnmatched && !forbidden_[inst_.edge_index(Edge::of(a, b))]) {
        try_pair(b);
      }
    }
    mate_[a] = kUnmatched;
    std::size_t added = new_blockers(a, kUnmatched);
    if (blocking + added < best_) descend(a + 1, blocking + added);
    mate_[a] = kUndecided;
  }

  const Instance& inst_;
  std::vector<char> forbidden_;
  std::vector<Agent> forced_;
  std::vector<Agent> mate_;
  std::size_t best_;
  std::optional<Matching> witness_;
};

}  // namespace

std::optional<MinBpResult> minbp_exact(const Instance& inst, const RestrictionSet& r,
                                       std::optional<std::size_t> cutoff) {
  r.check_against(inst);
  if (!r.forced_is_matching()) throw StructuralInfeasibility("forced edges share an endpoint");
  std::size_t bound = cutoff ? *cutoff + 1 : std::numeric_limits<std::size_t>::max();
  auto witness = BpSearch(inst, r, bound).run();
  if (!witness) return std::nullopt;
  MinBpResult out{*witness, blocking_pairs(inst, *witness, r), true};
  return out;
}

std::optional<Matching> minbp_bounded_forbidden(const Instance& inst, const RestrictionSet& forbidden, int k) {
  if (!inst.is_marriage()) throw InvalidArgument("bounded-forbidden solver needs a marriage instance");
  if (!forbidden.forced().empty()) throw InvalidArgument("bounded-forbidden solver takes no forced edges");
  forbidden.check_against(inst);
  const auto& p = forbidden.forbidden();
  if (k >= static_cast<int>(p.size())) {
    Matching m = gale_shapley(inst.without_edges(p), Proposer::left);
    return m;
  }
  const auto& edges = inst.edges();
  std::optional<Matching> found;
  detail::for_each_subset(static_cast<int>(edges.size()), k, [&](const std::vector<int>& chosen) {
    std::vector<Edge> removed;
    for (int i : chosen) removed.push_back(edges[i]);
    std::vector<Edge> rest;
    for (const Edge& e : p) {
      if (!std::binary_search(removed.begin(), removed.end(), e)) rest.push_back(e);
    }
    FeasibilityResult res = sm_restricted_feasible(inst.without_edges(removed), RestrictionSet(rest, {}));
    if (!res.feasible()) return false;
    found = std::move(res.matching);
    return true;
  });
  return found;
}

std::optional<Matching> minbp_bounded_blocking(const Instance& inst, const RestrictionSet& r, int l) {
  r.check_against(inst);
  if (!r.forced_is_matching()) return std::nullopt;
  const auto& edges = inst.edges();
  std::optional<Matching> found;
  detail::for_each_subset(static_cast<int>(edges.size()), std::max(l, 0), [&](const std::vector<int>& chosen) {
    std::vector<Edge> removed;
    for (int i : chosen) {
      if (r.is_forced(edges[i])) return false;
      removed.push_back(edges[i]);
    }
    std::vector<Edge> rest;
    for (const Edge& e : r.forbidden()) {
      if (!std::binary_search(removed.begin(), removed.end(), e)) rest.push_back(e);
    }
    Instance reduced = inst.without_edges(removed);
    RestrictionSet kept(rest, r.forced());
    FeasibilityResult res = inst.is_marriage() ? sm_restricted_feasible(reduced, kept)
                                               : sr_restricted_feasible(reduced, kept);
    if (!res.feasible()) return false;
    found = std::move(res.matching);
    return true;
  });
  return found;
}

namespace {

// Stable matching of a path or cycle given as local adjacency; vertices are
// local indices, prefs[v] lists local neighbors best first.
std::optional<std::vector<int>> stable_local(const std::vector<std::vector<int>>& prefs) {
  Instance sub = Instance::roommates(static_cast<int>(prefs.size()), prefs);
  auto m = irving(sub);
  if (!m) return std::nullopt;
  return m->mates();
}

class Degree2Solver {
 public:
  Degree2Solver(const Instance& inst, const RestrictionSet& r) : inst_(inst), r_(r) {}

  Matching solve(std::size_t& predicted) {
    const int n = inst_.size();
    result_ = Matching(n);
    std::vector<int> component(n, -1);
    int count = 0;
    for (Agent s = 0; s < n; ++s) {
      if (component[s] >= 0) continue;
      std::vector<Agent> members{s};
      component[s] = count;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (Agent u : inst_.prefs(members[i])) {
          if (component[u] < 0) {
            component[u] = count;
            members.push_back(u);
          }
        }
      }
      std::sort(members.begin(), members.end());
      bool restricted = false;
      for (Agent v : members) {
        for (Agent u : inst_.prefs(v)) restricted = restricted || r_.is_forbidden(Edge::of(u, v));
      }
      predicted += restricted ? solve_restricted(members) : solve_free(members);
      ++count;
    }
    return result_;
  }

 private:
  struct SplitEdge {
    int u;
    int v;
    bool forbidden;
  };

  struct Segment {
    std::vector<int> path;        // split vertices in path order
    std::vector<int> stable;      // mate per path position, -1 unmatched
    std::vector<int> alternative; // M' covering both ends, empty when none
    int end_edge[2] = {-1, -1};   // forbidden edge at path.front() / path.back()
    bool use_alternative = false;
  };

  // Local preference lists for the induced path on `path`, with the edge
  // between positions `cut` and `cut + 1` removed (cut < 0 keeps all).
  std::vector<std::vector<int>> path_prefs(const std::vector<int>& path, int cut) const {
    std::vector<std::vector<int>> prefs(path.size());
    for (int i = 0; i < static_cast<int>(path.size()); ++i) {
      std::vector<int> nbrs;
      if (i > 0 && cut != i - 1) nbrs.push_back(i - 1);
      if (i + 1 < static_cast<int>(path.size()) && cut != i) nbrs.push_back(i + 1);
      Agent o = origin_[path[i]];
      std::sort(nbrs.begin(), nbrs.end(),
                [&](int x, int y) { return inst_.rank(o, origin_[path[x]]) < inst_.rank(o, origin_[path[y]]); });
      prefs[i] = std::move(nbrs);
    }
    return prefs;
  }

  std::size_t solve_free(const std::vector<Agent>& members) {
    std::vector<int> local(inst_.size(), -1);
    for (int i = 0; i < static_cast<int>(members.size()); ++i) local[members[i]] = i;
    std::vector<std::vector<int>> prefs(members.size());
    for (int i = 0; i < static_cast<int>(members.size()); ++i) {
      for (Agent u : inst_.prefs(members[i])) prefs[i].push_back(local[u]);
    }
    std::size_t cost = 0;
    auto mates = stable_local(prefs);
    if (!mates) {
      // An odd cycle without a stable matching: drop one edge, the stable
      // matching of the remaining path is blocked by that edge alone.
      int a = 0;
      int b = prefs[0].front();
      auto pruned = prefs;
      std::erase(pruned[a], b);
      std::erase(pruned[b], a);
      mates = stable_local(pruned);
      if (!mates) throw std::logic_error("path without a stable matching");
      cost = 1;
    }
    for (int i = 0; i < static_cast<int>(members.size()); ++i) {
      if ((*mates)[i] > i) result_.add(Edge::of(members[i], members[(*mates)[i]]));
    }
    return cost;
  }

  std::size_t solve_restricted(const std::vector<Agent>& members) {
    origin_.clear();
    adjacency_.clear();
    edges_.clear();
    std::vector<int> split_of(inst_.size(), -1);
    for (Agent v : members) {
      split_of[v] = static_cast<int>(origin_.size());
      origin_.push_back(v);
      adjacency_.emplace_back();
    }
    auto attach = [&](int e) {
      adjacency_[edges_[e].u].push_back(e);
      adjacency_[edges_[e].v].push_back(e);
    };
    for (Agent v : members) {
      for (Agent u : inst_.prefs(v)) {
        if (v < u) {
          edges_.push_back({split_of[v], split_of[u], r_.is_forbidden(Edge{v, u})});
          attach(static_cast<int>(edges_.size()) - 1);
        }
      }
    }
    // A vertex whose first choice is forbidden and which has a second edge is
    // split; the copy keeps the forbidden first-choice edge alone.
    for (Agent v : members) {
      if (inst_.degree(v) != 2) continue;
      Agent top = inst_.prefs(v)[0];
      if (!r_.is_forbidden(Edge::of(v, top))) continue;
      int sv = split_of[v];
      int copy = static_cast<int>(origin_.size());
      origin_.push_back(v);
      adjacency_.emplace_back();
      for (int e : adjacency_[sv]) {
        SplitEdge& edge = edges_[e];
        int other = edge.u == sv ? edge.v : edge.u;
        if (origin_[other] != top) continue;
        (edge.u == sv ? edge.u : edge.v) = copy;
        std::erase(adjacency_[sv], e);
        adjacency_[copy].push_back(e);
        break;
      }
    }

    // Segments: components over unrestricted edges.
    const int vertices = static_cast<int>(origin_.size());
    std::vector<int> segment_of(vertices, -1);
    std::vector<Segment> segments;
    auto unrestricted_nbrs = [&](int v) {
      std::vector<int> out;
      for (int e : adjacency_[v]) {
        if (!edges_[e].forbidden) out.push_back(edges_[e].u == v ? edges_[e].v : edges_[e].u);
      }
      return out;
    };
    for (int s = 0; s < vertices; ++s) {
      if (segment_of[s] >= 0 || unrestricted_nbrs(s).size() > 1) continue;
      Segment seg;
      int prev = -1;
      int cur = s;
      while (cur >= 0) {
        segment_of[cur] = static_cast<int>(segments.size());
        seg.path.push_back(cur);
        int next = -1;
        for (int u : unrestricted_nbrs(cur)) {
          if (u != prev) next = u;
        }
        prev = cur;
        cur = next;
      }
      segments.push_back(std::move(seg));
    }
    for (int v = 0; v < vertices; ++v) {
      if (segment_of[v] < 0) throw std::logic_error("unrestricted cycle inside a restricted component");
    }

    std::size_t internal = 0;
    for (Segment& seg : segments) {
      auto mates = stable_local(path_prefs(seg.path, -1));
      if (!mates) throw std::logic_error("segment without a stable matching");
      seg.stable = *mates;
      const int k = static_cast<int>(seg.path.size());
      bool front = seg.stable.front() >= 0;
      bool back = seg.stable.back() >= 0;
      if (!front && !back && k >= 3) {
        for (int cut = 0; cut + 1 < k && seg.alternative.empty(); ++cut) {
          auto candidate = stable_local(path_prefs(seg.path, cut));
          if (candidate && candidate->front() >= 0 && candidate->back() >= 0) seg.alternative = *candidate;
        }
      }
    }
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      if (!edges_[e].forbidden) continue;
      for (int end : {edges_[e].u, edges_[e].v}) {
        Segment& seg = segments[segment_of[end]];
        if (seg.path.front() == end) {
          seg.end_edge[0] = e;
        } else if (seg.path.back() == end) {
          seg.end_edge[1] = e;
        } else {
          throw std::logic_error("forbidden edge attached inside a segment");
        }
        if (seg.path.size() == 1) seg.end_edge[1] = seg.end_edge[0];
      }
    }

    resolve_chains(segments, segment_of);

    std::size_t predicted = 0;
    std::vector<bool> covered(vertices, false);
    for (Segment& seg : segments) {
      const auto& mates = seg.use_alternative ? seg.alternative : seg.stable;
      internal += seg.use_alternative ? 1 : 0;
      for (int i = 0; i < static_cast<int>(seg.path.size()); ++i) {
        if (mates[i] < 0) continue;
        covered[seg.path[i]] = true;
        if (mates[i] > i) result_.add(Edge::of(origin_[seg.path[i]], origin_[seg.path[mates[i]]]));
      }
    }
    for (const SplitEdge& e : edges_) {
      if (e.forbidden && !covered[e.u] && !covered[e.v]) ++predicted;
    }
    return predicted + internal;
  }

  // Chooses M or M' for every segment whose stable matching covers neither end
  // but which admits M'. Forbidden edges with a covered fixed end never block;
  // the rest form paths and cycles over the flexible segments.
  void resolve_chains(std::vector<Segment>& segments, const std::vector<int>& segment_of) {
    auto flexible = [&](int s) { return !segments[s].alternative.empty(); };
    auto fixed_covered = [&](int v) {
      const Segment& seg = segments[segment_of[v]];
      int pos = seg.path.front() == v ? 0 : static_cast<int>(seg.path.size()) - 1;
      return seg.stable[pos] >= 0;
    };
    enum class Link { none, pendant, chain };
    // For a flexible segment side: what hangs there.
    auto link = [&](int s, int side) -> std::pair<Link, int> {
      int e = segments[s].end_edge[side];
      if (e < 0) return {Link::none, -1};
      int mine = side == 0 ? segments[s].path.front() : segments[s].path.back();
      int other = edges_[e].u == mine ? edges_[e].v : edges_[e].u;
      if (flexible(segment_of[other])) return {Link::chain, other};
      if (fixed_covered(other)) return {Link::none, -1};
      return {Link::pendant, -1};
    };
    auto side_of = [&](int v) {
      const Segment& seg = segments[segment_of[v]];
      return seg.path.front() == v ? 0 : 1;
    };

    std::vector<bool> done(segments.size(), false);
    auto walk = [&](int start, int entry, bool cycle) {
      int s = start;
      int in = entry;
      bool left_covered = !cycle && link(s, in).first != Link::pendant;
      if (cycle) {
        segments[s].use_alternative = true;
        left_covered = true;
      }
      bool first = true;
      while (true) {
        done[s] = true;
        int out = 1 - in;
        if (!(cycle && first)) segments[s].use_alternative = !left_covered;
        first = false;
        auto [kind, other] = link(s, out);
        bool right_covered = segments[s].use_alternative;
        if (kind == Link::chain) {
          int next = segment_of[other];
          if (done[next]) break;
          in = side_of(other);
          if (segments[next].path.size() == 1) in = 0;
          s = next;
          left_covered = right_covered;
          continue;
        }
        if (kind == Link::pendant && !right_covered) segments[s].use_alternative = true;
        break;
      }
    };
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
      if (done[s] || !flexible(s)) continue;
      for (int side : {0, 1}) {
        if (!done[s] && link(s, side).first != Link::chain) walk(s, side, false);
      }
    }
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
      if (!done[s] && flexible(s)) walk(s, 0, true);
    }
  }

  const Instance& inst_;
  const RestrictionSet& r_;
  Matching result_;
  std::vector<Agent> origin_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<SplitEdge> edges_;
};

}  // namespace

MinBpResult minbp_degree2(const Instance& inst, const RestrictionSet& r) {
  if (inst.max_degree() > 2) throw InvalidArgument("degree-2 solver needs every list of length at most 2");
  r.check_against(inst);
  if (!r.forced_is_matching()) throw StructuralInfeasibility("forced edges share an endpoint");
  RestrictionSet transformed = forced_to_forbidden(inst, r);
  std::size_t predicted = 0;
  Matching m = Degree2Solver(inst, transformed).solve(predicted);
  BlockingReport report = blocking_pairs(inst, m, transformed);
  if (report.count() != predicted) throw std::logic_error("vertex splitting changed the blocking count");
  // Endpoints of a forced edge can only be matched through it; adding it
  // removes that edge from the blockers and cannot create new ones.
  for (const Edge& q : r.forced()) {
    if (!m.matched(q.a) && !m.matched(q.b)) m.add(q);
  }
  report = blocking_pairs(inst, m, r);
  return MinBpResult{std::move(m), std::move(report), true};
}

}  // namespace smr
