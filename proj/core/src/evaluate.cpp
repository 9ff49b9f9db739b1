#include "smr/evaluate.hpp"

#include <algorithm>

#include "smr/errors.hpp"

namespace smr {

bool blocks(const Instance& inst, const Matching& m, const Edge& e) {
  if (m.contains(e)) return false;
  return inst.prefers(e.a, e.b, m.partner(e.a)) && inst.prefers(e.b, e.a, m.partner(e.b));
}

BlockingReport blocking_pairs(const Instance& inst, const Matching& m, const RestrictionSet& r) {
  auto errors = validate_matching(inst, m);
  if (!errors.empty()) throw InvalidArgument("invalid matching: " + errors.front());
  BlockingReport report;
  for (const Edge& e : inst.edges()) {
    if (!blocks(inst, m, e)) continue;
    report.blocking.push_back(e);
    if (r.is_forbidden(e)) {
      ++report.forbidden_blockers;
    } else {
      ++report.unrestricted_blockers;
    }
  }
  return report;
}

bool is_stable(const Instance& inst, const Matching& m) {
  for (const Edge& e : inst.edges()) {
    if (blocks(inst, m, e)) return false;
  }
  return true;
}

ViolationReport violation_counts(const Matching& m, const RestrictionSet& r) {
  ViolationReport v;
  for (const Edge& e : r.forbidden()) {
    if (e.b < m.agents() && m.contains(e)) ++v.forbidden_used;
  }
  for (const Edge& e : r.forced()) {
    if (e.b >= m.agents() || !m.contains(e)) ++v.forced_missing;
  }
  return v;
}

bool satisfies(const Matching& m, const RestrictionSet& r) { return violation_counts(m, r).total() == 0; }

RestrictionSet forced_to_forbidden(const Instance& inst, const RestrictionSet& r) {
  if (r.forced().empty()) return r;
  std::vector<Edge> forbidden = r.forbidden();
  for (const Edge& q : r.forced()) {
    for (Agent end : {q.a, q.b}) {
      for (Agent other : inst.prefs(end)) {
        Edge e = Edge::of(end, other);
        if (!r.is_forced(e)) forbidden.push_back(e);
      }
    }
  }
  return RestrictionSet(std::move(forbidden), {});
}

std::vector<std::string> validate_matching(const Instance& inst, std::span<const Edge> pairs) {
  std::vector<std::string> errors;
  std::vector<int> seen(inst.size(), 0);
  for (const Edge& raw : pairs) {
    if (raw.a < 0 || raw.b < 0 || raw.a >= inst.size() || raw.b >= inst.size()) {
      errors.push_back("agent out of range");
      continue;
    }
    Edge e = Edge::of(raw.a, raw.b);
    if (!inst.has_edge(e)) errors.push_back("non-edge " + inst.name(e.a) + inst.name(e.b));
    for (Agent a : {e.a, e.b}) {
      if (++seen[a] == 2) errors.push_back("duplicated agent " + inst.name(a));
    }
  }
  return errors;
}

std::vector<std::string> validate_matching(const Instance& inst, const Matching& m) {
  if (m.agents() != inst.size()) return {"matching is sized for a different instance"};
  auto pairs = m.pairs();
  return validate_matching(inst, std::span<const Edge>(pairs));
}

std::vector<Agent> matched_agents(const Matching& m) {
  std::vector<Agent> out;
  for (Agent a = 0; a < m.agents(); ++a) {
    if (m.matched(a)) out.push_back(a);
  }
  return out;
}

}  // namespace smr
