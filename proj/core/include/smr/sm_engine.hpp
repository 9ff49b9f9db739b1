#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "smr/model.hpp"

namespace smr {

enum class Proposer { left, right };

Matching gale_shapley(const Instance& inst, Proposer side);

struct Rotation {
  // (left agent, right agent) pairs in cyclic order; eliminating the rotation
  // moves pairs[i].first to pairs[i+1].second.
  std::vector<std::pair<Agent, Agent>> pairs;
};

struct RotationPoset {
  Matching left_optimal;
  Matching right_optimal;
  // Rotations listed in the order a maximal elimination chain exposed them,
  // which is a topological order of the precedence DAG.
  std::vector<Rotation> rotations;
  // predecessors[i]: direct predecessors of rotation i (a generating set).
  std::vector<std::vector<int>> predecessors;
  std::vector<Rational> rotation_weight;

  std::size_t size() const { return rotations.size(); }
  // closure[i] selects rotation i. The selection must be closed.
  Matching matching_of(const std::vector<bool>& closure) const;
  bool is_closed(const std::vector<bool>& closure) const;
};

RotationPoset build_rotation_poset(const Instance& inst, const WeightAssignment& w = {});

struct WeightedSolveResult {
  Matching matching;
  Rational weight;
  std::vector<bool> closure;  // empty for solvers without a rotation certificate
};

WeightedSolveResult min_weight_stable(const Instance& inst, const WeightAssignment& w);

enum class FeasibilityStatus { feasible, infeasible, structurally_infeasible };

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::infeasible;
  std::optional<Matching> matching;
  bool feasible() const { return status == FeasibilityStatus::feasible; }
};

FeasibilityResult sm_restricted_feasible(const Instance& inst, const RestrictionSet& r);

struct ViolationSolveResult {
  Matching matching;
  ViolationReport violations;
};

// Forced edges sharing an endpoint are tolerated here: they count as missing.
ViolationSolveResult sm_min_restricted_violations(const Instance& inst, const RestrictionSet& r);

struct EnumerationResult {
  std::vector<Matching> matchings;
  bool truncated = false;
};

inline constexpr std::size_t kDefaultEnumerationLimit = 10000;

EnumerationResult enumerate_stable_sm(const Instance& inst,
                                      std::size_t limit = kDefaultEnumerationLimit);

// Weight table used for restricted problems on marriage instances:
// forced -1, forbidden +1, otherwise 0.
WeightAssignment restriction_weights(const RestrictionSet& r);

}  // namespace smr
