#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "smr/model.hpp"
#include "smr/sm_engine.hpp"

namespace smr {

// All roommates routines accept marriage instances too; bipartite graphs are
// a special case.
std::optional<Matching> irving(const Instance& inst);

EnumerationResult enumerate_stable_sr(const Instance& inst,
                                      std::size_t limit = kDefaultEnumerationLimit);

FeasibilityResult sr_restricted_feasible(const Instance& inst, const RestrictionSet& r);

struct FractionalStableSolution {
  std::vector<Rational> x;  // aligned with inst.edges()
  Rational objective;
  bool half_integral() const;
};

// Optimal extreme point of the stability LP, or nullopt when the LP is
// infeasible.
std::optional<FractionalStableSolution> solve_stability_lp(const Instance& inst,
                                                           const WeightAssignment& w);

struct ApproxSolveResult {
  WeightedSolveResult result;
  FractionalStableSolution lp;
  // True when the per-cycle cheaper-class rounding was already stable.
  bool direct_rounding = true;
  // True when no stable matching lay inside the LP support and every stable
  // matching had to be enumerated.
  bool exhaustive_fallback = false;
};

// Throws InvalidArgument on negative weights and Error when no stable matching
// exists.
ApproxSolveResult sr_min_weight_2approx(const Instance& inst, const WeightAssignment& w);

enum class ViolationMode { exact, approx2 };

// nullopt when the instance has no stable matching. approx2 throws
// InvalidArgument when 0 < |Q| < |M|.
std::optional<ViolationSolveResult> sr_min_restricted_violations(const Instance& inst,
                                                                 const RestrictionSet& r,
                                                                 ViolationMode mode);

// Weight table for approx2: |Q|/|M| - 1 forced, |Q|/|M| unrestricted,
// |Q|/|M| + 1 forbidden.
WeightAssignment approx2_weights(const Instance& inst, const RestrictionSet& r,
                                 std::size_t stable_size);

std::optional<Matching> sr_flip_subset(const Instance& inst, const RestrictionSet& r, int k);

// Throws InvalidArgument when some list is longer than 2.
std::optional<ViolationSolveResult> sr_degree2_min_violations(const Instance& inst,
                                                              const RestrictionSet& r);

}  // namespace smr
