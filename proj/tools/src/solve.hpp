#pragma once

#include <optional>
#include <string>

#include "report.hpp"

namespace smr::cli {

struct SolveRequest {
  std::string problem = "min-bp";
  std::string algo;  // empty selects the default for the problem and instance kind
  std::optional<int> k;
};

struct SolveOutcome {
  json record;
  // Objective of the returned matching: blocking pairs, violations, weight, or
  // 0 for feasibility. Empty when no matching was returned.
  std::optional<Rational> value;
  bool found() const { return value.has_value(); }
};

// Throws InvalidArgument for unknown problems or algorithms that do not fit
// the instance.
SolveOutcome solve_instance(const Instance& inst, const RestrictionSet& r, const WeightAssignment& w,
                            const SolveRequest& request);

struct OracleOutcome {
  std::optional<Rational> value;  // empty when no matching qualifies
};

// Exhaustive reference value for a solve problem.
OracleOutcome oracle_value(const Instance& inst, const RestrictionSet& r, const std::string& problem,
                           const OracleGuard& guard);

}  // namespace smr::cli
