#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "smr/model.hpp"
#include "smr/source.hpp"

namespace smr {

struct OracleGuard {
  int max_agents = 16;
  bool override_guard = false;
};

// Visits every matching (including the empty one) exactly once. Return false
// from the visitor to stop early. Throws SizeGuardExceeded past the guard.
void enum_matchings(const Instance& inst, const std::function<bool(const Matching&)>& visit,
                    const OracleGuard& guard = {});

std::size_t count_matchings(const Instance& inst, const OracleGuard& guard = {});

struct OracleValue {
  Matching witness;  // lexicographically smallest optimum
  std::size_t value = 0;
};

// Throws StructuralInfeasibility when Q is not a matching.
OracleValue oracle_min_bp(const Instance& inst, const RestrictionSet& r,
                          const OracleGuard& guard = {});

// nullopt when there is no stable matching.
std::optional<OracleValue> oracle_min_violations(const Instance& inst, const RestrictionSet& r,
                                                 const OracleGuard& guard = {});

std::optional<OracleValue> oracle_max_forced(const Instance& inst, const std::vector<Edge>& forced,
                                             const OracleGuard& guard = {});

// All stable matchings by exhaustive enumeration, in lexicographic order.
std::vector<Matching> oracle_stable_matchings(const Instance& inst,
                                              const OracleGuard& guard = {});

struct SourceGuard {
  int max_size = 20;
  bool override_guard = false;
};

int oracle_vertex_cover(const Graph& g, const SourceGuard& guard = {});
std::vector<int> oracle_vertex_cover_witness(const Graph& g, const SourceGuard& guard = {});
int oracle_max_independent_set(const Graph& g, const SourceGuard& guard = {});

// Is there a maximal matching with exactly k edges? The witness variant
// returns the lexicographically first one.
bool oracle_exact_maximal_matching(const Graph& g, int k, const SourceGuard& guard = {});
std::optional<std::vector<std::pair<int, int>>> oracle_exact_maximal_matching_witness(
    const Graph& g, int k, const SourceGuard& guard = {});

// Minimum number of true variables in a satisfying assignment, or nullopt.
std::optional<int> oracle_min_true_assignment(const CnfFormula& f, const SourceGuard& guard = {});

std::optional<std::vector<bool>> oracle_satisfying_assignment(const CnfFormula& f,
                                                              const SourceGuard& guard = {});

// Minimum blocking edges over perfect matchings, or nullopt when none exists.
std::optional<OracleValue> oracle_psmi(const Instance& inst, const OracleGuard& guard = {});

}  // namespace smr
