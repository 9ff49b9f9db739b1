#pragma once

#include <span>
#include <string>
#include <vector>

#include "smr/model.hpp"

namespace smr {

bool blocks(const Instance& inst, const Matching& m, const Edge& e);

// Throws InvalidArgument when m is not a matching of inst.
BlockingReport blocking_pairs(const Instance& inst, const Matching& m,
                              const RestrictionSet& r = {});

bool is_stable(const Instance& inst, const Matching& m);

ViolationReport violation_counts(const Matching& m, const RestrictionSet& r);

bool satisfies(const Matching& m, const RestrictionSet& r);

RestrictionSet forced_to_forbidden(const Instance& inst, const RestrictionSet& r);

// Empty result means valid.
std::vector<std::string> validate_matching(const Instance& inst, std::span<const Edge> pairs);
std::vector<std::string> validate_matching(const Instance& inst, const Matching& m);

// Sorted list of matched agents.
std::vector<Agent> matched_agents(const Matching& m);

}  // namespace smr
