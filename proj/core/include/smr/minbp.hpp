#pragma once

#include <optional>

#include "smr/model.hpp"

namespace smr {

struct MinBpResult {
  Matching matching;
  BlockingReport bp;
  bool optimal = false;
};

// Branch and bound. With a cutoff, only matchings with at most that many
// blocking edges are searched for and nullopt means none exists. Without a
// cutoff the result is always present. Throws StructuralInfeasibility when Q
// is not a matching.
std::optional<MinBpResult> minbp_exact(const Instance& inst, const RestrictionSet& r,
                                       std::optional<std::size_t> cutoff = std::nullopt);

// Marriage instances only; forbidden edges only.
std::optional<Matching> minbp_bounded_forbidden(const Instance& inst,
                                                const RestrictionSet& forbidden, int k);

// Marriage or roommates; the inner test is the matching feasibility routine.
std::optional<Matching> minbp_bounded_blocking(const Instance& inst, const RestrictionSet& r,
                                               int l);

// Every list of length at most 2. Throws InvalidArgument otherwise.
MinBpResult minbp_degree2(const Instance& inst, const RestrictionSet& r);

}  // namespace smr
