#pragma once

#include <utility>
#include <vector>

#include "smr/rational.hpp"

namespace smr::detail {

enum class RowSense { less_equal, greater_equal, equal };

struct LpRow {
  std::vector<std::pair<int, Rational>> coeffs;
  RowSense sense = RowSense::less_equal;
  Rational rhs;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational objective;
};

// minimize cost.x subject to rows and x >= 0. Two-phase tableau simplex with
// Bland's rule; the optimum returned is a basic solution.
LpSolution solve_lp(int variables, const std::vector<Rational>& cost,
                    const std::vector<LpRow>& rows);

}  // namespace smr::detail
