#include "exact_lp.hpp"

#include <optional>

namespace smr::detail {

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), cell_(rows, std::vector<Rational>(cols + 1)) {}

  Rational& at(int r, int c) { return cell_[r][c]; }
  Rational& rhs(int r) { return cell_[r][cols_]; }

  void pivot(int pr, int pc, std::vector<Rational>& objective, std::vector<int>& basis) {
    Rational inv = 1 / cell_[pr][pc];
    std::vector<int> nonzero;
    for (int c = 0; c <= cols_; ++c) {
      if (sgn(cell_[pr][c]) != 0) {
        cell_[pr][c] *= inv;
        nonzero.push_back(c);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[pc]) == 0) return;
      Rational factor = row[pc];
      for (int c : nonzero) row[c] -= factor * cell_[pr][c];
    };
    for (int r = 0; r < rows_; ++r) {
      if (r != pr) eliminate(cell_[r]);
    }
    eliminate(objective);
    basis[pr] = pc;
  }

  // Bland: lowest entering column with negative reduced cost, lowest basic
  // index among ratio ties. Returns false when unbounded.
  std::optional<bool> step(std::vector<Rational>& objective, std::vector<int>& basis,
                           const std::vector<bool>& enterable) {
    int pc = -1;
    for (int c = 0; c < cols_; ++c) {
      if (enterable[c] && sgn(objective[c]) < 0) {
        pc = c;
        break;
      }
    }
    if (pc < 0) return true;
    int pr = -1;
    Rational best;
    for (int r = 0; r < rows_; ++r) {
      if (sgn(cell_[r][pc]) <= 0) continue;
      Rational ratio = cell_[r][cols_] / cell_[r][pc];
      if (pr < 0 || ratio < best || (ratio == best && basis[r] < basis[pr])) {
        pr = r;
        best = ratio;
      }
    }
    if (pr < 0) return false;
    pivot(pr, pc, objective, basis);
    return std::nullopt;
  }

  std::vector<Rational> objective_row(const std::vector<Rational>& cost, const std::vector<int>& basis) {
    std::vector<Rational> row(cols_ + 1);
    for (int c = 0; c < cols_; ++c) row[c] = cost[c];
    for (int r = 0; r < rows_; ++r) {
      const Rational& cb = cost[basis[r]];
      if (sgn(cb) == 0) continue;
      for (int c = 0; c <= cols_; ++c) {
        if (sgn(cell_[r][c]) != 0) row[c] -= cb * cell_[r][c];
      }
    }
    return row;
  }

  void drop_row(int r, std::vector<int>& basis) {
    cell_.erase(cell_.begin() + r);
    basis.erase(basis.begin() + r);
    --rows_;
  }

  int rows() const { return rows_; }

 private:
  int rows_;
  int cols_;
  std::vector<std::vector<Rational>> cell_;
};

}  // namespace

LpSolution solve_lp(int variables, const std::vector<Rational>& cost, const std::vector<LpRow>& rows) {
  const int m = static_cast<int>(rows.size());
  int slack_count = 0;
  int artificial_count = 0;
  for (const LpRow& row : rows) {
    RowSense sense = row.sense;
    if (sgn(row.rhs) < 0 && sense != RowSense::equal) {
      sense = sense == RowSense::less_equal ? RowSense::greater_equal : RowSense::less_equal;
    }
    if (sense != RowSense::equal) ++slack_count;
    if (sense != RowSense::less_equal) ++artificial_count;
  }
  const int first_slack = variables;
  const int first_artificial = variables + slack_count;
  const int cols = first_artificial + artificial_count;

  Tableau t(m, cols);
  std::vector<int> basis(m);
  int next_slack = first_slack;
  int next_artificial = first_artificial;
  for (int r = 0; r < m; ++r) {
    const LpRow& row = rows[r];
    const bool flip = sgn(row.rhs) < 0;
    RowSense sense = row.sense;
    if (flip && sense != RowSense::equal) {
      sense = sense == RowSense::less_equal ? RowSense::greater_equal : RowSense::less_equal;
    }
    for (const auto& [var, coeff] : row.coeffs) t.at(r, var) += flip ? Rational(-coeff) : coeff;
    t.rhs(r) = flip ? Rational(-row.rhs) : row.rhs;
    if (sense == RowSense::less_equal) {
      t.at(r, next_slack) = 1;
      basis[r] = next_slack++;
    } else {
      if (sense == RowSense::greater_equal) t.at(r, next_slack++) = -1;
      t.at(r, next_artificial) = 1;
      basis[r] = next_artificial++;
    }
  }

  LpSolution out;
  std::vector<bool> enterable(cols, true);
  if (artificial_count > 0) {
    std::vector<Rational> phase1(cols, 0);
    for (int c = first_artificial; c < cols; ++c) phase1[c] = 1;
    std::vector<Rational> objective = t.objective_row(phase1, basis);
    while (!t.step(objective, basis, enterable)) {
    }
    if (sgn(objective[cols]) != 0) {
      out.status = LpStatus::infeasible;
      return out;
    }
    for (int r = 0; r < t.rows();) {
      if (basis[r] < first_artificial) {
        ++r;
        continue;
      }
      int pc = -1;
      for (int c = 0; c < first_artificial; ++c) {
        if (sgn(t.at(r, c)) != 0) {
          pc = c;
          break;
        }
      }
      if (pc < 0) {
        t.drop_row(r, basis);
      } else {
        t.pivot(r, pc, objective, basis);
        ++r;
      }
    }
    for (int c = first_artificial; c < cols; ++c) enterable[c] = false;
  }

  std::vector<Rational> full_cost(cols, 0);
  for (int v = 0; v < variables; ++v) full_cost[v] = cost[v];
  std::vector<Rational> objective = t.objective_row(full_cost, basis);
  while (true) {
    auto done = t.step(objective, basis, enterable);
    if (!done) continue;
    if (!*done) {
      out.status = LpStatus::unbounded;
      return out;
    }
    break;
  }
  out.status = LpStatus::optimal;
  out.x.assign(variables, 0);
  for (int r = 0; r < t.rows(); ++r) {
    if (basis[r] < variables) out.x[basis[r]] = t.rhs(r);
  }
  out.objective = 0;
  for (int v = 0; v < variables; ++v) out.objective += cost[v] * out.x[v];
  return out;
}

}  // namespace smr::detail
