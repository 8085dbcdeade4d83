#include "smaa_choquet/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smaa_choquet {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

constexpr double kFeasibilityTolerance = 1e-8;
constexpr double kRatioShift = 1e-9;
constexpr double kRelativePivot = 1e-2;
constexpr double kSolutionTolerance = 1e-7;
constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);

// How an original variable maps onto nonnegative tableau columns.
struct ColumnMap {
  enum class Kind { kShifted, kMirrored, kSplit } kind;
  std::size_t column;   // y (or y+ for split)
  double offset;        // lower bound (shifted) or upper bound (mirrored)
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0), rhs_(rows, 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  double& rhs(std::size_t r) { return rhs_[r]; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& reduced, double& objective) {
    const double p = at(r, c);
    double* prow = &a_[r * cols_];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] /= p;
    rhs_[r] /= p;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* row = &a_[i * cols_];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    const double f = reduced[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced[j] -= f * prow[j];
      reduced[c] = 0.0;
      objective += f * rhs_[r];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
};

enum class PhaseOutcome { kOptimal, kUnbounded, kPivotLimit };

struct SimplexRun {
  Tableau& t;
  std::vector<double>& reduced;   // c_j - z_j, maximize
  double& objective;
  const std::vector<bool>& allowed;
  const std::vector<std::size_t>& row_origin;
  const SimplexOptions& options;
  std::size_t& pivots;
  std::optional<std::size_t>& last_pivot_row;

  // Largest reduced cost enters while pivots make progress; after a
  // degenerate pivot Bland's rule (lowest entering index, lowest leaving
  // basic index) takes over until the objective moves again, which rules
  // out cycling. Ratio test in two passes with a small feasibility shift.
  PhaseOutcome iterate() {
    const double tol = options.pivot_tolerance;
    bool bland = false;
    while (true) {
      std::size_t enter = t.cols();
      for (std::size_t j = 0; j < t.cols(); ++j) {
        if (!allowed[j] || reduced[j] <= tol) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter == t.cols() || reduced[j] > reduced[enter]) enter = j;
      }
      if (enter == t.cols()) return PhaseOutcome::kOptimal;

      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < t.rows(); ++i) {
        const double a = t.at(i, enter);
        if (a > tol) bound = std::min(bound, (std::max(t.rhs(i), 0.0) + kRatioShift) / a);
      }
      if (!std::isfinite(bound)) return PhaseOutcome::kUnbounded;
      double strongest = 0.0;
      for (std::size_t i = 0; i < t.rows(); ++i) {
        const double a = t.at(i, enter);
        if (a > tol && std::max(t.rhs(i), 0.0) / a <= bound) strongest = std::max(strongest, a);
      }
      // Candidates whose pivot element is tiny next to the strongest one are
      // noise; pivoting on them blows up the tableau.
      std::size_t leave = kNoRow;
      for (std::size_t i = 0; i < t.rows(); ++i) {
        const double a = t.at(i, enter);
        if (a < kRelativePivot * strongest || a <= tol) continue;
        if (std::max(t.rhs(i), 0.0) / a > bound) continue;
        if (leave == kNoRow) {
          leave = i;
        } else if (bland ? t.basis(i) < t.basis(leave) : a > t.at(leave, enter)) {
          leave = i;
        }
      }
      if (pivots >= options.max_pivots) return PhaseOutcome::kPivotLimit;
      const double before = objective;
      t.pivot(leave, enter, reduced, objective);
      ++pivots;
      bland = !(objective > before + tol);
      if (row_origin[leave] != kNoRow) {
        last_pivot_row = row_origin[leave];
      } else {
        last_pivot_row.reset();
      }
      for (std::size_t i = 0; i < t.rows(); ++i) {
        if (t.rhs(i) < 0.0) t.rhs(i) = 0.0;
      }
    }
  }
};

}  // namespace

double max_violation(const LpProblem& problem, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& row : problem.rows) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) lhs += row.coefficients[k] * x[k];
    switch (row.relation) {
      case Relation::kGreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
      case Relation::kLessEqual: worst = std::max(worst, lhs - row.rhs); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
    }
  }
  for (std::size_t k = 0; k < problem.bounds.size(); ++k) {
    worst = std::max(worst, problem.bounds[k].lower - x[k]);
    worst = std::max(worst, x[k] - problem.bounds[k].upper);
  }
  return worst;
}

LpSolution solve(const LpProblem& problem, const SimplexOptions& options) {
  const std::size_t nvars = problem.objective.size();
  if (nvars == 0) throw std::invalid_argument("LP needs at least one variable");
  if (problem.bounds.size() != nvars) {
    throw std::invalid_argument("LP bound list length differs from variable count");
  }
  for (const auto& row : problem.rows) {
    if (row.coefficients.size() != nvars) {
      throw std::invalid_argument("LP row length differs from variable count");
    }
  }

  // Map each variable onto nonnegative structural columns.
  std::vector<ColumnMap> maps;
  maps.reserve(nvars);
  std::size_t structural = 0;
  struct BoundRow { std::size_t column; double width; };
  std::vector<BoundRow> bound_rows;
  for (const auto& b : problem.bounds) {
    if (b.lower > b.upper) {
      LpSolution out;
      out.status = LpStatus::kInfeasible;
      out.message = "variable bounds are empty";
      return out;
    }
    if (std::isfinite(b.lower)) {
      maps.push_back({ColumnMap::Kind::kShifted, structural, b.lower});
      if (std::isfinite(b.upper)) bound_rows.push_back({structural, b.upper - b.lower});
      structural += 1;
    } else if (std::isfinite(b.upper)) {
      maps.push_back({ColumnMap::Kind::kMirrored, structural, b.upper});
      structural += 1;
    } else {
      maps.push_back({ColumnMap::Kind::kSplit, structural, 0.0});
      structural += 2;
    }
  }

  // Rows in structural space: coefficients, relation, rhs, origin.
  struct StdRow {
    std::vector<double> a;
    Relation rel;
    double b;
    std::size_t origin;
  };
  std::vector<StdRow> rows;
  rows.reserve(problem.rows.size() + bound_rows.size());
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    const auto& src = problem.rows[r];
    StdRow row{std::vector<double>(structural, 0.0), src.relation, src.rhs, r};
    for (std::size_t k = 0; k < nvars; ++k) {
      const double c = src.coefficients[k];
      if (c == 0.0) continue;
      const auto& m = maps[k];
      switch (m.kind) {
        case ColumnMap::Kind::kShifted:
          row.a[m.column] += c;
          row.b -= c * m.offset;
          break;
        case ColumnMap::Kind::kMirrored:
          row.a[m.column] -= c;
          row.b -= c * m.offset;
          break;
        case ColumnMap::Kind::kSplit:
          row.a[m.column] += c;
          row.a[m.column + 1] -= c;
          break;
      }
    }
    rows.push_back(std::move(row));
  }
  for (const auto& br : bound_rows) {
    StdRow row{std::vector<double>(structural, 0.0), Relation::kLessEqual, br.width, kNoRow};
    row.a[br.column] = 1.0;
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    // a·y >= 0 becomes -a·y <= 0, whose slack is a feasible starting basic variable.
    if (row.b == 0.0 && row.rel == Relation::kGreaterEqual) {
      for (double& v : row.a) v = -v;
      row.rel = Relation::kLessEqual;
    }
    if (row.b < 0.0) {
      for (double& v : row.a) v = -v;
      row.b = -row.b;
      if (row.rel == Relation::kGreaterEqual) {
        row.rel = Relation::kLessEqual;
      } else if (row.rel == Relation::kLessEqual) {
        row.rel = Relation::kGreaterEqual;
      }
    }
  }

  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (const auto& row : rows) {
    if (row.rel != Relation::kEqual) ++slacks;
    if (row.rel != Relation::kLessEqual) ++artificials;
  }
  const std::size_t cols = structural + slacks + artificials;
  Tableau t(rows.size(), cols);
  std::vector<std::size_t> row_origin(rows.size());
  std::vector<bool> allowed(cols, true);
  {
    std::size_t s = structural;
    std::size_t a = structural + slacks;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      for (std::size_t j = 0; j < structural; ++j) t.at(i, j) = row.a[j];
      t.rhs(i) = row.b;
      row_origin[i] = row.origin;
      switch (row.rel) {
        case Relation::kLessEqual:
          t.at(i, s) = 1.0;
          t.basis(i) = s++;
          break;
        case Relation::kGreaterEqual:
          t.at(i, s++) = -1.0;
          t.at(i, a) = 1.0;
          t.basis(i) = a++;
          break;
        case Relation::kEqual:
          t.at(i, a) = 1.0;
          t.basis(i) = a++;
          break;
      }
    }
  }
  const std::size_t first_artificial = structural + slacks;

  LpSolution out;
  std::vector<double> reduced(cols, 0.0);
  double objective = 0.0;

  // Phase one: maximize -(sum of artificials).
  if (artificials > 0) {
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.basis(i) >= first_artificial) {
        for (std::size_t j = 0; j < cols; ++j) reduced[j] += t.at(i, j);
        objective -= t.rhs(i);
      }
    }
    for (std::size_t j = first_artificial; j < cols; ++j) reduced[j] = 0.0;
    SimplexRun run{t, reduced, objective, allowed, row_origin, options, out.pivots,
                   out.last_pivot_row};
    const auto outcome = run.iterate();
    if (outcome == PhaseOutcome::kPivotLimit) {
      out.status = LpStatus::kNumericalFailure;
      out.message = "pivot limit reached in phase one";
      return out;
    }
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.basis(i) >= first_artificial) infeasibility += t.rhs(i);
    }
    if (infeasibility > kFeasibilityTolerance) {
      out.status = LpStatus::kInfeasible;
      out.message = "phase one ended with positive artificial sum";
      return out;
    }
    // Drive zero-level artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basis(i) < first_artificial) {
        ++i;
        continue;
      }
      std::size_t enter = cols;
      double largest = options.pivot_tolerance;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::abs(t.at(i, j)) > largest) {
          largest = std::abs(t.at(i, j));
          enter = j;
        }
      }
      if (enter == cols) {
        t.drop_row(i);
        row_origin.erase(row_origin.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      double dummy = 0.0;
      std::vector<double> scratch(cols, 0.0);
      t.pivot(i, enter, scratch, dummy);
      ++out.pivots;
      ++i;
    }
    for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;
  }

  // Phase two objective in structural columns.
  std::vector<double> cost(cols, 0.0);
  double constant = 0.0;
  for (std::size_t k = 0; k < nvars; ++k) {
    const double c = problem.objective[k];
    const auto& m = maps[k];
    switch (m.kind) {
      case ColumnMap::Kind::kShifted:
        cost[m.column] += c;
        constant += c * m.offset;
        break;
      case ColumnMap::Kind::kMirrored:
        cost[m.column] -= c;
        constant += c * m.offset;
        break;
      case ColumnMap::Kind::kSplit:
        cost[m.column] += c;
        cost[m.column + 1] -= c;
        break;
    }
  }
  reduced = cost;
  objective = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const double cb = cost[t.basis(i)];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < cols; ++j) reduced[j] -= cb * t.at(i, j);
    objective += cb * t.rhs(i);
  }
  for (std::size_t j = first_artificial; j < cols; ++j) reduced[j] = 0.0;
  SimplexRun run{t, reduced, objective, allowed, row_origin, options, out.pivots,
                 out.last_pivot_row};
  const auto outcome = run.iterate();
  if (outcome == PhaseOutcome::kPivotLimit) {
    out.status = LpStatus::kNumericalFailure;
    out.message = "pivot limit reached in phase two";
    return out;
  }
  if (outcome == PhaseOutcome::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    out.message = "objective unbounded";
    return out;
  }

  std::vector<double> y(cols, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) y[t.basis(i)] = t.rhs(i);
  out.point.resize(nvars);
  for (std::size_t k = 0; k < nvars; ++k) {
    const auto& m = maps[k];
    switch (m.kind) {
      case ColumnMap::Kind::kShifted: out.point[k] = m.offset + y[m.column]; break;
      case ColumnMap::Kind::kMirrored: out.point[k] = m.offset - y[m.column]; break;
      case ColumnMap::Kind::kSplit: out.point[k] = y[m.column] - y[m.column + 1]; break;
    }
  }
  out.value = 0.0;
  for (std::size_t k = 0; k < nvars; ++k) out.value += problem.objective[k] * out.point[k];
  out.status = LpStatus::kOptimal;
  if (const double v = max_violation(problem, out.point); v > kSolutionTolerance) {
    out.status = LpStatus::kNumericalFailure;
    out.message = "optimal basis violates the constraints by " + std::to_string(v);
  }
  return out;
}

}  // namespace smaa_choquet
