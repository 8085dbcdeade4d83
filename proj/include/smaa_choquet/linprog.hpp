#pragma once

// Dense two-phase primal simplex. Sized for the small systems built here
// (tens to a few hundred variables); no sparsity, no warm starts.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace smaa_choquet {

enum class Relation { kGreaterEqual, kEqual, kLessEqual };

struct LinearRow {
  std::vector<double> coefficients;
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
};

struct VariableBound {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();

  static VariableBound free() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
  static VariableBound nonnegative() { return {}; }
  static VariableBound box(double lo, double hi) { return {lo, hi}; }
};

/// maximize objective·x subject to rows and bounds.
struct LpProblem {
  std::vector<double> objective;
  std::vector<LinearRow> rows;
  std::vector<VariableBound> bounds;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  double value = 0.0;
  std::vector<double> point;
  std::size_t pivots = 0;
  /// Constraint row of the last pivot, when one happened (diagnostics).
  std::optional<std::size_t> last_pivot_row;
  std::string message;
};

struct SimplexOptions {
  std::size_t max_pivots = 50'000;
  double pivot_tolerance = 1e-9;
};

/// Two-phase primal simplex: largest-coefficient pricing, switching to
/// Bland's rule while pivots are degenerate. Identical inputs give an
/// identical pivot sequence and a bit-identical result.
LpSolution solve(const LpProblem& problem, const SimplexOptions& options = {});

/// Largest violation of any row or bound at `x` (0 when feasible).
double max_violation(const LpProblem& problem, const std::vector<double>& x);

}  // namespace smaa_choquet
