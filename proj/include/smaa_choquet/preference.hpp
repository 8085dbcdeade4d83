#pragma once

// Decision-maker preference statements and their compilation into linear
// constraints over the Möbius coordinates plus the shared margin variable ε.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "smaa_choquet/capacity.hpp"
#include "smaa_choquet/linprog.hpp"

namespace smaa_choquet {

/// Largest criterion count accepted by the monotonicity enumeration.
inline constexpr std::size_t kMaxCompiledCriteria = 15;
inline constexpr double kDefaultEpsilonMin = 1e-6;
/// LP ceiling on ε, keeps max ε bounded when no strict rows exist.
inline constexpr double kEpsilonCeiling = 1.0;

enum class ImportanceKind { kWeak, kStrict, kEqual };
enum class InteractionKind { kSynergy, kRedundancy };
enum class ComparisonKind { kWeak, kStrict, kIndifferent };
enum class IntensityKind { kStrict, kEqual };

/// criterion `first` is at least as / more / equally important as `second`.
struct ImportanceStatement {
  ImportanceKind kind;
  std::size_t first;
  std::size_t second;
  bool operator==(const ImportanceStatement&) const = default;
};

struct InteractionStatement {
  InteractionKind kind;
  std::size_t first;
  std::size_t second;
  bool operator==(const InteractionStatement&) const = default;
};

/// alternative `better` compared to `worse`.
struct ComparisonStatement {
  ComparisonKind kind;
  std::size_t better;
  std::size_t worse;
  bool operator==(const ComparisonStatement&) const = default;
};

/// (a,b) compared to (c,d): C(a) - C(b) versus C(c) - C(d).
struct IntensityStatement {
  IntensityKind kind;
  std::size_t a, b, c, d;
  bool operator==(const IntensityStatement&) const = default;
};

using PreferenceStatement = std::variant<ImportanceStatement, InteractionStatement,
                                         ComparisonStatement, IntensityStatement>;

bool references_alternatives(const PreferenceStatement& s);
bool is_strict(const PreferenceStatement& s);

/// Throws std::invalid_argument when an index is out of range or a
/// criterion pair repeats the same criterion.
void check_statement(const PreferenceStatement& s, std::size_t criteria, std::size_t alternatives);

enum class ConstraintBlock { kMonotonicityBoundary, kCriteria, kAlternatives };

struct RowOrigin {
  ConstraintBlock block = ConstraintBlock::kMonotonicityBoundary;
  std::optional<std::size_t> statement;   // index into the compiled statement list
  std::string description;
};

/// Linear rows over [m({1..n}), m({i,j}) lexicographic, ε].
struct LinearConstraintSystem {
  std::size_t criteria = 0;
  std::vector<LinearRow> rows;
  std::vector<RowOrigin> origins;

  std::size_t capacity_dimension() const { return MobiusCapacity::dimension(criteria); }
  std::size_t variable_count() const { return capacity_dimension() + 1; }
  std::size_t epsilon_index() const { return capacity_dimension(); }

  void append(const LinearConstraintSystem& other);
  /// Signed slack of row r at (coords, epsilon): lhs - rhs for ≥, lhs - rhs for = too.
  double slack(std::size_t r, std::span<const double> coords, double epsilon) const;
  /// Smallest slack over all rows (|slack| counted negative for equalities).
  double min_margin(std::span<const double> coords, double epsilon) const;
};

LinearConstraintSystem compile_mb(std::size_t criteria);

/// Point-valued evaluation matrix, alternatives × criteria.
using PointMatrix = std::vector<std::vector<double>>;

/// E^C and E^A rows for `statements`. Alternative statements need `evals`.
LinearConstraintSystem compile_preferences(std::size_t criteria,
                                           const std::vector<PreferenceStatement>& statements,
                                           const PointMatrix* evals);

/// compile_mb followed by compile_preferences.
LinearConstraintSystem compile_system(std::size_t criteria,
                                      const std::vector<PreferenceStatement>& statements,
                                      const PointMatrix* evals);

struct CompatibilityReport {
  LpStatus status = LpStatus::kInfeasible;
  double epsilon_star = 0.0;     // meaningful when status is optimal
  bool compatible = false;       // optimal and ε* > ε_min
  std::vector<double> point;     // Möbius coordinates of the LP optimum
};

/// Builds the LP "maximize ε subject to the system, ε ≤ 1".
LpProblem epsilon_lp(const LinearConstraintSystem& system);

/// Solves max ε. Throws LpFailure with row provenance on numerical failure.
CompatibilityReport check_compatibility(const LinearConstraintSystem& system,
                                        double epsilon_min = kDefaultEpsilonMin);

class LpFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smaa_choquet
