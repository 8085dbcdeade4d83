#include "smaa_choquet/preference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace smaa_choquet {

namespace {

std::string subset_label(std::size_t i, CriterionSet t, std::size_t n) {
  std::string out = "m({" + std::to_string(i + 1) + "})";
  for (std::size_t j = 0; j < n; ++j) {
    if (t & (CriterionSet{1} << j)) {
      out += " + m({" + std::to_string(std::min(i, j) + 1) + "," +
             std::to_string(std::max(i, j) + 1) + "})";
    }
  }
  return out + " >= 0";
}

// Row with Shapley(i) - Shapley(j) coefficients.
std::vector<double> shapley_difference(std::size_t n, std::size_t i, std::size_t j) {
  std::vector<double> a(MobiusCapacity::dimension(n) + 1, 0.0);
  a[i] += 1.0;
  a[j] -= 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != i) a[n + pair_index(n, i, k)] += 0.5;
    if (k != j) a[n + pair_index(n, j, k)] -= 0.5;
  }
  return a;
}

// Adds sign * (coefficients of C(alternative)) to the row, in Möbius coordinate order.
void add_choquet_terms(std::vector<double>& a, std::size_t n, const std::vector<double>& x,
                       double sign) {
  for (std::size_t i = 0; i < n; ++i) a[i] += sign * x[i];
  std::size_t p = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++p) a[p] += sign * std::min(x[i], x[j]);
  }
}

const std::vector<double>& alternative_row(const PointMatrix& evals, std::size_t k,
                                           std::size_t n) {
  if (k >= evals.size()) {
    throw std::invalid_argument("statement references alternative " + std::to_string(k + 1) +
                                " beyond the evaluation matrix");
  }
  if (evals[k].size() != n) throw std::invalid_argument("evaluation matrix is not rectangular");
  return evals[k];
}

}  // namespace

bool references_alternatives(const PreferenceStatement& s) {
  return std::holds_alternative<ComparisonStatement>(s) ||
         std::holds_alternative<IntensityStatement>(s);
}

bool is_strict(const PreferenceStatement& s) {
  return std::visit(
      [](const auto& st) -> bool {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, ImportanceStatement>) {
          return st.kind == ImportanceKind::kStrict;
        } else if constexpr (std::is_same_v<T, InteractionStatement>) {
          return true;
        } else if constexpr (std::is_same_v<T, ComparisonStatement>) {
          return st.kind == ComparisonKind::kStrict;
        } else {
          return st.kind == IntensityKind::kStrict;
        }
      },
      s);
}

void check_statement(const PreferenceStatement& s, std::size_t criteria,
                     std::size_t alternatives) {
  auto criterion = [&](std::size_t i) {
    if (i >= criteria) {
      throw std::invalid_argument("unknown criterion index " + std::to_string(i + 1));
    }
  };
  auto alternative = [&](std::size_t k) {
    if (k >= alternatives) {
      throw std::invalid_argument("unknown alternative index " + std::to_string(k + 1));
    }
  };
  std::visit(
      [&](const auto& st) {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, ImportanceStatement> ||
                      std::is_same_v<T, InteractionStatement>) {
          criterion(st.first);
          criterion(st.second);
          if (st.first == st.second) {
            throw std::invalid_argument("criterion statement needs two distinct criteria");
          }
        } else if constexpr (std::is_same_v<T, ComparisonStatement>) {
          alternative(st.better);
          alternative(st.worse);
        } else {
          alternative(st.a);
          alternative(st.b);
          alternative(st.c);
          alternative(st.d);
        }
      },
      s);
}

void LinearConstraintSystem::append(const LinearConstraintSystem& other) {
  if (other.criteria != criteria) throw std::invalid_argument("criterion count mismatch");
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  origins.insert(origins.end(), other.origins.begin(), other.origins.end());
}

double LinearConstraintSystem::slack(std::size_t r, std::span<const double> coords,
                                     double epsilon) const {
  const auto& row = rows.at(r);
  double lhs = row.coefficients[epsilon_index()] * epsilon;
  for (std::size_t k = 0; k < coords.size(); ++k) lhs += row.coefficients[k] * coords[k];
  return row.relation == Relation::kLessEqual ? row.rhs - lhs : lhs - row.rhs;
}

double LinearConstraintSystem::min_margin(std::span<const double> coords, double epsilon) const {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double s = slack(r, coords, epsilon);
    worst = std::min(worst, rows[r].relation == Relation::kEqual ? -std::abs(s) : s);
  }
  return worst;
}

LinearConstraintSystem compile_mb(std::size_t n) {
  if (n < 2) throw std::invalid_argument("at least two criteria are required");
  if (n > kMaxCompiledCriteria) {
    throw std::invalid_argument("monotonicity enumeration is capped at " +
                                std::to_string(kMaxCompiledCriteria) + " criteria");
  }
  LinearConstraintSystem sys;
  sys.criteria = n;
  const std::size_t width = sys.variable_count();
  {
    std::vector<double> a(width, 1.0);
    a[sys.epsilon_index()] = 0.0;
    sys.rows.push_back({std::move(a), Relation::kEqual, 1.0});
    sys.origins.push_back({ConstraintBlock::kMonotonicityBoundary, {}, "normalization"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> a(width, 0.0);
    a[i] = 1.0;
    sys.rows.push_back({std::move(a), Relation::kGreaterEqual, 0.0});
    sys.origins.push_back({ConstraintBlock::kMonotonicityBoundary, {},
                           "m({" + std::to_string(i + 1) + "}) >= 0"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const CriterionSet others = full_set(n) & ~(CriterionSet{1} << i);
    // Ascending submask order keeps row order independent of bit tricks.
    for (CriterionSet t = 1; t <= others; ++t) {
      if ((t & ~others) != 0) continue;
      std::vector<double> a(width, 0.0);
      a[i] = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (t & (CriterionSet{1} << j)) a[n + pair_index(n, i, j)] = 1.0;
      }
      sys.rows.push_back({std::move(a), Relation::kGreaterEqual, 0.0});
      sys.origins.push_back({ConstraintBlock::kMonotonicityBoundary, {}, subset_label(i, t, n)});
    }
  }
  return sys;
}

LinearConstraintSystem compile_preferences(std::size_t n,
                                           const std::vector<PreferenceStatement>& statements,
                                           const PointMatrix* evals) {
  LinearConstraintSystem sys;
  sys.criteria = n;
  const std::size_t width = sys.variable_count();
  const std::size_t eps = sys.epsilon_index();
  for (std::size_t id = 0; id < statements.size(); ++id) {
    const auto& statement = statements[id];
    if (references_alternatives(statement) && evals == nullptr) {
      throw std::invalid_argument("statement " + std::to_string(id + 1) +
                                  " compares alternatives but no point evaluations were given");
    }
    check_statement(statement, n,
                    evals ? evals->size() : std::numeric_limits<std::size_t>::max());
    LinearRow row{std::vector<double>(width, 0.0), Relation::kGreaterEqual, 0.0};
    ConstraintBlock block = ConstraintBlock::kCriteria;
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, ImportanceStatement>) {
            row.coefficients = shapley_difference(n, st.first, st.second);
            if (st.kind == ImportanceKind::kEqual) row.relation = Relation::kEqual;
          } else if constexpr (std::is_same_v<T, InteractionStatement>) {
            row.coefficients[n + pair_index(n, st.first, st.second)] =
                st.kind == InteractionKind::kSynergy ? 1.0 : -1.0;
          } else if constexpr (std::is_same_v<T, ComparisonStatement>) {
            block = ConstraintBlock::kAlternatives;
            add_choquet_terms(row.coefficients, n, alternative_row(*evals, st.better, n), 1.0);
            add_choquet_terms(row.coefficients, n, alternative_row(*evals, st.worse, n), -1.0);
            if (st.kind == ComparisonKind::kIndifferent) row.relation = Relation::kEqual;
          } else {
            block = ConstraintBlock::kAlternatives;
            add_choquet_terms(row.coefficients, n, alternative_row(*evals, st.a, n), 1.0);
            add_choquet_terms(row.coefficients, n, alternative_row(*evals, st.b, n), -1.0);
            add_choquet_terms(row.coefficients, n, alternative_row(*evals, st.c, n), -1.0);
            add_choquet_terms(row.coefficients, n, alternative_row(*evals, st.d, n), 1.0);
            if (st.kind == IntensityKind::kEqual) row.relation = Relation::kEqual;
          }
        },
        statement);
    if (is_strict(statement)) row.coefficients[eps] = -1.0;
    sys.rows.push_back(std::move(row));
    sys.origins.push_back({block, id, "statement " + std::to_string(id + 1)});
  }
  return sys;
}

LinearConstraintSystem compile_system(std::size_t n,
                                      const std::vector<PreferenceStatement>& statements,
                                      const PointMatrix* evals) {
  auto sys = compile_mb(n);
  sys.append(compile_preferences(n, statements, evals));
  return sys;
}

LpProblem epsilon_lp(const LinearConstraintSystem& system) {
  LpProblem lp;
  const std::size_t width = system.variable_count();
  lp.objective.assign(width, 0.0);
  lp.objective[system.epsilon_index()] = 1.0;
  lp.rows = system.rows;
  lp.bounds.assign(width, VariableBound::free());
  lp.bounds[system.epsilon_index()] =
      VariableBound{-std::numeric_limits<double>::infinity(), kEpsilonCeiling};
  return lp;
}

CompatibilityReport check_compatibility(const LinearConstraintSystem& system,
                                        double epsilon_min) {
  const auto solution = solve(epsilon_lp(system));
  CompatibilityReport report;
  report.status = solution.status;
  if (solution.status == LpStatus::kNumericalFailure) {
    std::string where = "no pivot";
    if (solution.last_pivot_row && *solution.last_pivot_row < system.origins.size()) {
      where = system.origins[*solution.last_pivot_row].description;
    }
    throw LpFailure("compatibility LP failed (" + solution.message + "), last pivot on " + where);
  }
  if (solution.status != LpStatus::kOptimal) return report;
  report.epsilon_star = solution.value;
  report.compatible = solution.value > epsilon_min;
  report.point.assign(solution.point.begin(),
                      solution.point.begin() +
                          static_cast<std::ptrdiff_t>(system.capacity_dimension()));
  return report;
}

}  // namespace smaa_choquet
