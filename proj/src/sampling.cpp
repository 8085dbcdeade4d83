#include "smaa_choquet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace smaa_choquet {

namespace {

constexpr double kDropTolerance = 1e-12;
constexpr double kEmptyChord = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

// Orthogonalizes v against `basis` twice (classical GS, reorthogonalized).
void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const double c = dot(q, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
    }
  }
}

bool normalize(std::vector<double>& v) {
  const double norm = std::sqrt(dot(v, v));
  if (norm <= kDropTolerance) return false;
  for (double& x : v) x /= norm;
  return true;
}

}  // namespace

double epsilon_freeze(double epsilon_star, double epsilon_min) {
  return std::min(epsilon_star / 2.0, epsilon_min * 10.0);
}

SamplerRows sampler_rows(const LinearConstraintSystem& system, double epsilon) {
  SamplerRows out;
  const std::size_t d = system.capacity_dimension();
  const std::size_t e = system.epsilon_index();
  for (const auto& row : system.rows) {
    LinearRow r{{row.coefficients.begin(), row.coefficients.begin() + static_cast<std::ptrdiff_t>(d)},
                row.relation, row.rhs - row.coefficients[e] * epsilon};
    if (r.relation == Relation::kLessEqual) {
      for (double& c : r.coefficients) c = -c;
      r.rhs = -r.rhs;
      r.relation = Relation::kGreaterEqual;
    }
    if (r.relation == Relation::kEqual) {
      // Vacuous rows (e.g. indifference between identical alternatives) carry no direction.
      const bool zero = std::all_of(r.coefficients.begin(), r.coefficients.end(),
                                    [](double c) { return c == 0.0; });
      if (zero) continue;
      out.equalities.push_back(std::move(r));
    } else {
      out.inequalities.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<std::vector<double>> null_space_basis(const std::vector<LinearRow>& equalities,
                                                  std::size_t dimension) {
  std::vector<std::vector<double>> row_space;
  for (const auto& row : equalities) {
    std::vector<double> v(row.coefficients.begin(), row.coefficients.end());
    orthogonalize(v, row_space);
    if (normalize(v)) row_space.push_back(std::move(v));
  }
  std::vector<std::vector<double>> all = row_space;
  std::vector<std::vector<double>> basis;
  for (std::size_t i = 0; i < dimension && all.size() < dimension; ++i) {
    std::vector<double> v(dimension, 0.0);
    v[i] = 1.0;
    orthogonalize(v, all);
    if (normalize(v)) {
      all.push_back(v);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

SeedPoint seed_point(const LinearConstraintSystem& system, double epsilon_min) {
  const auto report = check_compatibility(system, epsilon_min);
  if (report.status != LpStatus::kOptimal) {
    throw IncompatibleSystem("preference constraints are infeasible", 0.0);
  }
  if (!report.compatible) {
    throw IncompatibleSystem("no compatible capacity: epsilon* = " +
                                 std::to_string(report.epsilon_star) +
                                 " <= " + std::to_string(epsilon_min),
                             report.epsilon_star);
  }
  const double eps = report.epsilon_star / 2.0;
  const auto rows = sampler_rows(system, eps);
  const std::size_t d = system.capacity_dimension();

  // maximize t s.t. equalities, a·x - t >= b, 0 <= t <= 1
  LpProblem lp;
  lp.objective.assign(d + 1, 0.0);
  lp.objective[d] = 1.0;
  lp.bounds.assign(d + 1, VariableBound::free());
  lp.bounds[d] = VariableBound::box(0.0, 1.0);
  for (const auto& r : rows.equalities) {
    LinearRow row{r.coefficients, Relation::kEqual, r.rhs};
    row.coefficients.push_back(0.0);
    lp.rows.push_back(std::move(row));
  }
  for (const auto& r : rows.inequalities) {
    LinearRow row{r.coefficients, Relation::kGreaterEqual, r.rhs};
    row.coefficients.push_back(-1.0);
    lp.rows.push_back(std::move(row));
  }
  const auto centred = solve(lp);
  SeedPoint seed;
  seed.epsilon_star = report.epsilon_star;
  if (centred.status == LpStatus::kOptimal) {
    seed.coords.assign(centred.point.begin(), centred.point.begin() + static_cast<std::ptrdiff_t>(d));
  } else {
    seed.coords = report.point;
  }
  seed.margin = std::numeric_limits<double>::infinity();
  for (const auto& r : rows.inequalities) {
    seed.margin = std::min(seed.margin, dot(r.coefficients, seed.coords) - r.rhs);
  }
  return seed;
}

PolytopeSampler::PolytopeSampler(SamplerRows rows, std::vector<double> start, std::uint64_t seed)
    : rows_(std::move(rows)), point_(std::move(start)), rng_(seed) {
  const std::size_t d = point_.size();
  for (const auto* block : {&rows_.equalities, &rows_.inequalities}) {
    for (const auto& r : *block) {
      if (r.coefficients.size() != d) {
        throw std::invalid_argument("sampler row length differs from point dimension");
      }
    }
  }
  basis_ = null_space_basis(rows_.equalities, d);
  direction_.assign(d, 0.0);
  coeffs_.assign(basis_.size(), 0.0);
  if (min_margin() < -kConstraintTolerance) {
    throw std::invalid_argument("sampler start point violates the constraints by " +
                                std::to_string(-min_margin()));
  }
}

PolytopeSampler PolytopeSampler::from_system(const LinearConstraintSystem& system, double epsilon,
                                             std::vector<double> start, std::uint64_t seed) {
  return PolytopeSampler(sampler_rows(system, epsilon), std::move(start), seed);
}

double PolytopeSampler::min_margin() const {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : rows_.inequalities) {
    worst = std::min(worst, dot(r.coefficients, point_) - r.rhs);
  }
  for (const auto& r : rows_.equalities) {
    worst = std::min(worst, -std::abs(dot(r.coefficients, point_) - r.rhs));
  }
  return worst;
}

const std::vector<double>& PolytopeSampler::step() {
  const std::size_t d = point_.size();
  if (basis_.empty()) return point_;   // a single point: nothing to move
  for (std::size_t attempt = 0; attempt < kMaxDirectionRetries; ++attempt) {
    std::fill(direction_.begin(), direction_.end(), 0.0);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const double z = rng_.normal();
      const auto& b = basis_[k];
      for (std::size_t i = 0; i < d; ++i) direction_[i] += z * b[i];
    }
    const double norm = std::sqrt(dot(direction_, direction_));
    if (norm == 0.0) continue;
    for (double& v : direction_) v /= norm;

    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& r : rows_.inequalities) {
      const double ad = dot(r.coefficients, direction_);
      const double slack = std::max(0.0, dot(r.coefficients, point_) - r.rhs);
      if (ad > 0.0) {
        lo = std::max(lo, -slack / ad);
      } else if (ad < 0.0) {
        hi = std::min(hi, slack / -ad);
      }
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw SamplerStall("polytope is unbounded along a sampled direction");
    }
    if (hi - lo < kEmptyChord) continue;
    const double lambda = lo + rng_.uniform() * (hi - lo);
    for (std::size_t i = 0; i < d; ++i) point_[i] += lambda * direction_[i];
    return point_;
  }
  throw SamplerStall("Hit-and-Run found only empty chords in " +
                     std::to_string(kMaxDirectionRetries) + " directions (margin " +
                     std::to_string(min_margin()) + ")");
}

const std::vector<double>& PolytopeSampler::next(std::size_t thinning) {
  for (std::size_t k = 0; k < std::max<std::size_t>(thinning, 1); ++k) step();
  return point_;
}

void PolytopeSampler::burn_in(std::size_t steps) {
  for (std::size_t k = 0; k < steps; ++k) step();
}

void check_intervals(const IntervalMatrix& intervals, EvalSampling mode) {
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    for (std::size_t i = 0; i < intervals[k].size(); ++i) {
      const auto& e = intervals[k][i];
      const std::string where =
          " (alternative " + std::to_string(k + 1) + ", criterion " + std::to_string(i + 1) + ")";
      if (!(e.lo <= e.hi)) throw std::invalid_argument("interval with lo > hi" + where);
      if (mode == EvalSampling::kInteger && !e.is_point() && std::ceil(e.lo) > std::floor(e.hi)) {
        throw std::invalid_argument("no integer inside interval" + where);
      }
    }
  }
}

void sample_eval_matrix_into(const IntervalMatrix& intervals, EvalSampling mode, Rng& rng,
                             PointMatrix& out) {
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    for (std::size_t i = 0; i < intervals[k].size(); ++i) {
      const auto& e = intervals[k][i];
      if (e.is_point()) {
        out[k][i] = e.lo;
      } else if (mode == EvalSampling::kContinuous) {
        out[k][i] = e.lo + rng.uniform() * (e.hi - e.lo);
      } else {
        out[k][i] = static_cast<double>(rng.uniform_int(static_cast<std::int64_t>(std::ceil(e.lo)),
                                                        static_cast<std::int64_t>(std::floor(e.hi))));
      }
    }
  }
}

PointMatrix sample_eval_matrix(const IntervalMatrix& intervals, EvalSampling mode, Rng& rng) {
  check_intervals(intervals, mode);
  PointMatrix out(intervals.size());
  for (std::size_t k = 0; k < intervals.size(); ++k) out[k].resize(intervals[k].size());
  sample_eval_matrix_into(intervals, mode, rng, out);
  return out;
}

double ScaleColumn::operator()(double raw) const {
  const auto it = std::lower_bound(levels.begin(), levels.end(), raw);
  if (it == levels.end() || *it != raw) {
    throw std::out_of_range("raw value " + std::to_string(raw) + " is not a level of this scale");
  }
  return values[static_cast<std::size_t>(it - levels.begin())];
}

PointMatrix CommonScale::apply(const PointMatrix& raw) const {
  PointMatrix out(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k].size() != columns.size()) throw std::invalid_argument("scale/matrix width mismatch");
    out[k].resize(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) out[k][i] = columns[i](raw[k][i]);
  }
  return out;
}

ScaleColumn sample_common_scale(std::span<const double> raw, Direction direction,
                                const std::function<double()>& uniform01) {
  ScaleColumn col;
  col.levels.assign(raw.begin(), raw.end());
  std::sort(col.levels.begin(), col.levels.end());
  col.levels.erase(std::unique(col.levels.begin(), col.levels.end()), col.levels.end());
  const std::size_t count = col.levels.size();

  std::vector<double> draws(count);
  for (double& x : draws) x = uniform01();
  // Values must be distinct and strictly inside (0,1); redraw offenders.
  while (true) {
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return draws[a] < draws[b] || (draws[a] == draws[b] && a < b);
    });
    bool clean = true;
    for (std::size_t h = 0; h < count; ++h) {
      const std::size_t k = order[h];
      if (draws[k] <= 0.0 || draws[k] >= 1.0 || (h > 0 && draws[k] == draws[order[h - 1]])) {
        draws[k] = uniform01();
        clean = false;
      }
    }
    if (clean) break;
  }
  std::sort(draws.begin(), draws.end());
  if (direction == Direction::kMinimize) std::reverse(draws.begin(), draws.end());
  col.values = std::move(draws);
  return col;
}

ScaleColumn sample_common_scale(std::span<const double> raw, Direction direction, Rng& rng) {
  return sample_common_scale(raw, direction, [&rng] { return rng.uniform(); });
}

CommonScale sample_common_scale(const PointMatrix& raw, const std::vector<Direction>& directions,
                                Rng& rng) {
  CommonScale scale;
  std::vector<double> column(raw.size());
  for (std::size_t i = 0; i < directions.size(); ++i) {
    for (std::size_t k = 0; k < raw.size(); ++k) column[k] = raw[k].at(i);
    scale.columns.push_back(sample_common_scale(column, directions[i], rng));
  }
  return scale;
}

}  // namespace smaa_choquet
