#pragma once

// Random generators: Hit-and-Run over the compatible-capacity polytope,
// interval evaluation matrices, and random common scales.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "smaa_choquet/preference.hpp"
#include "smaa_choquet/rng.hpp"

namespace smaa_choquet {

class IncompatibleSystem : public std::runtime_error {
 public:
  IncompatibleSystem(const std::string& what, double epsilon_star)
      : std::runtime_error(what), epsilon_star_(epsilon_star) {}
  double epsilon_star() const { return epsilon_star_; }

 private:
  double epsilon_star_;
};

class SamplerStall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ε value frozen into strict rows while sampling.
double epsilon_freeze(double epsilon_star, double epsilon_min = kDefaultEpsilonMin);

struct SeedPoint {
  std::vector<double> coords;   // Möbius coordinates
  double epsilon_star = 0.0;
  double margin = 0.0;          // smallest inequality slack at the seed (ε = ε*/2)
};

/// Point of the compatible polytope for starting a chain. Solves max ε,
/// then, with ε fixed at ε*/2, maximizes the smallest inequality slack so
/// the point sits away from every facet when the polytope has an interior.
/// Throws IncompatibleSystem when ε* <= epsilon_min or the LP is infeasible.
SeedPoint seed_point(const LinearConstraintSystem& system,
                     double epsilon_min = kDefaultEpsilonMin);

/// Constraint rows in sampler form: a·x >= b or a·x = b, over x only.
struct SamplerRows {
  std::vector<LinearRow> equalities;
  std::vector<LinearRow> inequalities;
};

/// Drops the ε column by substituting `epsilon`.
SamplerRows sampler_rows(const LinearConstraintSystem& system, double epsilon);

/// Orthonormal basis (rows) of {d : A d = 0}. Gram–Schmidt with a 1e-12 drop tolerance.
std::vector<std::vector<double>> null_space_basis(const std::vector<LinearRow>& equalities,
                                                  std::size_t dimension);

class PolytopeSampler {
 public:
  static constexpr std::size_t kMaxDirectionRetries = 100;

  PolytopeSampler(SamplerRows rows, std::vector<double> start, std::uint64_t seed);

  /// Chain over a compiled system with strict rows frozen at `epsilon`.
  static PolytopeSampler from_system(const LinearConstraintSystem& system, double epsilon,
                                     std::vector<double> start, std::uint64_t seed);

  /// One Hit-and-Run move; throws SamplerStall after kMaxDirectionRetries empty chords.
  const std::vector<double>& step();
  /// Advances `thinning` moves and returns the new point.
  const std::vector<double>& next(std::size_t thinning = 1);
  void burn_in(std::size_t steps);

  const std::vector<double>& point() const { return point_; }
  std::size_t dimension() const { return point_.size(); }
  std::size_t free_dimension() const { return basis_.size(); }
  /// Smallest slack at the current point (equalities enter as -|residual|).
  double min_margin() const;
  Rng& rng() { return rng_; }

 private:
  SamplerRows rows_;
  std::vector<std::vector<double>> basis_;
  std::vector<double> point_;
  std::vector<double> direction_;
  std::vector<double> coeffs_;
  Rng rng_;
};

struct IntervalEvaluation {
  double lo = 0.0;
  double hi = 0.0;
  bool is_point() const { return lo == hi; }
};

using IntervalMatrix = std::vector<std::vector<IntervalEvaluation>>;

enum class EvalSampling { kContinuous, kInteger };

/// Throws std::invalid_argument for lo > hi or, in integer mode, an
/// interval without integers. Point entries are always accepted.
void check_intervals(const IntervalMatrix& intervals, EvalSampling mode);

/// Continuous: uniform on [lo,hi]. Integer: uniform on {ceil(lo),...,floor(hi)}.
/// Point entries (lo == hi) are returned unchanged.
PointMatrix sample_eval_matrix(const IntervalMatrix& intervals, EvalSampling mode, Rng& rng);

/// Writes into `out` (already shaped like `intervals`), skipping validation.
void sample_eval_matrix_into(const IntervalMatrix& intervals, EvalSampling mode, Rng& rng,
                             PointMatrix& out);

enum class Direction { kMaximize, kMinimize };

/// Recoding of one criterion: distinct raw levels (ascending) and their scale values.
struct ScaleColumn {
  std::vector<double> levels;
  std::vector<double> values;
  double operator()(double raw) const;
};

struct CommonScale {
  std::vector<ScaleColumn> columns;
  /// raw is alternatives × criteria.
  PointMatrix apply(const PointMatrix& raw) const;
};

/// Draws l' distinct values in (0,1), where l' is the number of distinct raw
/// levels, sorts them and hands them out in preference order: the best
/// level (largest for maximize, smallest for minimize) gets the largest value.
ScaleColumn sample_common_scale(std::span<const double> raw, Direction direction,
                                const std::function<double()>& uniform01);
ScaleColumn sample_common_scale(std::span<const double> raw, Direction direction, Rng& rng);

CommonScale sample_common_scale(const PointMatrix& raw, const std::vector<Direction>& directions,
                                Rng& rng);

}  // namespace smaa_choquet
