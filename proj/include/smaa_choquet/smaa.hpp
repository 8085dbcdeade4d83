#pragma once

// Monte Carlo engine: samples compatible capacities (and evaluation matrices
// or common scales when evaluations are uncertain), ranks alternatives by
// their Choquet value, and tallies the acceptability indices.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smaa_choquet/preference.hpp"
#include "smaa_choquet/sampling.hpp"

namespace smaa_choquet {

/// Criteria, alternatives and their (point or interval) evaluations.
struct Problem {
  std::vector<std::string> criteria;
  std::vector<Direction> directions;
  std::vector<std::string> alternatives;
  IntervalMatrix evaluations;   // alternatives × criteria

  std::size_t criterion_count() const { return criteria.size(); }
  std::size_t alternative_count() const { return alternatives.size(); }
  bool has_intervals() const;
  /// Throws std::invalid_argument if an entry is an interval.
  PointMatrix point_matrix() const;
  /// Shape, label uniqueness and direction count; throws std::invalid_argument.
  void check() const;
};

enum class UncertaintyCase {
  kCommonScale,   // point evaluations on a common scale
  kInterval,      // interval evaluations
  kHeteroScale,   // heterogeneous scales: common scale sampled jointly with the capacity
};

std::string to_string(UncertaintyCase c);

/// Number of workers used when RunConfig::workers is 0: SMAA_CHOQUET_WORKERS, else 4.
std::size_t default_workers();

/// ε substituted into strict rows while sampling.
enum class FreezePolicy {
  kCapped,   // min(ε*/2, 10·ε_min)
  kHalf,     // ε*/2
};

std::string to_string(FreezePolicy p);

struct RunConfig {
  std::size_t iterations = 100'000;
  std::uint64_t seed = 1;
  std::size_t burn_in = 1'000;
  std::size_t thinning = 1;
  std::size_t workers = 0;
  EvalSampling eval_sampling = EvalSampling::kContinuous;
  UncertaintyCase mode = UncertaintyCase::kCommonScale;
  double epsilon_min = kDefaultEpsilonMin;
  FreezePolicy freeze = FreezePolicy::kCapped;
  /// Chain length run from the per-iteration seed when alternative
  /// statements must be recompiled against every sampled matrix or scale.
  std::size_t inner_steps = 100;
  /// Iterations of the evaluation-uncertainty loop behind each confidence factor.
  std::size_t confidence_iterations = 10'000;
};

/// Progress and cancellation hooks shared with a caller on another thread.
struct RunControl {
  std::atomic<std::uint64_t> completed{0};
  std::atomic<bool> cancel{false};
};

class RunCancelled : public std::runtime_error {
 public:
  RunCancelled() : std::runtime_error("run cancelled") {}
};

class NoFeasibleIterations : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw integer counters and Möbius sums; merged associatively across workers.
struct SmaaTally {
  std::size_t alternatives = 0;
  std::size_t dimension = 0;
  std::uint64_t total = 0;
  std::uint64_t feasible = 0;
  std::vector<std::uint64_t> rank_counts;     // [k * l + (r - 1)]
  std::vector<std::uint64_t> strict_counts;   // [h * l + k]: C(a_h) > C(a_k)
  std::vector<std::uint64_t> indiff_counts;   // [h * l + k]: C(a_h) == C(a_k)
  std::vector<double> central_sums;           // [k * dimension + t], over rank-1 iterations
  std::vector<double> capacity_sum;           // over all feasible iterations

  SmaaTally() = default;
  SmaaTally(std::size_t alternatives, std::size_t dimension);
  /// Adds one feasible iteration: Choquet values of every alternative and the capacity used.
  void record(const std::vector<double>& values, const std::vector<double>& coords,
              std::vector<std::size_t>& rank_scratch);
  void record_infeasible() { ++total; }
  void merge(const SmaaTally& other);
};

struct RunMetadata {
  UncertaintyCase mode = UncertaintyCase::kCommonScale;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::size_t workers = 0;
  std::size_t burn_in = 0;
  std::size_t thinning = 0;
  std::size_t inner_steps = 0;
  std::size_t confidence_iterations = 0;
  EvalSampling eval_sampling = EvalSampling::kContinuous;
  double epsilon_min = 0.0;
  FreezePolicy freeze = FreezePolicy::kCapped;
  /// Present when one constraint system serves every iteration.
  std::optional<double> epsilon_star;
  std::optional<double> epsilon_freeze;
  bool per_iteration_constraints = false;
  std::string rng = Rng::kIdentity;
};

struct SmaaResults {
  std::size_t criteria = 0;
  std::size_t alternatives = 0;
  SmaaTally tally;
  RunMetadata metadata;

  std::vector<std::vector<double>> rank_acceptability;   // percent, [k][r-1]
  std::vector<std::vector<double>> pref_strict;          // percent
  std::vector<std::vector<double>> pref_indiff;          // percent
  std::vector<std::uint64_t> first_counts;
  std::vector<std::optional<std::vector<double>>> central;
  std::vector<double> barycenter;
  std::vector<std::optional<double>> confidence;         // percent

  std::uint64_t iterations_total() const { return tally.total; }
  std::uint64_t iterations_feasible() const { return tally.feasible; }
};

/// Fills every derived index from `tally` (confidence left empty).
SmaaResults summarize(const SmaaTally& tally, std::size_t criteria);

double frozen_epsilon(FreezePolicy policy, double epsilon_star, double epsilon_min);

/// 1 + number of strictly larger values.
std::size_t rank_of(const std::vector<double>& values, std::size_t k);
std::vector<std::size_t> ranks(const std::vector<double>& values);

/// Runs the simulation. Throws IncompatibleSystem when the statement set has
/// no compatible capacity, NoFeasibleIterations when every sampled matrix or
/// scale was incompatible, RunCancelled when `control->cancel` is raised.
SmaaResults run(const Problem& problem, const std::vector<PreferenceStatement>& statements,
                const RunConfig& config, RunControl* control = nullptr);

std::optional<std::vector<double>> central_capacity(const SmaaResults& results, std::size_t k);

/// Share (percent) of the evaluation-uncertainty loop in which k ranks first
/// under its central capacity. Absent when k was never first.
std::optional<double> confidence_factor(const Problem& problem, const SmaaResults& results,
                                        std::size_t k, const RunConfig& config);

struct PreferenceFrequencies {
  std::vector<std::vector<double>> strict;
  std::vector<std::vector<double>> indifference;
};
PreferenceFrequencies preference_frequency(const SmaaResults& results);

std::vector<double> barycenter(const SmaaResults& results);

/// Frequency-based approximations of the necessary and possible relations.
/// They are one-directional: a necessary preference implies
/// necessary(h,k), but necessary(h,k) does not prove one.
struct NarorApproximation {
  std::vector<std::vector<bool>> necessary;
  std::vector<std::vector<bool>> possible;
};
NarorApproximation naror_approx(const std::vector<std::vector<double>>& pref_strict,
                                const std::vector<std::vector<double>>& pref_indiff);

/// Approximate extreme ranks: smallest and largest r with b_k^r > 0.
struct RankInterval {
  std::size_t best = 0;
  std::size_t worst = 0;
};
std::vector<RankInterval> extreme_ranks(const std::vector<std::vector<double>>& b);

/// Choquet value of every row of `evals` under the Möbius coordinates.
std::vector<double> choquet_values(const PointMatrix& evals, const std::vector<double>& coords);

}  // namespace smaa_choquet
