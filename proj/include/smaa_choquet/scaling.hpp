#pragma once

// Heterogeneous scales: search for the most discriminant common scale among
// random candidates, and rerun the common-scale analysis on a chosen scale.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "smaa_choquet/smaa.hpp"

namespace smaa_choquet {

inline constexpr std::size_t kDefaultScaleCandidates = 10'000;

struct ScaleSearchResult {
  std::vector<CommonScale> candidates;
  /// max ε of each candidate's system; every entry comes from an optimal LP.
  std::vector<double> epsilons;
  /// Lowest-index candidate with the largest ε, absent when none is compatible.
  std::optional<std::size_t> winner;
  /// Candidates whose ε does not exceed ε_min.
  std::size_t infeasible = 0;
  /// No alternative statements: every candidate shares the same system.
  bool scale_independent = false;

  bool all_infeasible() const { return !winner.has_value(); }
  const CommonScale& winner_scale() const { return candidates.at(winner.value()); }
  double winner_epsilon() const { return epsilons.at(winner.value()); }
};

/// Draws `candidates` common scales from `seed` (in order), compiles the
/// statements against each rescaled matrix and solves max ε. LPs run on
/// `workers` threads (0: default_workers()); the result does not depend on it.
ScaleSearchResult most_discriminant_scale(const Problem& problem,
                                          const std::vector<PreferenceStatement>& statements,
                                          std::size_t candidates, std::uint64_t seed,
                                          std::size_t workers = 0,
                                          double epsilon_min = kDefaultEpsilonMin);

/// Same problem with evaluations recoded by `scale` and every criterion maximized.
Problem rescaled_problem(const Problem& problem, const CommonScale& scale);

/// Common-scale run on the rescaled problem. Throws IncompatibleSystem when
/// the statements admit no capacity on this scale.
SmaaResults fixed_scale_rerun(const Problem& problem, const CommonScale& scale,
                              const std::vector<PreferenceStatement>& statements,
                              RunConfig config, RunControl* control = nullptr);

}  // namespace smaa_choquet
