#pragma once

// End-to-end workflow shared by the command line and the HTTP service:
// compatibility reports and runs selected from the problem's shape.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "smaa_choquet/problem_io.hpp"
#include "smaa_choquet/scaling.hpp"

namespace smaa_choquet {

struct StatementCheck {
  std::size_t index = 0;
  std::size_t rows = 0;
  /// Smallest slack of the statement's rows at the max-ε optimum.
  double min_slack = 0.0;
  bool binding = false;
  /// False for alternative statements whose rows depend on sampled evaluations.
  bool checked = true;
};

struct CompatibilitySummary {
  LpStatus status = LpStatus::kInfeasible;
  double epsilon_star = 0.0;
  bool compatible = false;
  /// Alternative statements were compiled against the given evaluations.
  bool alternatives_included = true;
  std::vector<StatementCheck> statements;
};

/// Alternative statements are included only for point evaluations on a
/// common scale.
CompatibilitySummary check_problem(const ProblemFile& file,
                                   const std::vector<PreferenceStatement>& statements,
                                   double epsilon_min = kDefaultEpsilonMin);

struct AnalysisRequest {
  RunConfig config;
  ScaleMode scale_mode = ScaleMode::kGiven;
  std::size_t candidates = kDefaultScaleCandidates;
};

/// Defaults, then the file's config, then `overrides`. The scale mode
/// defaults to "sample" for heterogeneous files and "given" otherwise.
AnalysisRequest make_request(const ProblemFile& file, const ConfigOverrides& overrides = {});

struct ScaleSummary {
  std::size_t candidates = 0;
  std::size_t winner = 0;
  double epsilon = 0.0;
  std::size_t infeasible = 0;
  bool scale_independent = false;
  CommonScale scale;
};

struct AnalysisOutcome {
  SmaaResults results;
  RunConfig config;              // the configuration actually run
  ScaleMode scale_mode = ScaleMode::kGiven;
  std::optional<ScaleSummary> scale;
  Problem analysed;              // rescaled problem in search mode
};

class AllScalesIncompatible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// given: common-scale or interval run on the evaluations as they are;
/// sample: scales sampled with the capacity; search: most discriminant
/// scale (seeded with the run seed) followed by a common-scale run on it.
AnalysisOutcome analyse(const ProblemFile& file, const std::vector<PreferenceStatement>& statements,
                        const AnalysisRequest& request, RunControl* control = nullptr);

}  // namespace smaa_choquet
