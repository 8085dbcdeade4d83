#include "smaa_choquet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smaa_choquet {

CompatibilitySummary check_problem(const ProblemFile& file,
                                   const std::vector<PreferenceStatement>& statements,
                                   double epsilon_min) {
  const Problem& problem = file.problem;
  problem.check();
  const std::size_t n = problem.criterion_count();
  CompatibilitySummary summary;
  summary.alternatives_included = file.scale == ScaleKind::kCommon && !problem.has_intervals();

  std::vector<PreferenceStatement> compiled;
  std::vector<std::size_t> compiled_index;
  for (std::size_t s = 0; s < statements.size(); ++s) {
    check_statement(statements[s], n, problem.alternative_count());
    if (summary.alternatives_included || !references_alternatives(statements[s])) {
      compiled.push_back(statements[s]);
      compiled_index.push_back(s);
    }
  }
  PointMatrix evals;
  if (summary.alternatives_included) evals = problem.point_matrix();
  const auto system = compile_system(n, compiled, summary.alternatives_included ? &evals : nullptr);
  const auto report = check_compatibility(system, epsilon_min);
  summary.status = report.status;
  summary.epsilon_star = report.epsilon_star;
  summary.compatible = report.compatible;

  summary.statements.resize(statements.size());
  for (std::size_t s = 0; s < statements.size(); ++s) {
    summary.statements[s].index = s;
    summary.statements[s].checked = false;
    summary.statements[s].min_slack = std::numeric_limits<double>::infinity();
  }
  for (std::size_t c = 0; c < compiled_index.size(); ++c) {
    summary.statements[compiled_index[c]].checked = true;
  }
  if (report.status != LpStatus::kOptimal) return summary;
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    const auto& origin = system.origins[r];
    if (!origin.statement) continue;
    auto& check = summary.statements[compiled_index[*origin.statement]];
    ++check.rows;
    double slack = system.slack(r, report.point, report.epsilon_star);
    if (system.rows[r].relation == Relation::kEqual) slack = -std::fabs(slack);
    check.min_slack = std::min(check.min_slack, slack);
  }
  for (auto& check : summary.statements) {
    if (!check.checked) continue;
    if (check.rows == 0) check.min_slack = 0.0;
    check.binding = check.rows > 0 && check.min_slack <= 1e-9;
  }
  return summary;
}

AnalysisRequest make_request(const ProblemFile& file, const ConfigOverrides& overrides) {
  ConfigOverrides merged = file.config;
  merged.merge(overrides);
  AnalysisRequest request;
  merged.apply(request.config);
  request.scale_mode = merged.scale_mode.value_or(
      file.scale == ScaleKind::kHeterogeneous ? ScaleMode::kSample : ScaleMode::kGiven);
  request.candidates = merged.candidates.value_or(kDefaultScaleCandidates);
  return request;
}

AnalysisOutcome analyse(const ProblemFile& file, const std::vector<PreferenceStatement>& statements,
                        const AnalysisRequest& request, RunControl* control) {
  AnalysisOutcome out;
  out.config = request.config;
  out.scale_mode = request.scale_mode;
  const Problem& problem = file.problem;
  switch (request.scale_mode) {
    case ScaleMode::kGiven:
      out.config.mode = problem.has_intervals() ? UncertaintyCase::kInterval
                                                : UncertaintyCase::kCommonScale;
      out.analysed = problem;
      out.results = run(problem, statements, out.config, control);
      break;
    case ScaleMode::kSample:
      out.config.mode = UncertaintyCase::kHeteroScale;
      out.analysed = problem;
      out.results = run(problem, statements, out.config, control);
      break;
    case ScaleMode::kSearch: {
      const auto search = most_discriminant_scale(problem, statements, request.candidates,
                                                  request.config.seed, request.config.workers,
                                                  request.config.epsilon_min);
      if (search.all_infeasible()) {
        throw AllScalesIncompatible("none of the " + std::to_string(request.candidates) +
                                    " candidate scales admits a compatible capacity");
      }
      out.scale = ScaleSummary{request.candidates, *search.winner, search.winner_epsilon(),
                               search.infeasible, search.scale_independent, search.winner_scale()};
      out.config.mode = UncertaintyCase::kCommonScale;
      out.analysed = rescaled_problem(problem, out.scale->scale);
      out.results = run(out.analysed, statements, out.config, control);
      break;
    }
  }
  return out;
}

}  // namespace smaa_choquet
