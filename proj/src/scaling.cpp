#include "smaa_choquet/scaling.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace smaa_choquet {

ScaleSearchResult most_discriminant_scale(const Problem& problem,
                                          const std::vector<PreferenceStatement>& statements,
                                          std::size_t candidates, std::uint64_t seed,
                                          std::size_t workers, double epsilon_min) {
  problem.check();
  if (candidates == 0) throw std::invalid_argument("at least one candidate scale is required");
  const std::size_t n = problem.criterion_count();
  for (const auto& s : statements) check_statement(s, n, problem.alternative_count());
  const PointMatrix raw = problem.point_matrix();

  ScaleSearchResult result;
  result.scale_independent = std::none_of(statements.begin(), statements.end(),
                                          [](const auto& s) { return references_alternatives(s); });
  Rng rng(seed);
  result.candidates.reserve(candidates);
  for (std::size_t c = 0; c < candidates; ++c) {
    result.candidates.push_back(sample_common_scale(raw, problem.directions, rng));
  }

  result.epsilons.assign(candidates, 0.0);
  std::vector<std::exception_ptr> errors(candidates);
  auto solve_range = [&](std::size_t begin, std::size_t step) {
    for (std::size_t c = begin; c < candidates; c += step) {
      try {
        const PointMatrix m = result.candidates[c].apply(raw);
        const auto report = check_compatibility(compile_system(n, statements, &m), epsilon_min);
        if (report.status != LpStatus::kOptimal) {
          throw LpFailure("scale candidate " + std::to_string(c) + ": LP " +
                          to_string(report.status));
        }
        result.epsilons[c] = report.epsilon_star;
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(workers ? workers : default_workers(), candidates);
  if (threads <= 1) {
    solve_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(solve_range, w, threads);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t c = 0; c < candidates; ++c) {
    if (result.epsilons[c] <= epsilon_min) {
      ++result.infeasible;
      continue;
    }
    if (!result.winner || result.epsilons[c] > result.epsilons[*result.winner]) result.winner = c;
  }
  return result;
}

Problem rescaled_problem(const Problem& problem, const CommonScale& scale) {
  Problem out = problem;
  const PointMatrix m = scale.apply(problem.point_matrix());
  for (std::size_t k = 0; k < m.size(); ++k) {
    for (std::size_t i = 0; i < m[k].size(); ++i) out.evaluations[k][i] = {m[k][i], m[k][i]};
  }
  out.directions.assign(problem.criterion_count(), Direction::kMaximize);
  return out;
}

SmaaResults fixed_scale_rerun(const Problem& problem, const CommonScale& scale,
                              const std::vector<PreferenceStatement>& statements,
                              RunConfig config, RunControl* control) {
  config.mode = UncertaintyCase::kCommonScale;
  return run(rescaled_problem(problem, scale), statements, config, control);
}

}  // namespace smaa_choquet
