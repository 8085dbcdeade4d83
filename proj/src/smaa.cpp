#include "smaa_choquet/smaa.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <set>
#include <thread>

namespace smaa_choquet {

bool Problem::has_intervals() const {
  for (const auto& row : evaluations) {
    for (const auto& e : row) {
      if (!e.is_point()) return true;
    }
  }
  return false;
}

PointMatrix Problem::point_matrix() const {
  PointMatrix out(evaluations.size());
  for (std::size_t k = 0; k < evaluations.size(); ++k) {
    for (const auto& e : evaluations[k]) {
      if (!e.is_point()) {
        throw std::invalid_argument("alternative '" + alternatives.at(k) +
                                    "' has an interval evaluation");
      }
      out[k].push_back(e.lo);
    }
  }
  return out;
}

void Problem::check() const {
  if (criteria.size() < 2) throw std::invalid_argument("at least two criteria are required");
  if (criteria.size() > kMaxCompiledCriteria) {
    throw std::invalid_argument("at most " + std::to_string(kMaxCompiledCriteria) +
                                " criteria are supported");
  }
  if (alternatives.empty()) throw std::invalid_argument("no alternatives");
  if (directions.size() != criteria.size()) {
    throw std::invalid_argument("one direction per criterion is required");
  }
  if (evaluations.size() != alternatives.size()) {
    throw std::invalid_argument("one evaluation row per alternative is required");
  }
  for (std::size_t k = 0; k < evaluations.size(); ++k) {
    if (evaluations[k].size() != criteria.size()) {
      throw std::invalid_argument("alternative '" + alternatives[k] + "' has " +
                                  std::to_string(evaluations[k].size()) + " evaluations, expected " +
                                  std::to_string(criteria.size()));
    }
  }
  const auto unique = [](const std::vector<std::string>& v, const char* what) {
    std::set<std::string> seen;
    for (const auto& s : v) {
      if (s.empty()) throw std::invalid_argument(std::string("empty ") + what + " label");
      if (!seen.insert(s).second) {
        throw std::invalid_argument(std::string("duplicate ") + what + " label '" + s + "'");
      }
    }
  };
  unique(criteria, "criterion");
  unique(alternatives, "alternative");
  check_intervals(evaluations, EvalSampling::kContinuous);
}

std::string to_string(UncertaintyCase c) {
  switch (c) {
    case UncertaintyCase::kCommonScale: return "common-scale";
    case UncertaintyCase::kInterval: return "interval";
    case UncertaintyCase::kHeteroScale: return "hetero-scale";
  }
  return "?";
}

std::string to_string(FreezePolicy p) {
  return p == FreezePolicy::kCapped ? "capped" : "half";
}

double frozen_epsilon(FreezePolicy policy, double epsilon_star, double epsilon_min) {
  return policy == FreezePolicy::kCapped ? epsilon_freeze(epsilon_star, epsilon_min)
                                         : epsilon_star / 2.0;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("SMAA_CHOQUET_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4;
}

SmaaTally::SmaaTally(std::size_t l, std::size_t d)
    : alternatives(l),
      dimension(d),
      rank_counts(l * l, 0),
      strict_counts(l * l, 0),
      indiff_counts(l * l, 0),
      central_sums(l * d, 0.0),
      capacity_sum(d, 0.0) {}

void SmaaTally::record(const std::vector<double>& values, const std::vector<double>& coords,
                       std::vector<std::size_t>& rank_scratch) {
  const std::size_t l = alternatives;
  ++total;
  ++feasible;
  rank_scratch.assign(l, 1);
  for (std::size_t h = 0; h < l; ++h) {
    for (std::size_t k = 0; k < l; ++k) {
      if (values[h] > values[k]) {
        ++strict_counts[h * l + k];
        ++rank_scratch[k];
      } else if (values[h] == values[k]) {
        ++indiff_counts[h * l + k];
      }
    }
  }
  for (std::size_t k = 0; k < l; ++k) {
    ++rank_counts[k * l + rank_scratch[k] - 1];
    if (rank_scratch[k] == 1) {
      double* sum = &central_sums[k * dimension];
      for (std::size_t t = 0; t < dimension; ++t) sum[t] += coords[t];
    }
  }
  for (std::size_t t = 0; t < dimension; ++t) capacity_sum[t] += coords[t];
}

void SmaaTally::merge(const SmaaTally& other) {
  if (other.alternatives != alternatives || other.dimension != dimension) {
    throw std::invalid_argument("cannot merge tallies of different shapes");
  }
  total += other.total;
  feasible += other.feasible;
  const auto add = [](auto& into, const auto& from) {
    for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
  };
  add(rank_counts, other.rank_counts);
  add(strict_counts, other.strict_counts);
  add(indiff_counts, other.indiff_counts);
  add(central_sums, other.central_sums);
  add(capacity_sum, other.capacity_sum);
}

std::size_t rank_of(const std::vector<double>& values, std::size_t k) {
  std::size_t r = 1;
  for (double v : values) {
    if (v > values.at(k)) ++r;
  }
  return r;
}

std::vector<std::size_t> ranks(const std::vector<double>& values) {
  std::vector<std::size_t> out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) out[k] = rank_of(values, k);
  return out;
}

std::vector<double> choquet_values(const PointMatrix& evals, const std::vector<double>& coords) {
  std::vector<double> out(evals.size());
  for (std::size_t k = 0; k < evals.size(); ++k) out[k] = choquet_coordinates(evals[k], coords);
  return out;
}

SmaaResults summarize(const SmaaTally& tally, std::size_t criteria) {
  SmaaResults r;
  r.criteria = criteria;
  r.alternatives = tally.alternatives;
  r.tally = tally;
  const std::size_t l = tally.alternatives;
  const std::size_t d = tally.dimension;
  const double n = static_cast<double>(tally.feasible);
  const auto percent = [n](std::uint64_t c) { return n > 0 ? 100.0 * static_cast<double>(c) / n : 0.0; };

  r.rank_acceptability.assign(l, std::vector<double>(l, 0.0));
  r.pref_strict.assign(l, std::vector<double>(l, 0.0));
  r.pref_indiff.assign(l, std::vector<double>(l, 0.0));
  r.first_counts.assign(l, 0);
  r.central.assign(l, std::nullopt);
  r.confidence.assign(l, std::nullopt);
  for (std::size_t k = 0; k < l; ++k) {
    for (std::size_t j = 0; j < l; ++j) {
      r.rank_acceptability[k][j] = percent(tally.rank_counts[k * l + j]);
      r.pref_strict[k][j] = percent(tally.strict_counts[k * l + j]);
      r.pref_indiff[k][j] = percent(tally.indiff_counts[k * l + j]);
    }
    r.first_counts[k] = tally.rank_counts[k * l];
    if (r.first_counts[k] > 0) {
      std::vector<double> c(d);
      for (std::size_t t = 0; t < d; ++t) {
        c[t] = tally.central_sums[k * d + t] / static_cast<double>(r.first_counts[k]);
      }
      r.central[k] = std::move(c);
    }
  }
  r.barycenter.assign(d, 0.0);
  if (n > 0) {
    for (std::size_t t = 0; t < d; ++t) r.barycenter[t] = tally.capacity_sum[t] / n;
  }
  return r;
}

namespace {

void check_direct_evaluations(const Problem& problem) {
  for (std::size_t i = 0; i < problem.criteria.size(); ++i) {
    if (problem.directions[i] != Direction::kMaximize) {
      throw std::invalid_argument("criterion '" + problem.criteria[i] +
                                  "' is to be minimized; its evaluations can only be used "
                                  "through a sampled or searched common scale");
    }
  }
  for (std::size_t k = 0; k < problem.evaluations.size(); ++k) {
    for (std::size_t i = 0; i < problem.criteria.size(); ++i) {
      if (problem.evaluations[k][i].lo < 0.0) {
        throw std::invalid_argument("negative evaluation for alternative '" +
                                    problem.alternatives[k] + "' on criterion '" +
                                    problem.criteria[i] + "'; shift the scale to be nonnegative");
      }
    }
  }
}

struct Plan {
  const Problem& problem;
  const RunConfig& config;
  std::size_t n;
  std::vector<PreferenceStatement> criterion_statements;
  std::vector<PreferenceStatement> alternative_statements;
  LinearConstraintSystem base;     // E^MB ∪ E^C, plus E^A when it is fixed
  bool per_iteration = false;
  PointMatrix fixed_matrix;        // case 1 evaluations, case 3 raw evaluations
  SeedPoint seed;
  double freeze = 0.0;
};

class Worker {
 public:
  Worker(const Plan& plan, std::size_t index, std::size_t iterations, RunControl* control)
      : plan_(plan),
        iterations_(iterations),
        control_(control),
        rng_(worker_seed(plan.config.seed, index)),
        tally_(plan.problem.alternative_count(), MobiusCapacity::dimension(plan.n)) {}

  void operator()() {
    try {
      run();
    } catch (...) {
      error_ = std::current_exception();
    }
  }

  const SmaaTally& tally() const { return tally_; }
  std::exception_ptr error() const { return error_; }

 private:
  void tick(std::size_t i) {
    if (!control_) return;
    if ((i & 255) == 255 || i + 1 == iterations_) {
      control_->completed.fetch_add((i & 255) + 1, std::memory_order_relaxed);
      if (control_->cancel.load(std::memory_order_relaxed)) throw RunCancelled();
    }
  }

  const PointMatrix& draw_matrix(PointMatrix& scratch) {
    switch (plan_.config.mode) {
      case UncertaintyCase::kCommonScale:
        return plan_.fixed_matrix;
      case UncertaintyCase::kInterval:
        sample_eval_matrix_into(plan_.problem.evaluations, plan_.config.eval_sampling, rng_, scratch);
        return scratch;
      case UncertaintyCase::kHeteroScale:
        scratch = sample_common_scale(plan_.fixed_matrix, plan_.problem.directions, rng_).apply(
            plan_.fixed_matrix);
        return scratch;
    }
    return plan_.fixed_matrix;
  }

  void run() {
    const auto& cfg = plan_.config;
    PointMatrix scratch(plan_.problem.alternative_count(),
                        std::vector<double>(plan_.n, 0.0));
    std::vector<std::size_t> rank_scratch;
    std::vector<double> values;
    if (!plan_.per_iteration) {
      auto chain = PolytopeSampler::from_system(plan_.base, plan_.freeze, plan_.seed.coords,
                                                rng_.next_u64());
      chain.burn_in(cfg.burn_in);
      for (std::size_t it = 0; it < iterations_; ++it) {
        const auto& coords = chain.next(cfg.thinning);
        const auto& m = draw_matrix(scratch);
        values = choquet_values(m, coords);
        tally_.record(values, coords, rank_scratch);
        tick(it);
      }
      return;
    }
    for (std::size_t it = 0; it < iterations_; ++it) {
      const auto& m = draw_matrix(scratch);
      LinearConstraintSystem system = plan_.base;
      system.append(compile_preferences(plan_.n, plan_.alternative_statements, &m));
      const std::uint64_t chain_seed = rng_.next_u64();
      std::optional<SeedPoint> seed;
      try {
        seed = seed_point(system, cfg.epsilon_min);
      } catch (const IncompatibleSystem&) {
        tally_.record_infeasible();
        tick(it);
        continue;
      }
      PolytopeSampler chain = PolytopeSampler::from_system(
          system, frozen_epsilon(cfg.freeze, seed->epsilon_star, cfg.epsilon_min), seed->coords,
          chain_seed);
      chain.burn_in(cfg.inner_steps);
      values = choquet_values(m, chain.point());
      tally_.record(values, chain.point(), rank_scratch);
      tick(it);
    }
  }

  const Plan& plan_;
  std::size_t iterations_;
  RunControl* control_;
  Rng rng_;
  SmaaTally tally_;
  std::exception_ptr error_;
};

}  // namespace

SmaaResults run(const Problem& problem, const std::vector<PreferenceStatement>& statements,
                const RunConfig& config, RunControl* control) {
  problem.check();
  if (config.iterations == 0) throw std::invalid_argument("iterations must be at least 1");
  const std::size_t n = problem.criterion_count();
  for (const auto& s : statements) check_statement(s, n, problem.alternative_count());

  Plan plan{problem, config, n, {}, {}, {}, false, {}, {}, 0.0};
  for (const auto& s : statements) {
    (references_alternatives(s) ? plan.alternative_statements : plan.criterion_statements)
        .push_back(s);
  }

  switch (config.mode) {
    case UncertaintyCase::kCommonScale:
      check_direct_evaluations(problem);
      plan.fixed_matrix = problem.point_matrix();
      break;
    case UncertaintyCase::kInterval:
      check_direct_evaluations(problem);
      check_intervals(problem.evaluations, config.eval_sampling);
      break;
    case UncertaintyCase::kHeteroScale:
      plan.fixed_matrix = problem.point_matrix();
      break;
  }
  plan.per_iteration =
      config.mode != UncertaintyCase::kCommonScale && !plan.alternative_statements.empty();

  plan.base = compile_system(n, plan.criterion_statements, nullptr);
  if (!plan.per_iteration && !plan.alternative_statements.empty()) {
    plan.base.append(compile_preferences(n, plan.alternative_statements, &plan.fixed_matrix));
  }
  // Throws IncompatibleSystem; with per-iteration rows this checks E^MB ∪ E^C alone.
  plan.seed = seed_point(plan.base, config.epsilon_min);
  plan.freeze = frozen_epsilon(config.freeze, plan.seed.epsilon_star, config.epsilon_min);

  const std::size_t workers = config.workers ? config.workers : default_workers();
  std::vector<Worker> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t share = config.iterations / workers + (w < config.iterations % workers);
    pool.emplace_back(plan, w, share, control);
  }
  if (workers == 1) {
    pool[0]();
  } else {
    std::vector<std::thread> threads;
    for (auto& worker : pool) threads.emplace_back(std::ref(worker));
    for (auto& t : threads) t.join();
  }
  SmaaTally tally(problem.alternative_count(), MobiusCapacity::dimension(n));
  for (const auto& worker : pool) {
    if (worker.error()) std::rethrow_exception(worker.error());
    tally.merge(worker.tally());
  }
  if (tally.feasible == 0) {
    throw NoFeasibleIterations("none of the " + std::to_string(tally.total) +
                               " sampled evaluation sets admits a compatible capacity");
  }

  SmaaResults results = summarize(tally, n);
  auto& meta = results.metadata;
  meta.mode = config.mode;
  meta.seed = config.seed;
  meta.iterations = config.iterations;
  meta.workers = workers;
  meta.burn_in = config.burn_in;
  meta.thinning = config.thinning;
  meta.inner_steps = config.inner_steps;
  meta.confidence_iterations = config.confidence_iterations;
  meta.eval_sampling = config.eval_sampling;
  meta.epsilon_min = config.epsilon_min;
  meta.freeze = config.freeze;
  meta.per_iteration_constraints = plan.per_iteration;
  if (!plan.per_iteration) {
    meta.epsilon_star = plan.seed.epsilon_star;
    meta.epsilon_freeze = plan.freeze;
  }
  for (std::size_t k = 0; k < results.alternatives; ++k) {
    results.confidence[k] = confidence_factor(problem, results, k, config);
  }
  return results;
}

std::optional<std::vector<double>> central_capacity(const SmaaResults& results, std::size_t k) {
  return results.central.at(k);
}

std::optional<double> confidence_factor(const Problem& problem, const SmaaResults& results,
                                        std::size_t k, const RunConfig& config) {
  const auto& central = results.central.at(k);
  if (!central) return std::nullopt;
  if (config.mode == UncertaintyCase::kCommonScale) {
    const auto values = choquet_values(problem.point_matrix(), *central);
    return rank_of(values, k) == 1 ? 100.0 : 0.0;
  }
  const std::size_t workers = config.workers ? config.workers : default_workers();
  Rng rng(worker_seed(config.seed, workers + k));
  const std::size_t total = std::max<std::size_t>(config.confidence_iterations, 1);
  PointMatrix m(problem.alternative_count(), std::vector<double>(problem.criterion_count()));
  const PointMatrix raw =
      config.mode == UncertaintyCase::kHeteroScale ? problem.point_matrix() : PointMatrix{};
  std::uint64_t wins = 0;
  for (std::size_t it = 0; it < total; ++it) {
    if (config.mode == UncertaintyCase::kInterval) {
      sample_eval_matrix_into(problem.evaluations, config.eval_sampling, rng, m);
    } else {
      m = sample_common_scale(raw, problem.directions, rng).apply(raw);
    }
    if (rank_of(choquet_values(m, *central), k) == 1) ++wins;
  }
  return 100.0 * static_cast<double>(wins) / static_cast<double>(total);
}

PreferenceFrequencies preference_frequency(const SmaaResults& results) {
  return {results.pref_strict, results.pref_indiff};
}

std::vector<double> barycenter(const SmaaResults& results) {
  if (results.tally.feasible == 0) throw std::invalid_argument("no sampled capacities");
  return results.barycenter;
}

NarorApproximation naror_approx(const std::vector<std::vector<double>>& pref_strict,
                                const std::vector<std::vector<double>>& pref_indiff) {
  const std::size_t l = pref_strict.size();
  NarorApproximation out{std::vector<std::vector<bool>>(l, std::vector<bool>(l, false)),
                         std::vector<std::vector<bool>>(l, std::vector<bool>(l, false))};
  for (std::size_t h = 0; h < l; ++h) {
    for (std::size_t k = 0; k < l; ++k) {
      out.necessary[h][k] = pref_strict[h][k] + pref_indiff[h][k] >= 100.0 - 1e-9;
      out.possible[h][k] = pref_strict[h][k] > 0.0;
    }
  }
  return out;
}

std::vector<RankInterval> extreme_ranks(const std::vector<std::vector<double>>& b) {
  std::vector<RankInterval> out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    for (std::size_t r = 0; r < b[k].size(); ++r) {
      if (b[k][r] > 0.0) {
        if (out[k].best == 0) out[k].best = r + 1;
        out[k].worst = r + 1;
      }
    }
  }
  return out;
}

}  // namespace smaa_choquet
