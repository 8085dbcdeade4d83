// smaa-choquet: compatibility check, SMAA ranking, common-scale search and
// the HTTP service.
//
// Exit codes: 0 success, 1 incompatible preferences or no feasible
// iteration, 2 unreadable or invalid input.

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "smaa_choquet/analysis.hpp"
#include "smaa_choquet/results_io.hpp"
#include "smaa_choquet/service.hpp"
#include "smaa_choquet/statement_syntax.hpp"

using namespace smaa_choquet;

namespace {

constexpr int kExitIncompatible = 1;
constexpr int kExitInput = 2;

struct RunFlags {
  std::optional<std::size_t> iterations, burn_in, thin, workers, candidates;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> eval_sampling, scale_mode;
  std::optional<double> epsilon_min;

  void add_to(CLI::App* app, bool with_candidates) {
    app->add_option("--iterations", iterations, "Monte Carlo iterations")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "random seed");
    app->add_option("--burn-in", burn_in, "Hit-and-Run steps discarded before sampling");
    app->add_option("--thin", thin, "chain steps per stored capacity")->check(CLI::PositiveNumber);
    app->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--eval-sampling", eval_sampling, "interval draws")
        ->check(CLI::IsMember({"continuous", "integer"}));
    app->add_option("--scale-mode", scale_mode, "use evaluations as given, sample scales, or search one")
        ->check(CLI::IsMember({"given", "sample", "search"}));
    app->add_option("--epsilon-min", epsilon_min, "compatibility threshold on max epsilon")
        ->check(CLI::PositiveNumber);
    if (with_candidates) {
      app->add_option("--candidates", candidates, "candidate scales in search mode")
          ->check(CLI::PositiveNumber);
    }
  }

  ConfigOverrides overrides() const {
    ConfigOverrides o;
    o.iterations = iterations;
    o.seed = seed;
    o.burn_in = burn_in;
    o.thinning = thin;
    o.workers = workers;
    if (eval_sampling) o.eval_sampling = parse_eval_sampling(*eval_sampling);
    if (scale_mode) o.scale_mode = parse_scale_mode(*scale_mode);
    o.epsilon_min = epsilon_min;
    o.candidates = candidates;
    return o;
  }
};

std::string label(const ProblemFile& f, std::size_t k) { return f.problem.alternatives[k]; }

void print_summary(const ProblemFile& file, const AnalysisOutcome& outcome) {
  const auto& r = outcome.results;
  std::printf("case %s, %llu iterations (%llu feasible), seed %llu, %zu workers\n",
              to_string(r.metadata.mode).c_str(),
              static_cast<unsigned long long>(r.iterations_total()),
              static_cast<unsigned long long>(r.iterations_feasible()),
              static_cast<unsigned long long>(r.metadata.seed), r.metadata.workers);
  if (outcome.scale) {
    std::printf("scale: candidate %zu of %zu, epsilon %.6f, %zu incompatible candidates\n",
                outcome.scale->winner, outcome.scale->candidates, outcome.scale->epsilon,
                outcome.scale->infeasible);
  }
  const auto extremes = extreme_ranks(r.rank_acceptability);
  std::printf("%-12s %8s %8s  %s\n", "alternative", "b1", "conf", "ranks");
  for (std::size_t k = 0; k < r.alternatives; ++k) {
    std::printf("%-12s %8s %8s  %zu-%zu\n", label(file, k).c_str(),
                format_percent(r.rank_acceptability[k][0]).c_str(),
                r.confidence[k] ? format_percent(*r.confidence[k]).c_str() : "-",
                extremes[k].best, extremes[k].worst);
  }
}

int report_error(const std::exception& e, int code) {
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ProblemParseError& e) {
    return report_error(e, kExitInput);
  } catch (const PreferenceParseError& e) {
    return report_error(e, kExitInput);
  } catch (const IncompatibleSystem& e) {
    std::cerr << "error: " << e.what() << " (epsilon* = " << e.epsilon_star() << ")\n";
    return kExitIncompatible;
  } catch (const NoFeasibleIterations& e) {
    return report_error(e, kExitIncompatible);
  } catch (const AllScalesIncompatible& e) {
    return report_error(e, kExitIncompatible);
  } catch (const std::invalid_argument& e) {
    return report_error(e, kExitInput);
  } catch (const std::exception& e) {
    return report_error(e, kExitInput);
  }
}

int run_check(const std::string& path, std::optional<double> epsilon_min) {
  const ProblemFile file = load_problem(path);
  const auto statements = parse_preferences(file);
  const double eps_min = epsilon_min.value_or(make_request(file).config.epsilon_min);
  const auto summary = check_problem(file, statements, eps_min);
  if (summary.status != LpStatus::kOptimal) {
    std::printf("LP %s\nincompatible\n", to_string(summary.status).c_str());
    return kExitIncompatible;
  }
  std::printf("epsilon* = %.4f\n", summary.epsilon_star);
  std::printf("%s\n", summary.compatible ? "compatible" : "incompatible");
  if (!summary.alternatives_included) {
    std::printf("alternative statements depend on sampled evaluations and were not checked\n");
  }
  for (const auto& s : summary.statements) {
    const std::string& text = file.preferences[s.index];
    if (!s.checked) {
      std::printf("  [%zu] %-36s not checked\n", s.index + 1, text.c_str());
    } else {
      std::printf("  [%zu] %-36s rows %zu, slack %s%s\n", s.index + 1, text.c_str(), s.rows,
                  format_mobius(s.min_slack).c_str(), s.binding ? ", binding" : "");
    }
  }
  return summary.compatible ? 0 : kExitIncompatible;
}

int run_rank(const ProblemFile& file, const ConfigOverrides& overrides, const std::string& out) {
  const auto statements = parse_preferences(file);
  const auto request = make_request(file, overrides);
  const auto outcome = analyse(file, statements, request);
  print_summary(file, outcome);
  if (!out.empty()) {
    write_bundle(make_bundle(file, outcome), out);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int run_scale(const std::string& path, const ConfigOverrides& overrides, const std::string& out,
              bool chain) {
  const ProblemFile file = load_problem(path);
  const auto statements = parse_preferences(file);
  const auto request = make_request(file, overrides);
  const auto search = most_discriminant_scale(file.problem, statements, request.candidates,
                                              request.config.seed, request.config.workers,
                                              request.config.epsilon_min);
  std::printf("%zu candidates, %zu incompatible\n", search.candidates.size(), search.infeasible);
  if (search.scale_independent) {
    std::printf("no alternative statements: every candidate gives the same epsilon\n");
  }
  if (search.all_infeasible()) {
    std::fprintf(stderr, "error: no candidate scale admits a compatible capacity\n");
    return kExitIncompatible;
  }
  std::printf("winner: candidate %zu, epsilon %.6f\n", *search.winner, search.winner_epsilon());
  AnalysisOutcome scaled;
  scaled.analysed = rescaled_problem(file.problem, search.winner_scale());
  const ProblemFile scale_file = scale_problem_file(file, scaled);
  const std::string text = serialize_problem(scale_file);
  if (out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    ResultBundle b;
    b.files["scale.json"] = text;
    b.files["scale.csv"] = matrix_csv(scale_file.problem);
    write_bundle(b, out);
    std::printf("wrote %s/scale.json and %s/scale.csv\n", out.c_str(), out.c_str());
  }
  if (!chain) return 0;
  ConfigOverrides given = overrides;
  given.scale_mode = ScaleMode::kGiven;
  ProblemFile chained = scale_file;
  chained.config = file.config;
  chained.config.scale_mode.reset();
  return run_rank(chained, given, out.empty() ? "" : out + "/rank");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SMAA for the Choquet integral preference model"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string out;
  std::optional<double> check_eps;
  auto* check = app.add_subcommand("check", "check that the preferences admit a compatible capacity");
  check->add_option("problem", problem_path, "problem file (.json or .csv)")->required();
  check->add_option("--epsilon-min", check_eps, "compatibility threshold")->check(CLI::PositiveNumber);

  RunFlags rank_flags;
  auto* rank = app.add_subcommand("rank", "run the SMAA simulation and write the result tables");
  rank->add_option("problem", problem_path, "problem file (.json or .csv)")->required();
  rank->add_option("--out", out, "directory for results.json and the CSV tables");
  rank_flags.add_to(rank, true);

  RunFlags scale_flags;
  bool chain = false;
  auto* scale = app.add_subcommand("scale", "search the most discriminant common scale");
  scale->add_option("problem", problem_path, "problem file with heterogeneous evaluations")->required();
  scale->add_option("--out", out, "directory for scale.json (stdout otherwise)");
  scale->add_flag("--rank", chain, "run the simulation on the winning scale");
  scale_flags.add_to(scale, true);

  std::string bundle_path;
  auto* rerun = app.add_subcommand("rerun", "reproduce a result bundle from its results.json");
  rerun->add_option("results", bundle_path, "results.json of an earlier run")->required();
  rerun->add_option("--out", out, "output directory");

  std::string bind = "127.0.0.1";
  int port = 8080;
  std::string state_dir;
  auto* serve_cmd = app.add_subcommand("serve", "start the HTTP service");
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--bind", bind, "bind address");
  serve_cmd->add_option("--state-dir", state_dir, "directory persisting sessions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*check) return guarded([&] { return run_check(problem_path, check_eps); });
  if (*rank) {
    return guarded([&] { return run_rank(load_problem(problem_path), rank_flags.overrides(), out); });
  }
  if (*scale) {
    return guarded([&] {
      ConfigOverrides o = scale_flags.overrides();
      return run_scale(problem_path, o, out, chain);
    });
  }
  if (*rerun) {
    return guarded([&] {
      const ProblemFile file = problem_from_results(read_text_file(bundle_path));
      return run_rank(file, {}, out);
    });
  }
  if (*serve_cmd) {
    return guarded([&] {
      SessionService service(ServiceOptions{state_dir});
      std::printf("listening on %s:%d\n", bind.c_str(), port);
      std::fflush(stdout);
      serve(service, bind, port);
      return 0;
    });
  }
  return 0;
}
