#pragma once

// Result bundles: results.json plus CSV tables. Percentages carry two
// decimals and Möbius values four, in the JSON as in the CSV files. Output
// contains no timestamps, so equal inputs give byte-identical bundles.

#include <map>
#include <string>

#include "smaa_choquet/analysis.hpp"

namespace smaa_choquet {

inline constexpr const char* kVersion = "1.0.0";

/// "%.2f" and "%.4f", with negative zero printed unsigned.
std::string format_percent(double value);
std::string format_mobius(double value);

/// "m(g1)", ..., "m(g1,g2)", ... in coordinate order.
std::vector<std::string> coordinate_labels(const std::vector<std::string>& criteria);

struct ResultBundle {
  std::map<std::string, std::string> files;   // file name -> contents
  const std::string& results_json() const { return files.at("results.json"); }
};

/// The embedded problem pins every setting that was run, so rerunning it
/// reproduces the bundle.
ResultBundle make_bundle(const ProblemFile& file, const AnalysisOutcome& outcome);

/// Evaluation matrix in the CSV import layout, values with four decimals.
std::string matrix_csv(const Problem& problem);

/// CSV tables by name: rank_acceptability, pref_strict, pref_indiff,
/// central_capacities, barycenter, extreme_ranks, and scale in search mode.
std::string csv_table(const ResultBundle& bundle, const std::string& table);

void write_bundle(const ResultBundle& bundle, const std::string& directory);

/// Problem file stored in a results.json, settings included.
ProblemFile problem_from_results(const std::string& results_json);

/// Problem file whose evaluations are the winner scale of a search.
ProblemFile scale_problem_file(const ProblemFile& file, const AnalysisOutcome& outcome);

}  // namespace smaa_choquet
