#pragma once

// Problem files: JSON (canonical) and bare CSV matrices.
//
//   {
//     "criteria": [{"label": "g1", "direction": "maximize"}, ...],
//     "alternatives": [{"label": "a1", "evaluations": [16, [7, 9], 14, 10]}, ...],
//     "preferences": ["imp: g1 > g2", "alt: a16 > a2"],
//     "scale": "common",
//     "config": {"iterations": 200000, "seed": 7}
//   }
//
// An evaluation is a number or a [lo, hi] pair. "scale" is "common" (the
// default) or "heterogeneous". Criteria and alternatives may carry a
// free-text "name".

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smaa_choquet/smaa.hpp"

namespace smaa_choquet {

class ProblemParseError : public std::runtime_error {
 public:
  /// line and column are 1-based; 0 when unknown.
  ProblemParseError(const std::string& message, std::size_t line, std::size_t column);
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

enum class ScaleKind { kCommon, kHeterogeneous };
enum class ScaleMode { kGiven, kSample, kSearch };

std::string to_string(ScaleKind k);
std::string to_string(ScaleMode m);
std::string to_string(EvalSampling s);
std::string to_string(Direction d);
std::optional<ScaleMode> parse_scale_mode(std::string_view text);
std::optional<EvalSampling> parse_eval_sampling(std::string_view text);
std::optional<FreezePolicy> parse_freeze_policy(std::string_view text);

/// Run settings a problem file (or a service request) may pin.
struct ConfigOverrides {
  std::optional<std::size_t> iterations;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> thinning;
  std::optional<std::size_t> workers;
  std::optional<EvalSampling> eval_sampling;
  std::optional<double> epsilon_min;
  std::optional<FreezePolicy> freeze;
  std::optional<std::size_t> inner_steps;
  std::optional<std::size_t> confidence_iterations;
  std::optional<ScaleMode> scale_mode;
  std::optional<std::size_t> candidates;

  bool empty() const;
  /// Fields set in `other` win.
  void merge(const ConfigOverrides& other);
  void apply(RunConfig& config) const;
  bool operator==(const ConfigOverrides&) const = default;
};

struct ProblemFile {
  Problem problem;
  std::vector<std::string> criterion_names;     // "" when absent
  std::vector<std::string> alternative_names;   // "" when absent
  std::vector<std::string> preferences;
  ScaleKind scale = ScaleKind::kCommon;
  ConfigOverrides config;

  bool operator==(const ProblemFile& other) const;
};

ProblemFile parse_problem(std::string_view json_text);
ProblemFile load_problem(const std::string& path);
std::string serialize_problem(const ProblemFile& file);

/// Bare matrix: header "label,<criterion>,..." where a criterion may end in
/// ":min" or ":max"; one row per alternative; an interval is written "lo..hi".
ProblemFile parse_matrix_csv(std::string_view csv_text);

/// Parses the overrides object alone, e.g. a service request body.
ConfigOverrides parse_overrides(std::string_view json_text);
std::string serialize_overrides(const ConfigOverrides& overrides);

/// Parses every preference string; errors carry the file position of the string.
std::vector<PreferenceStatement> parse_preferences(const ProblemFile& file);

/// Thrown by parse_preferences, with the index of the offending string.
class PreferenceParseError : public std::invalid_argument {
 public:
  PreferenceParseError(const std::string& what, std::size_t index, std::size_t column)
      : std::invalid_argument(what), index_(index), column_(column) {}
  std::size_t index() const { return index_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t index_;
  std::size_t column_;
};

std::string read_text_file(const std::string& path);

}  // namespace smaa_choquet
