#include "smaa_choquet/problem_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "smaa_choquet/statement_syntax.hpp"

namespace smaa_choquet {

using nlohmann::json;
using nlohmann::ordered_json;

ProblemParseError::ProblemParseError(const std::string& message, std::size_t line,
                                     std::size_t column)
    : std::runtime_error(line ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                              : message),
      message_(message),
      line_(line),
      column_(column) {}

std::string to_string(ScaleKind k) {
  return k == ScaleKind::kCommon ? "common" : "heterogeneous";
}

std::string to_string(ScaleMode m) {
  switch (m) {
    case ScaleMode::kGiven: return "given";
    case ScaleMode::kSample: return "sample";
    case ScaleMode::kSearch: return "search";
  }
  return "given";
}

std::string to_string(EvalSampling s) {
  return s == EvalSampling::kContinuous ? "continuous" : "integer";
}

std::string to_string(Direction d) { return d == Direction::kMaximize ? "maximize" : "minimize"; }

std::optional<ScaleMode> parse_scale_mode(std::string_view text) {
  if (text == "given") return ScaleMode::kGiven;
  if (text == "sample") return ScaleMode::kSample;
  if (text == "search") return ScaleMode::kSearch;
  return std::nullopt;
}

std::optional<EvalSampling> parse_eval_sampling(std::string_view text) {
  if (text == "continuous") return EvalSampling::kContinuous;
  if (text == "integer") return EvalSampling::kInteger;
  return std::nullopt;
}

std::optional<FreezePolicy> parse_freeze_policy(std::string_view text) {
  if (text == "capped") return FreezePolicy::kCapped;
  if (text == "half") return FreezePolicy::kHalf;
  return std::nullopt;
}

bool ConfigOverrides::empty() const { return *this == ConfigOverrides{}; }

void ConfigOverrides::merge(const ConfigOverrides& o) {
  auto take = [](auto& mine, const auto& theirs) {
    if (theirs) mine = theirs;
  };
  take(iterations, o.iterations);
  take(seed, o.seed);
  take(burn_in, o.burn_in);
  take(thinning, o.thinning);
  take(workers, o.workers);
  take(eval_sampling, o.eval_sampling);
  take(epsilon_min, o.epsilon_min);
  take(freeze, o.freeze);
  take(inner_steps, o.inner_steps);
  take(confidence_iterations, o.confidence_iterations);
  take(scale_mode, o.scale_mode);
  take(candidates, o.candidates);
}

void ConfigOverrides::apply(RunConfig& c) const {
  if (iterations) c.iterations = *iterations;
  if (seed) c.seed = *seed;
  if (burn_in) c.burn_in = *burn_in;
  if (thinning) c.thinning = *thinning;
  if (workers) c.workers = *workers;
  if (eval_sampling) c.eval_sampling = *eval_sampling;
  if (epsilon_min) c.epsilon_min = *epsilon_min;
  if (freeze) c.freeze = *freeze;
  if (inner_steps) c.inner_steps = *inner_steps;
  if (confidence_iterations) c.confidence_iterations = *confidence_iterations;
}

namespace {

bool same_intervals(const IntervalMatrix& a, const IntervalMatrix& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].size() != b[k].size()) return false;
    for (std::size_t i = 0; i < a[k].size(); ++i) {
      if (a[k][i].lo != b[k][i].lo || a[k][i].hi != b[k][i].hi) return false;
    }
  }
  return true;
}

// Offsets of every value in a JSON text, keyed by JSON pointer. Only run on
// text nlohmann has already accepted.
class PositionIndex {
 public:
  explicit PositionIndex(std::string_view text) : text_(text) {
    scan("");
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] == '\n') line_starts_.push_back(i + 1);
    }
  }

  std::pair<std::size_t, std::size_t> line_column(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    const std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return {line, offset - line_starts_[line - 1] + 1};
  }

  /// Position of the value at `pointer`, or of its nearest located ancestor.
  std::pair<std::size_t, std::size_t> locate(std::string pointer) const {
    while (true) {
      if (auto it = offsets_.find(pointer); it != offsets_.end()) return line_column(it->second);
      if (pointer.empty()) return {1, 1};
      pointer.erase(pointer.rfind('/'));
    }
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  std::string read_string() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        const char e = text_[pos_ + 1];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case 'u': out += text_.substr(pos_, 6); pos_ += 4; break;
          default: out += e; break;
        }
        pos_ += 2;
      } else {
        out += text_[pos_++];
      }
    }
    ++pos_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void scan(const std::string& pointer) {
    skip_ws();
    if (pos_ >= text_.size()) return;
    offsets_[pointer] = pos_;
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      if (text_[pos_] == '}') { ++pos_; return; }
      while (pos_ < text_.size()) {
        skip_ws();
        const std::string key = read_string();
        skip_ws();
        ++pos_;   // ':'
        scan(pointer + "/" + escape(key));
        skip_ws();
        if (text_[pos_++] == '}') return;
      }
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      if (text_[pos_] == ']') { ++pos_; return; }
      for (std::size_t i = 0; pos_ < text_.size(); ++i) {
        scan(pointer + "/" + std::to_string(i));
        skip_ws();
        if (text_[pos_++] == ']') return;
      }
    } else if (c == '"') {
      read_string();
    } else {
      while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos) {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> offsets_;
  std::vector<std::size_t> line_starts_;
};

class Reader {
 public:
  Reader(std::string_view text, const json& root) : index_(text), root_(root) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    const auto [line, column] = index_.locate(pointer);
    throw ProblemParseError(message, line, column);
  }

  [[noreturn]] void fail_at(const std::string& pointer, std::size_t extra_columns,
                            const std::string& message) const {
    const auto [line, column] = index_.locate(pointer);
    throw ProblemParseError(message, line, column + extra_columns);
  }

  const json& at(const std::string& pointer) const { return root_.at(json::json_pointer(pointer)); }

  const json& object(const std::string& pointer) const {
    const auto& v = at(pointer);
    if (!v.is_object()) fail(pointer, "expected an object");
    return v;
  }

  const json& array(const std::string& pointer) const {
    const auto& v = at(pointer);
    if (!v.is_array()) fail(pointer, "expected an array");
    return v;
  }

  std::string string(const std::string& pointer) const {
    const auto& v = at(pointer);
    if (!v.is_string()) fail(pointer, "expected a string");
    return v.get<std::string>();
  }

  double number(const std::string& pointer) const {
    const auto& v = at(pointer);
    if (!v.is_number()) fail(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(pointer, "number out of range");
    return x;
  }

  std::uint64_t unsigned_integer(const std::string& pointer) const {
    const auto& v = at(pointer);
    if (!v.is_number_unsigned()) fail(pointer, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  void only_keys(const std::string& pointer, std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, value] : object(pointer).items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        fail(pointer + "/" + key, "unknown key '" + key + "'");
      }
    }
  }

 private:
  PositionIndex index_;
  const json& root_;
};

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    PositionIndex index("");
    std::size_t line = 1, column = 1;
    const std::size_t stop = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ProblemParseError(what, line, column);
  }
}

ConfigOverrides read_overrides(const Reader& r, const std::string& p) {
  r.only_keys(p, {"iterations", "seed", "burn_in", "thinning", "workers", "eval_sampling",
                  "epsilon_min", "freeze", "inner_steps", "confidence_iterations", "scale_mode",
                  "candidates"});
  const auto& obj = r.object(p);
  ConfigOverrides c;
  auto count = [&](const char* key, std::optional<std::size_t>& field, std::uint64_t minimum) {
    if (!obj.contains(key)) return;
    const auto v = r.unsigned_integer(p + "/" + key);
    if (v < minimum) r.fail(p + "/" + key, std::string(key) + " must be at least " + std::to_string(minimum));
    field = static_cast<std::size_t>(v);
  };
  count("iterations", c.iterations, 1);
  if (obj.contains("seed")) c.seed = r.unsigned_integer(p + "/seed");
  count("burn_in", c.burn_in, 0);
  count("thinning", c.thinning, 1);
  count("workers", c.workers, 1);
  count("inner_steps", c.inner_steps, 1);
  count("confidence_iterations", c.confidence_iterations, 1);
  count("candidates", c.candidates, 1);
  if (obj.contains("eval_sampling")) {
    c.eval_sampling = parse_eval_sampling(r.string(p + "/eval_sampling"));
    if (!c.eval_sampling) r.fail(p + "/eval_sampling", "eval_sampling must be 'continuous' or 'integer'");
  }
  if (obj.contains("freeze")) {
    c.freeze = parse_freeze_policy(r.string(p + "/freeze"));
    if (!c.freeze) r.fail(p + "/freeze", "freeze must be 'capped' or 'half'");
  }
  if (obj.contains("scale_mode")) {
    c.scale_mode = parse_scale_mode(r.string(p + "/scale_mode"));
    if (!c.scale_mode) r.fail(p + "/scale_mode", "scale_mode must be 'given', 'sample' or 'search'");
  }
  if (obj.contains("epsilon_min")) {
    const double e = r.number(p + "/epsilon_min");
    if (!(e > 0.0)) r.fail(p + "/epsilon_min", "epsilon_min must be positive");
    c.epsilon_min = e;
  }
  return c;
}

ordered_json overrides_json(const ConfigOverrides& c) {
  ordered_json o = ordered_json::object();
  if (c.iterations) o["iterations"] = *c.iterations;
  if (c.seed) o["seed"] = *c.seed;
  if (c.burn_in) o["burn_in"] = *c.burn_in;
  if (c.thinning) o["thinning"] = *c.thinning;
  if (c.workers) o["workers"] = *c.workers;
  if (c.eval_sampling) o["eval_sampling"] = to_string(*c.eval_sampling);
  if (c.epsilon_min) o["epsilon_min"] = *c.epsilon_min;
  if (c.freeze) o["freeze"] = to_string(*c.freeze);
  if (c.inner_steps) o["inner_steps"] = *c.inner_steps;
  if (c.confidence_iterations) o["confidence_iterations"] = *c.confidence_iterations;
  if (c.scale_mode) o["scale_mode"] = to_string(*c.scale_mode);
  if (c.candidates) o["candidates"] = *c.candidates;
  return o;
}

ordered_json number_json(double x) {
  if (std::floor(x) == x && std::fabs(x) < 1e15) return static_cast<std::int64_t>(x);
  return x;
}

void check_labels(const Reader& r, const std::vector<std::string>& labels, const std::string& list,
                  const char* what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string p = list + "/" + std::to_string(i) + "/label";
    if (labels[i].empty()) r.fail(p, std::string(what) + " label must not be empty");
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[j] == labels[i]) r.fail(p, std::string("duplicate ") + what + " label '" + labels[i] + "'");
    }
  }
}

}  // namespace

bool ProblemFile::operator==(const ProblemFile& o) const {
  return problem.criteria == o.problem.criteria && problem.directions == o.problem.directions &&
         problem.alternatives == o.problem.alternatives &&
         same_intervals(problem.evaluations, o.problem.evaluations) &&
         criterion_names == o.criterion_names && alternative_names == o.alternative_names &&
         preferences == o.preferences && scale == o.scale && config == o.config;
}

ProblemFile parse_problem(std::string_view text) {
  const json root = parse_json(text);
  const Reader r(text, root);
  if (!root.is_object()) r.fail("", "a problem file is a JSON object");
  r.only_keys("", {"criteria", "alternatives", "preferences", "scale", "config"});
  if (!root.contains("criteria")) r.fail("", "missing 'criteria'");
  if (!root.contains("alternatives")) r.fail("", "missing 'alternatives'");

  ProblemFile f;
  const auto& criteria = r.array("/criteria");
  if (criteria.size() < 2) r.fail("/criteria", "at least two criteria are required");
  if (criteria.size() > kMaxCompiledCriteria) {
    r.fail("/criteria", "at most " + std::to_string(kMaxCompiledCriteria) + " criteria are supported");
  }
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const std::string p = "/criteria/" + std::to_string(i);
    r.only_keys(p, {"label", "direction", "name"});
    if (!criteria[i].contains("label")) r.fail(p, "criterion without 'label'");
    f.problem.criteria.push_back(r.string(p + "/label"));
    f.criterion_names.push_back(criteria[i].contains("name") ? r.string(p + "/name") : "");
    Direction d = Direction::kMaximize;
    if (criteria[i].contains("direction")) {
      const auto text_dir = r.string(p + "/direction");
      if (text_dir == "minimize") d = Direction::kMinimize;
      else if (text_dir != "maximize") r.fail(p + "/direction", "direction must be 'maximize' or 'minimize'");
    }
    f.problem.directions.push_back(d);
  }
  check_labels(r, f.problem.criteria, "/criteria", "criterion");

  if (root.contains("scale")) {
    const auto s = r.string("/scale");
    if (s == "heterogeneous") f.scale = ScaleKind::kHeterogeneous;
    else if (s != "common") r.fail("/scale", "scale must be 'common' or 'heterogeneous'");
  }

  const auto& alternatives = r.array("/alternatives");
  if (alternatives.empty()) r.fail("/alternatives", "at least one alternative is required");
  const std::size_t n = f.problem.criteria.size();
  for (std::size_t k = 0; k < alternatives.size(); ++k) {
    const std::string p = "/alternatives/" + std::to_string(k);
    r.only_keys(p, {"label", "evaluations", "name"});
    if (!alternatives[k].contains("label")) r.fail(p, "alternative without 'label'");
    if (!alternatives[k].contains("evaluations")) r.fail(p, "alternative without 'evaluations'");
    f.problem.alternatives.push_back(r.string(p + "/label"));
    f.alternative_names.push_back(alternatives[k].contains("name") ? r.string(p + "/name") : "");
    const auto& evals = r.array(p + "/evaluations");
    if (evals.size() != n) {
      r.fail(p + "/evaluations", "expected " + std::to_string(n) + " evaluations, found " +
                                     std::to_string(evals.size()));
    }
    std::vector<IntervalEvaluation> row;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string q = p + "/evaluations/" + std::to_string(i);
      IntervalEvaluation e;
      if (evals[i].is_array()) {
        if (evals[i].size() != 2) r.fail(q, "an interval is written [lo, hi]");
        e = {r.number(q + "/0"), r.number(q + "/1")};
        if (e.lo > e.hi) r.fail(q, "interval with lo > hi");
      } else {
        const double x = r.number(q);
        e = {x, x};
      }
      if (f.scale == ScaleKind::kCommon && e.lo < 0.0) {
        r.fail(q, "negative evaluation on a common scale; shift the scale to be nonnegative");
      }
      row.push_back(e);
    }
    f.problem.evaluations.push_back(std::move(row));
  }
  check_labels(r, f.problem.alternatives, "/alternatives", "alternative");
  if (f.scale == ScaleKind::kHeterogeneous && f.problem.has_intervals()) {
    r.fail("/scale", "heterogeneous scales need point evaluations");
  }

  if (root.contains("preferences")) {
    const auto& prefs = r.array("/preferences");
    for (std::size_t s = 0; s < prefs.size(); ++s) {
      const std::string p = "/preferences/" + std::to_string(s);
      f.preferences.push_back(r.string(p));
      try {
        const auto st = parse_statement(f.preferences.back(), f.problem.criteria, f.problem.alternatives);
        check_statement(st, n, f.problem.alternative_count());
      } catch (const StatementSyntaxError& e) {
        r.fail_at(p, 1 + e.column(), e.what());
      } catch (const std::invalid_argument& e) {
        r.fail(p, e.what());
      }
    }
  }
  if (root.contains("config")) f.config = read_overrides(r, "/config");
  if (f.config.eval_sampling) {
    try {
      check_intervals(f.problem.evaluations, *f.config.eval_sampling);
    } catch (const std::invalid_argument& e) {
      r.fail("/alternatives", e.what());
    }
  }
  return f;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemFile load_problem(const std::string& path) {
  const std::string text = read_text_file(path);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? parse_matrix_csv(text) : parse_problem(text);
}

std::string serialize_problem(const ProblemFile& f) {
  ordered_json root;
  ordered_json criteria = ordered_json::array();
  for (std::size_t i = 0; i < f.problem.criteria.size(); ++i) {
    ordered_json c;
    c["label"] = f.problem.criteria[i];
    if (i < f.criterion_names.size() && !f.criterion_names[i].empty()) c["name"] = f.criterion_names[i];
    c["direction"] = to_string(f.problem.directions[i]);
    criteria.push_back(std::move(c));
  }
  root["criteria"] = std::move(criteria);
  ordered_json alternatives = ordered_json::array();
  for (std::size_t k = 0; k < f.problem.alternatives.size(); ++k) {
    ordered_json a;
    a["label"] = f.problem.alternatives[k];
    if (k < f.alternative_names.size() && !f.alternative_names[k].empty()) {
      a["name"] = f.alternative_names[k];
    }
    ordered_json evals = ordered_json::array();
    for (const auto& e : f.problem.evaluations[k]) {
      if (e.is_point()) evals.push_back(number_json(e.lo));
      else evals.push_back(ordered_json::array({number_json(e.lo), number_json(e.hi)}));
    }
    a["evaluations"] = std::move(evals);
    alternatives.push_back(std::move(a));
  }
  root["alternatives"] = std::move(alternatives);
  root["preferences"] = f.preferences;
  root["scale"] = to_string(f.scale);
  if (!f.config.empty()) root["config"] = overrides_json(f.config);
  return root.dump(2) + "\n";
}

ConfigOverrides parse_overrides(std::string_view text) {
  const json root = parse_json(text.empty() ? std::string_view("{}") : text);
  const Reader r(text, root);
  if (!root.is_object()) r.fail("", "expected a JSON object");
  return read_overrides(r, "");
}

std::string serialize_overrides(const ConfigOverrides& c) { return overrides_json(c).dump(); }

ProblemFile parse_matrix_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start < text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos) lines.pop_back();
  if (lines.empty()) throw ProblemParseError("empty CSV", 1, 1);

  struct Field {
    std::string_view text;
    std::size_t column;
  };
  auto split = [](std::string_view line, std::size_t line_no) {
    std::vector<Field> out;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      std::string_view raw = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      std::size_t lead = raw.find_first_not_of(" \t");
      if (lead == std::string_view::npos) lead = raw.size();
      std::string_view trimmed = raw.substr(lead);
      while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t')) trimmed.remove_suffix(1);
      if (trimmed.find('"') != std::string_view::npos) {
        throw ProblemParseError("quoted CSV fields are not supported", line_no, start + lead + 1);
      }
      out.push_back({trimmed, start + lead + 1});
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  };
  auto number = [](const Field& f, std::size_t line_no) {
    double x = 0.0;
    const auto* first = f.text.data();
    const auto* last = first + f.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last || f.text.empty() || !std::isfinite(x)) {
      throw ProblemParseError("expected a number, found '" + std::string(f.text) + "'", line_no, f.column);
    }
    return x;
  };

  ProblemFile f;
  const auto header = split(lines[0], 1);
  if (header.size() < 3) throw ProblemParseError("header needs a label column and two criteria", 1, 1);
  for (std::size_t i = 1; i < header.size(); ++i) {
    std::string_view label = header[i].text;
    Direction d = Direction::kMaximize;
    if (const auto colon = label.rfind(':'); colon != std::string_view::npos) {
      const auto suffix = label.substr(colon + 1);
      if (suffix == "min") d = Direction::kMinimize;
      else if (suffix != "max") {
        throw ProblemParseError("direction suffix must be ':min' or ':max'", 1, header[i].column + colon);
      }
      label = label.substr(0, colon);
    }
    if (label.empty()) throw ProblemParseError("empty criterion label", 1, header[i].column);
    f.problem.criteria.emplace_back(label);
    f.problem.directions.push_back(d);
    f.criterion_names.emplace_back();
  }
  const std::size_t n = f.problem.criteria.size();
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    const auto fields = split(lines[li], line_no);
    if (fields.size() != n + 1) {
      throw ProblemParseError("expected " + std::to_string(n + 1) + " fields, found " +
                                  std::to_string(fields.size()), line_no, 1);
    }
    if (fields[0].text.empty()) throw ProblemParseError("empty alternative label", line_no, 1);
    f.problem.alternatives.emplace_back(fields[0].text);
    f.alternative_names.emplace_back();
    std::vector<IntervalEvaluation> row;
    for (std::size_t i = 1; i <= n; ++i) {
      const auto dots = fields[i].text.find("..");
      IntervalEvaluation e;
      if (dots == std::string_view::npos) {
        const double x = number(fields[i], line_no);
        e = {x, x};
      } else {
        e.lo = number({fields[i].text.substr(0, dots), fields[i].column}, line_no);
        e.hi = number({fields[i].text.substr(dots + 2), fields[i].column + dots + 2}, line_no);
        if (e.lo > e.hi) throw ProblemParseError("interval with lo > hi", line_no, fields[i].column);
      }
      if (e.lo < 0.0) {
        throw ProblemParseError("negative evaluation on a common scale; shift the scale to be nonnegative",
                                line_no, fields[i].column);
      }
      row.push_back(e);
    }
    f.problem.evaluations.push_back(std::move(row));
  }
  if (f.problem.alternatives.empty()) throw ProblemParseError("no alternatives", 2, 1);
  try {
    f.problem.check();
  } catch (const std::invalid_argument& e) {
    throw ProblemParseError(e.what(), 0, 0);
  }
  return f;
}

std::vector<PreferenceStatement> parse_preferences(const ProblemFile& file) {
  std::vector<PreferenceStatement> out;
  for (std::size_t s = 0; s < file.preferences.size(); ++s) {
    try {
      out.push_back(parse_statement(file.preferences[s], file.problem.criteria, file.problem.alternatives));
      check_statement(out.back(), file.problem.criterion_count(), file.problem.alternative_count());
    } catch (const StatementSyntaxError& e) {
      throw PreferenceParseError(e.what(), s, e.column());
    } catch (const std::invalid_argument& e) {
      throw PreferenceParseError(e.what(), s, 0);
    }
  }
  return out;
}

}  // namespace smaa_choquet
