#include "smaa_choquet/results_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace smaa_choquet {

using nlohmann::ordered_json;

namespace {

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

// Number whose shortest representation is the formatted text.
ordered_json rounded(double value, int decimals) {
  return std::stod(format_fixed(value, decimals));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

ConfigOverrides pinned(const AnalysisOutcome& outcome) {
  const auto& c = outcome.config;
  ConfigOverrides o;
  o.iterations = c.iterations;
  o.seed = c.seed;
  o.burn_in = c.burn_in;
  o.thinning = c.thinning;
  o.workers = outcome.results.metadata.workers;
  o.eval_sampling = c.eval_sampling;
  o.epsilon_min = c.epsilon_min;
  o.freeze = c.freeze;
  o.inner_steps = c.inner_steps;
  o.confidence_iterations = c.confidence_iterations;
  o.scale_mode = outcome.scale_mode;
  if (outcome.scale) o.candidates = outcome.scale->candidates;
  return o;
}

ordered_json percent_matrix(const std::vector<std::vector<double>>& m) {
  ordered_json out = ordered_json::array();
  for (const auto& row : m) {
    ordered_json r = ordered_json::array();
    for (double v : row) r.push_back(rounded(v, 2));
    out.push_back(std::move(r));
  }
  return out;
}

ordered_json mobius_vector(const std::vector<double>& v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(rounded(x, 4));
  return out;
}

std::vector<std::string> percent_fields(const std::vector<double>& row) {
  std::vector<std::string> out;
  for (double v : row) out.push_back(format_percent(v));
  return out;
}

}  // namespace

std::string format_percent(double value) { return format_fixed(value, 2); }
std::string format_mobius(double value) { return format_fixed(value, 4); }

std::vector<std::string> coordinate_labels(const std::vector<std::string>& criteria) {
  std::vector<std::string> out;
  for (const auto& c : criteria) out.push_back("m(" + c + ")");
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    for (std::size_t j = i + 1; j < criteria.size(); ++j) {
      out.push_back("m(" + criteria[i] + "," + criteria[j] + ")");
    }
  }
  return out;
}

ProblemFile scale_problem_file(const ProblemFile& file, const AnalysisOutcome& outcome) {
  ProblemFile out = file;
  out.problem = outcome.analysed;
  out.scale = ScaleKind::kCommon;
  out.config = {};
  return out;
}

ResultBundle make_bundle(const ProblemFile& file, const AnalysisOutcome& outcome) {
  const SmaaResults& r = outcome.results;
  const auto& meta = r.metadata;
  const auto& alts = file.problem.alternatives;
  const auto& crits = file.problem.criteria;
  const auto coords = coordinate_labels(crits);
  const std::size_t l = alts.size();

  ProblemFile embedded = file;
  embedded.config = pinned(outcome);

  ordered_json root;
  root["format"] = "smaa-choquet-results";
  root["version"] = kVersion;

  ordered_json m;
  m["case"] = to_string(meta.mode);
  m["scale_mode"] = to_string(outcome.scale_mode);
  m["seed"] = meta.seed;
  m["iterations"] = meta.iterations;
  m["iterations_total"] = r.iterations_total();
  m["iterations_feasible"] = r.iterations_feasible();
  m["workers"] = meta.workers;
  m["burn_in"] = meta.burn_in;
  m["thinning"] = meta.thinning;
  m["inner_steps"] = meta.inner_steps;
  m["confidence_iterations"] = meta.confidence_iterations;
  m["eval_sampling"] = to_string(meta.eval_sampling);
  m["epsilon_min"] = meta.epsilon_min;
  m["freeze"] = to_string(meta.freeze);
  m["epsilon_star"] = meta.epsilon_star ? ordered_json(*meta.epsilon_star) : ordered_json(nullptr);
  m["epsilon_freeze"] = meta.epsilon_freeze ? ordered_json(*meta.epsilon_freeze) : ordered_json(nullptr);
  m["per_iteration_constraints"] = meta.per_iteration_constraints;
  m["rng"] = meta.rng;
  m["distributions"] = "uniform capacities, uniform evaluations";
  root["metadata"] = std::move(m);
  root["problem"] = ordered_json::parse(serialize_problem(embedded));

  if (outcome.scale) {
    const auto& s = *outcome.scale;
    ordered_json sj;
    sj["candidates"] = s.candidates;
    sj["winner"] = s.winner;
    sj["epsilon"] = s.epsilon;
    sj["infeasible"] = s.infeasible;
    sj["scale_independent"] = s.scale_independent;
    ordered_json cols = ordered_json::array();
    for (std::size_t i = 0; i < s.scale.columns.size(); ++i) {
      ordered_json c;
      c["criterion"] = crits[i];
      c["levels"] = s.scale.columns[i].levels;
      c["values"] = s.scale.columns[i].values;
      cols.push_back(std::move(c));
    }
    sj["columns"] = std::move(cols);
    root["scale"] = std::move(sj);
  }

  root["criteria"] = crits;
  root["alternatives"] = alts;
  root["coordinates"] = coords;
  root["rank_acceptability"] = percent_matrix(r.rank_acceptability);
  ordered_json counts = ordered_json::array();
  for (std::size_t k = 0; k < l; ++k) {
    counts.push_back(std::vector<std::uint64_t>(r.tally.rank_counts.begin() + static_cast<std::ptrdiff_t>(k * l),
                                                r.tally.rank_counts.begin() + static_cast<std::ptrdiff_t>((k + 1) * l)));
  }
  root["rank_counts"] = std::move(counts);
  root["pref_strict"] = percent_matrix(r.pref_strict);
  root["pref_indiff"] = percent_matrix(r.pref_indiff);
  ordered_json central = ordered_json::array();
  for (std::size_t k = 0; k < l; ++k) {
    if (!r.central[k]) {
      central.push_back(nullptr);
      continue;
    }
    ordered_json c;
    c["first_count"] = r.first_counts[k];
    c["capacity"] = mobius_vector(*r.central[k]);
    central.push_back(std::move(c));
  }
  root["central"] = std::move(central);
  root["barycenter"] = mobius_vector(r.barycenter);
  ordered_json confidence = ordered_json::array();
  for (const auto& c : r.confidence) confidence.push_back(c ? rounded(*c, 2) : ordered_json(nullptr));
  root["confidence"] = std::move(confidence);
  ordered_json extremes = ordered_json::array();
  for (const auto& e : extreme_ranks(r.rank_acceptability)) {
    extremes.push_back({{"best", e.best}, {"worst", e.worst}});
  }
  root["extreme_ranks"] = std::move(extremes);
  const auto naror = naror_approx(r.pref_strict, r.pref_indiff);
  root["necessary_approx"] = naror.necessary;
  root["possible_approx"] = naror.possible;

  ResultBundle bundle;
  bundle.files["results.json"] = root.dump(2) + "\n";

  std::vector<std::string> header{"alternative"};
  for (std::size_t rnk = 1; rnk <= l; ++rnk) header.push_back("b" + std::to_string(rnk));
  std::string ra = csv_row(header);
  for (std::size_t k = 0; k < l; ++k) {
    auto row = percent_fields(r.rank_acceptability[k]);
    row.insert(row.begin(), alts[k]);
    ra += csv_row(row);
  }
  bundle.files["rank_acceptability.csv"] = ra;

  for (const char* name : {"pref_strict", "pref_indiff"}) {
    const auto& mat = std::string(name) == "pref_strict" ? r.pref_strict : r.pref_indiff;
    std::vector<std::string> h{"alternative"};
    h.insert(h.end(), alts.begin(), alts.end());
    std::string text = csv_row(h);
    for (std::size_t k = 0; k < l; ++k) {
      auto row = percent_fields(mat[k]);
      row.insert(row.begin(), alts[k]);
      text += csv_row(row);
    }
    bundle.files[std::string(name) + ".csv"] = text;
  }

  std::vector<std::string> ch{"alternative", "b1"};
  ch.insert(ch.end(), coords.begin(), coords.end());
  ch.push_back("confidence");
  std::string cc = csv_row(ch);
  for (std::size_t k = 0; k < l; ++k) {
    if (!r.central[k]) continue;
    std::vector<std::string> row{alts[k], format_percent(r.rank_acceptability[k][0])};
    for (double v : *r.central[k]) row.push_back(format_mobius(v));
    row.push_back(r.confidence[k] ? format_percent(*r.confidence[k]) : "");
    cc += csv_row(row);
  }
  bundle.files["central_capacities.csv"] = cc;

  std::string bc = csv_row(coords);
  std::vector<std::string> brow;
  for (double v : r.barycenter) brow.push_back(format_mobius(v));
  bc += csv_row(brow);
  bundle.files["barycenter.csv"] = bc;

  std::string er = csv_row({"alternative", "best", "worst"});
  const auto extremes_list = extreme_ranks(r.rank_acceptability);
  for (std::size_t k = 0; k < l; ++k) {
    er += csv_row({alts[k], std::to_string(extremes_list[k].best), std::to_string(extremes_list[k].worst)});
  }
  bundle.files["extreme_ranks.csv"] = er;

  if (outcome.scale) {
    bundle.files["scale.csv"] = matrix_csv(outcome.analysed);
    bundle.files["scale.json"] = serialize_problem(scale_problem_file(file, outcome));
  }
  return bundle;
}

std::string matrix_csv(const Problem& problem) {
  std::vector<std::string> header{"label"};
  header.insert(header.end(), problem.criteria.begin(), problem.criteria.end());
  std::string text = csv_row(header);
  for (std::size_t k = 0; k < problem.alternatives.size(); ++k) {
    std::vector<std::string> row{problem.alternatives[k]};
    for (const auto& e : problem.evaluations[k]) {
      row.push_back(e.is_point() ? format_mobius(e.lo) : format_mobius(e.lo) + ".." + format_mobius(e.hi));
    }
    text += csv_row(row);
  }
  return text;
}

std::string csv_table(const ResultBundle& bundle, const std::string& table) {
  const auto it = bundle.files.find(table + ".csv");
  if (it == bundle.files.end()) throw std::out_of_range("no table named '" + table + "'");
  return it->second;
}

void write_bundle(const ResultBundle& bundle, const std::string& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& [name, contents] : bundle.files) {
    const auto path = std::filesystem::path(directory) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
  }
}

ProblemFile problem_from_results(const std::string& results_json) {
  const auto root = nlohmann::json::parse(results_json, nullptr, false);
  if (root.is_discarded() || !root.is_object() || !root.contains("problem")) {
    throw ProblemParseError("not a results.json bundle", 0, 0);
  }
  return parse_problem(root["problem"].dump());
}

}  // namespace smaa_choquet
