#include "smaa_choquet/service.hpp"

#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "smaa_choquet/results_io.hpp"
#include "smaa_choquet/statement_syntax.hpp"

namespace smaa_choquet {

using nlohmann::json;
using nlohmann::ordered_json;

struct SessionService::Session {
  struct Entry {
    std::uint64_t id;
    std::string text;
    PreferenceStatement statement;
  };

  std::string id;
  std::mutex mutex;
  std::condition_variable idle;
  ProblemFile file;   // preferences mirror `statements`
  std::vector<Entry> statements;
  std::uint64_t next_statement = 1;
  std::uint64_t revision = 1;
  std::string state = "idle";   // idle | running | done | failed | cancelled
  std::string error;
  std::optional<ResultBundle> bundle;
  std::uint64_t results_revision = 0;
  std::uint64_t run_total = 0;
  std::unique_ptr<RunControl> control;
  std::thread worker;

  bool running() const { return state == "running"; }

  std::vector<PreferenceStatement> parsed() const {
    std::vector<PreferenceStatement> out;
    for (const auto& e : statements) out.push_back(e.statement);
    return out;
  }

  void sync_preferences() {
    file.preferences.clear();
    for (const auto& e : statements) file.preferences.push_back(e.text);
  }
};

namespace {

HttpResponse json_response(int status, const ordered_json& body) { return {status, body.dump(), "application/json"}; }

HttpResponse error_response(int status, const std::string& message, ordered_json extra = ordered_json::object()) {
  ordered_json body;
  body["error"] = message;
  for (auto& [k, v] : extra.items()) body[k] = v;
  return json_response(status, body);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string part;
  for (char c : path.substr(0, path.find('?'))) {
    if (c == '/') {
      if (!part.empty()) out.push_back(std::move(part));
      part.clear();
    } else {
      part += c;
    }
  }
  if (!part.empty()) out.push_back(std::move(part));
  return out;
}

ordered_json statements_json(const SessionService::Session& s) {
  ordered_json out = ordered_json::array();
  for (const auto& e : s.statements) out.push_back({{"id", e.id}, {"text", e.text}});
  return out;
}

ordered_json compatibility_json(const SessionService::Session& s, const CompatibilitySummary& c,
                                const std::vector<std::uint64_t>& ids,
                                const std::vector<std::string>& texts) {
  ordered_json out;
  out["revision"] = s.revision;
  out["status"] = to_string(c.status);
  out["epsilon_star"] = c.epsilon_star;
  out["compatible"] = c.compatible;
  out["alternatives_included"] = c.alternatives_included;
  ordered_json rows = ordered_json::array();
  ordered_json provenance = ordered_json::array();
  for (const auto& check : c.statements) {
    ordered_json r;
    r["id"] = ids[check.index];
    r["text"] = texts[check.index];
    r["checked"] = check.checked;
    r["rows"] = check.rows;
    r["min_slack"] = check.checked ? ordered_json(check.min_slack) : ordered_json(nullptr);
    r["binding"] = check.binding;
    if (check.binding) provenance.push_back(ids[check.index]);
    rows.push_back(std::move(r));
  }
  out["statements"] = std::move(rows);
  out["provenance"] = std::move(provenance);
  return out;
}

}  // namespace

SessionService::SessionService(ServiceOptions options) : options_(std::move(options)) {
  if (!options_.state_dir.empty()) load_state();
}

SessionService::~SessionService() {
  std::lock_guard lock(mutex_);
  for (auto& [id, s] : sessions_) {
    std::unique_lock sl(s->mutex);
    if (s->control) s->control->cancel = true;
    sl.unlock();
    if (s->worker.joinable()) s->worker.join();
  }
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void SessionService::wait(const std::string& id) {
  auto s = find(id);
  if (!s) return;
  std::unique_lock lock(s->mutex);
  s->idle.wait(lock, [&] { return !s->running(); });
}

void SessionService::persist(const Session& s) const {
  if (options_.state_dir.empty()) return;
  ordered_json doc;
  doc["id"] = s.id;
  doc["revision"] = s.revision;
  doc["next_statement"] = s.next_statement;
  ProblemFile bare = s.file;
  bare.preferences.clear();
  doc["problem"] = ordered_json::parse(serialize_problem(bare));
  doc["statements"] = statements_json(s);
  if (s.bundle) {
    doc["results"] = {{"revision", s.results_revision}, {"files", s.bundle->files}};
  }
  std::filesystem::create_directories(options_.state_dir);
  const auto path = std::filesystem::path(options_.state_dir) / (s.id + ".json");
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << doc.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

void SessionService::load_state() {
  if (!std::filesystem::is_directory(options_.state_dir)) return;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(options_.state_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const json doc = json::parse(read_text_file(path.string()));
    auto s = std::make_shared<Session>();
    s->id = doc.at("id").get<std::string>();
    s->revision = doc.at("revision").get<std::uint64_t>();
    s->next_statement = doc.at("next_statement").get<std::uint64_t>();
    s->file = parse_problem(doc.at("problem").dump());
    for (const auto& e : doc.at("statements")) {
      const auto text = e.at("text").get<std::string>();
      s->statements.push_back({e.at("id").get<std::uint64_t>(), text,
                               parse_statement(text, s->file.problem.criteria, s->file.problem.alternatives)});
    }
    s->sync_preferences();
    if (doc.contains("results")) {
      ResultBundle b;
      b.files = doc["results"].at("files").get<std::map<std::string, std::string>>();
      s->bundle = std::move(b);
      s->results_revision = doc["results"].at("revision").get<std::uint64_t>();
      s->state = "done";
    }
    if (s->id.size() > 1 && s->id[0] == 's') {
      next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(s->id.substr(1)) + 1);
    }
    sessions_[s->id] = std::move(s);
  }
}

HttpResponse SessionService::create(const std::string& body) {
  ProblemFile file;
  try {
    file = parse_problem(body);
  } catch (const ProblemParseError& e) {
    return error_response(400, e.message(), {{"line", e.line()}, {"column", e.column()}});
  }
  auto s = std::make_shared<Session>();
  for (std::size_t i = 0; i < file.preferences.size(); ++i) {
    s->statements.push_back({s->next_statement++, file.preferences[i],
                             parse_statement(file.preferences[i], file.problem.criteria,
                                             file.problem.alternatives)});
  }
  s->file = std::move(file);
  s->sync_preferences();
  {
    std::lock_guard lock(mutex_);
    s->id = "s" + std::to_string(next_id_++);
    sessions_[s->id] = s;
  }
  std::lock_guard sl(s->mutex);
  persist(*s);
  ordered_json out;
  out["id"] = s->id;
  out["revision"] = s->revision;
  out["statements"] = statements_json(*s);
  return json_response(201, out);
}

HttpResponse SessionService::list() {
  std::vector<std::shared_ptr<Session>> all;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, s] : sessions_) all.push_back(s);
  }
  ordered_json out = ordered_json::array();
  for (const auto& s : all) {
    std::lock_guard sl(s->mutex);
    out.push_back({{"id", s->id},
                   {"revision", s->revision},
                   {"state", s->state},
                   {"criteria", s->file.problem.criterion_count()},
                   {"alternatives", s->file.problem.alternative_count()},
                   {"statements", s->statements.size()}});
  }
  return json_response(200, out);
}

HttpResponse SessionService::handle(const std::string& method, const std::string& path,
                                    const std::string& body) {
  try {
    const auto parts = split_path(path);
    if (parts.empty() || parts[0] != "sessions") return error_response(404, "no such resource");
    if (parts.size() == 1) {
      if (method == "POST") return create(body);
      if (method == "GET") return list();
      return error_response(405, "method not allowed");
    }
    auto s = find(parts[1]);
    if (!s) return error_response(404, "unknown session '" + parts[1] + "'");
    const std::string sub = parts.size() > 2 ? parts[2] : "";

    if (sub.empty()) {
      if (method == "GET") {
        std::lock_guard sl(s->mutex);
        ordered_json out;
        out["id"] = s->id;
        out["revision"] = s->revision;
        out["state"] = s->state;
        out["results_revision"] = s->results_revision;
        ProblemFile bare = s->file;
        bare.preferences.clear();
        out["problem"] = ordered_json::parse(serialize_problem(bare));
        out["statements"] = statements_json(*s);
        return json_response(200, out);
      }
      if (method == "DELETE") {
        {
          std::lock_guard lock(mutex_);
          sessions_.erase(s->id);
        }
        std::unique_lock sl(s->mutex);
        if (s->control) s->control->cancel = true;
        sl.unlock();
        if (s->worker.joinable()) s->worker.join();
        if (!options_.state_dir.empty()) {
          std::filesystem::remove(std::filesystem::path(options_.state_dir) / (s->id + ".json"));
        }
        return json_response(200, {{"id", s->id}, {"deleted", true}});
      }
      return error_response(405, "method not allowed");
    }

    if (sub == "statements") {
      std::unique_lock sl(s->mutex);
      if (method == "POST" && parts.size() == 3) {
        if (s->running()) return error_response(409, "a run is in flight for this session");
        std::string text;
        try {
          const json req = json::parse(body);
          text = req.at("text").get<std::string>();
        } catch (const json::exception&) {
          return error_response(400, "expected {\"text\": \"<statement>\"}");
        }
        PreferenceStatement statement;
        try {
          statement = parse_statement(text, s->file.problem.criteria, s->file.problem.alternatives);
          check_statement(statement, s->file.problem.criterion_count(), s->file.problem.alternative_count());
        } catch (const StatementSyntaxError& e) {
          return error_response(400, e.what(), {{"column", e.column() + 1}});
        } catch (const std::invalid_argument& e) {
          return error_response(400, e.what());
        }
        auto candidate = s->parsed();
        candidate.push_back(statement);
        std::vector<std::uint64_t> ids;
        std::vector<std::string> texts;
        for (const auto& e : s->statements) {
          ids.push_back(e.id);
          texts.push_back(e.text);
        }
        ids.push_back(s->next_statement);
        texts.push_back(text);
        const auto check = check_problem(s->file, candidate, make_request(s->file).config.epsilon_min);
        if (!check.compatible) {
          auto extra = compatibility_json(*s, check, ids, texts);
          return error_response(422, "statement makes the preferences incompatible", extra);
        }
        const std::uint64_t id = s->next_statement++;
        s->statements.push_back({id, text, statement});
        s->sync_preferences();
        ++s->revision;
        persist(*s);
        return json_response(201, {{"id", id}, {"text", text}, {"revision", s->revision},
                                   {"epsilon_star", check.epsilon_star}});
      }
      if (method == "DELETE" && parts.size() == 4) {
        if (s->running()) return error_response(409, "a run is in flight for this session");
        std::uint64_t sid = 0;
        try {
          sid = std::stoull(parts[3]);
        } catch (const std::exception&) {
          return error_response(404, "unknown statement '" + parts[3] + "'");
        }
        const auto it = std::find_if(s->statements.begin(), s->statements.end(),
                                     [&](const auto& e) { return e.id == sid; });
        if (it == s->statements.end()) return error_response(404, "unknown statement '" + parts[3] + "'");
        s->statements.erase(it);
        s->sync_preferences();
        ++s->revision;
        persist(*s);
        return json_response(200, {{"revision", s->revision}});
      }
      if (method == "GET" && parts.size() == 3) {
        return json_response(200, {{"revision", s->revision}, {"statements", statements_json(*s)}});
      }
      return error_response(405, "method not allowed");
    }

    if (sub == "run") {
      std::unique_lock sl(s->mutex);
      if (method == "DELETE") {
        if (s->running() && s->control) s->control->cancel = true;
        return json_response(200, {{"state", s->state}});
      }
      if (method != "POST") return error_response(405, "method not allowed");
      if (s->running()) return error_response(409, "a run is already in flight for this session");
      AnalysisRequest request;
      try {
        request = make_request(s->file, parse_overrides(body));
      } catch (const ProblemParseError& e) {
        return error_response(400, e.message(), {{"line", e.line()}, {"column", e.column()}});
      }
      const auto statements = s->parsed();
      const auto check = check_problem(s->file, statements, request.config.epsilon_min);
      if (!check.compatible) {
        std::vector<std::uint64_t> ids;
        std::vector<std::string> texts;
        for (const auto& e : s->statements) {
          ids.push_back(e.id);
          texts.push_back(e.text);
        }
        return error_response(422, "the statements admit no compatible capacity",
                              compatibility_json(*s, check, ids, texts));
      }
      if (s->worker.joinable()) s->worker.join();
      s->state = "running";
      s->error.clear();
      s->control = std::make_unique<RunControl>();
      s->run_total = request.config.iterations;
      const std::uint64_t revision = s->revision;
      const ProblemFile file = s->file;
      RunControl* control = s->control.get();
      Session* raw = s.get();
      s->worker = std::thread([this, raw, file, statements, request, revision, control] {
        std::optional<ResultBundle> bundle;
        std::string error;
        std::string final_state = "done";
        try {
          bundle = make_bundle(file, analyse(file, statements, request, control));
        } catch (const RunCancelled&) {
          final_state = "cancelled";
        } catch (const std::exception& e) {
          final_state = "failed";
          error = e.what();
        }
        std::lock_guard lock(raw->mutex);
        raw->state = final_state;
        raw->error = error;
        if (bundle) {
          raw->bundle = std::move(bundle);
          raw->results_revision = revision;
          persist(*raw);
        }
        raw->idle.notify_all();
      });
      return json_response(202, {{"state", "running"}, {"revision", revision}});
    }

    std::lock_guard sl(s->mutex);
    if (method != "GET") return error_response(405, "method not allowed");
    if (sub == "status") {
      ordered_json out;
      out["state"] = s->state;
      out["revision"] = s->revision;
      out["results_revision"] = s->results_revision;
      out["completed"] = s->control ? s->control->completed.load() : 0;
      out["total"] = s->run_total;
      out["error"] = s->error.empty() ? ordered_json(nullptr) : ordered_json(s->error);
      return json_response(200, out);
    }
    if (sub == "compatibility") {
      std::vector<std::uint64_t> ids;
      std::vector<std::string> texts;
      for (const auto& e : s->statements) {
        ids.push_back(e.id);
        texts.push_back(e.text);
      }
      const auto check = check_problem(s->file, s->parsed(), make_request(s->file).config.epsilon_min);
      return json_response(200, compatibility_json(*s, check, ids, texts));
    }
    if (!s->bundle) return error_response(404, "no results yet");
    if (sub == "results") {
      const bool stale = s->results_revision != s->revision;
      std::string text = "{\"revision\":" + std::to_string(s->revision) +
                         ",\"results_revision\":" + std::to_string(s->results_revision) +
                         ",\"stale\":" + (stale ? "true" : "false") +
                         ",\"results\":" + s->bundle->results_json() + "}";
      return {200, std::move(text), "application/json"};
    }
    if (sub == "files" && parts.size() == 4) {
      const auto it = s->bundle->files.find(parts[3]);
      if (it == s->bundle->files.end()) return error_response(404, "no file '" + parts[3] + "'");
      const bool csv = it->first.size() > 4 && it->first.substr(it->first.size() - 4) == ".csv";
      return {200, it->second, csv ? "text/csv" : "application/json"};
    }
    if (sub == "csv" && parts.size() == 4) {
      try {
        return {200, csv_table(*s->bundle, parts[3]), "text/csv"};
      } catch (const std::out_of_range& e) {
        return error_response(404, e.what());
      }
    }
    return error_response(404, "no such resource");
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

void serve(SessionService& service, const std::string& bind, int port) {
  httplib::Server server;
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto out = service.handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Delete(".*", forward);
  if (!server.listen(bind, port)) {
    throw std::runtime_error("cannot listen on " + bind + ":" + std::to_string(port));
  }
}

}  // namespace smaa_choquet
