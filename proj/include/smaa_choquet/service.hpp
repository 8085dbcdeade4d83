#pragma once

// HTTP facade: sessions holding a problem, an editable statement list and
// the latest result bundle. Request handling is socket-free (handle()); the
// listener in serve() only forwards to it.
//
//   POST   /sessions                          problem JSON            -> 201
//   GET    /sessions                                                  -> 200
//   GET    /sessions/{id}                                             -> 200
//   DELETE /sessions/{id}                                             -> 200
//   POST   /sessions/{id}/statements          {"text": "imp: g1 > g2"} -> 201 | 400 | 409 | 422
//   DELETE /sessions/{id}/statements/{sid}                            -> 200 | 409
//   POST   /sessions/{id}/run                 config overrides        -> 202 | 409 | 422
//   DELETE /sessions/{id}/run                 cancel                  -> 200
//   GET    /sessions/{id}/status                                      -> 200
//   GET    /sessions/{id}/results             {revision, results_revision, stale, results}
//   GET    /sessions/{id}/files/{name}        bundle file verbatim
//   GET    /sessions/{id}/csv/{table}         text/csv
//   GET    /sessions/{id}/compatibility       ε* and per-statement slack
//
// Every error body is {"error": message, ...}.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace smaa_choquet {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceOptions {
  /// One JSON file per session; empty keeps sessions in memory only.
  std::string state_dir;
};

class SessionService {
 public:
  explicit SessionService(ServiceOptions options = {});
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  HttpResponse handle(const std::string& method, const std::string& path, const std::string& body);

  /// Blocks until the session has no run in flight.
  void wait(const std::string& id);

  struct Session;

 private:
  std::shared_ptr<Session> find(const std::string& id);
  HttpResponse create(const std::string& body);
  HttpResponse list();
  void persist(const Session& s) const;
  void load_state();

  ServiceOptions options_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// Listens until the process is stopped.
void serve(SessionService& service, const std::string& bind, int port);

}  // namespace smaa_choquet
