#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "tam/dynamics.hpp"
#include "tam/system.hpp"

namespace tam::api {

struct Response {
  int status = 200;
  std::string body;
};

struct ServiceConfig {
  // Each mutation writes the session trace document to <dir>/<id>.json.
  std::optional<std::filesystem::path> snapshot_dir;
};

// In-memory interactive sessions. Mutations on one session are serialized;
// reads work on immutable snapshots. Every response body is JSON.
class SessionService {
 public:
  explicit SessionService(ServiceConfig config = {});

  // Routes "/sessions..." requests; unknown routes give 404.
  Response handle(const std::string& method, const std::string& path, const std::string& body);

  std::size_t session_count() const;

 private:
  struct Snapshot {
    std::shared_ptr<const TileSystem> system;
    AssemblyTrace trace;
    Assembly assembly;
    std::uint64_t revision = 0;
  };
  struct Session {
    std::mutex write;
    mutable std::mutex pointer;
    std::shared_ptr<const Snapshot> current;

    std::shared_ptr<const Snapshot> load() const;
    void store(std::shared_ptr<const Snapshot> next);
  };

  Response create(const std::string& body);
  Response remove(const std::string& id);
  Response read(const Session& session, const std::string& op);
  Response mutate(const std::string& id, Session& session, const std::string& op, const std::string& body);
  Response movie(const Session& session, const std::string& body);
  Response splice_preview(const Session& session, const std::string& body);
  std::shared_ptr<Session> find(const std::string& id) const;
  void persist(const std::string& id, const Snapshot& snapshot) const;

  ServiceConfig config_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

// HTTP front end over a SessionService.
class HttpServer {
 public:
  explicit HttpServer(SessionService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tam::api
