#include "tam/server.hpp"

#include <httplib.h>

#include <sstream>

#include "tam/error.hpp"
#include "tam/io.hpp"
#include "tam/window_movie.hpp"

namespace tam::api {

namespace {

using io::Json;

Response json_response(int status, const Json& body) { return {status, body.dump()}; }

Response error_response(int status, const std::string& error, const std::string& message,
                        std::optional<std::string> kind = std::nullopt) {
  Json body{{"error", error}, {"message", message}};
  if (kind) body["kind"] = *kind;
  return json_response(status, body);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::istringstream in(path);
  for (std::string part; std::getline(in, part, '/');)
    if (!part.empty()) parts.push_back(part);
  return parts;
}

Json body_object(const std::string& body) {
  if (body.empty()) return Json::object();
  Json j = io::parse_json(body).json;
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "request body must be a JSON object", 1);
  return j;
}

}  // namespace

std::shared_ptr<const SessionService::Snapshot> SessionService::Session::load() const {
  std::lock_guard lock(pointer);
  return current;
}

void SessionService::Session::store(std::shared_ptr<const Snapshot> next) {
  std::lock_guard lock(pointer);
  current = std::move(next);
}

SessionService::SessionService(ServiceConfig config) : config_(std::move(config)) {}

std::size_t SessionService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Response SessionService::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    const auto parts = split_path(path);
    if (parts.empty() || parts[0] != "sessions") return error_response(404, "NotFound", "no route " + path);
    if (parts.size() == 1) {
      if (method == "POST") return create(body);
      return error_response(404, "NotFound", "no route " + method + " " + path);
    }
    const std::string& id = parts[1];
    auto session = find(id);
    if (!session) return error_response(404, "UnknownSession", "unknown session " + id);
    if (parts.size() == 2) {
      if (method == "DELETE") return remove(id);
      return error_response(404, "NotFound", "no route " + method + " " + path);
    }
    if (parts.size() != 3) return error_response(404, "NotFound", "no route " + path);
    const std::string& op = parts[2];
    if (method == "GET") return read(*session, op);
    if (method == "POST") {
      if (op == "movie") return movie(*session, body);
      if (op == "splice-preview") return splice_preview(*session, body);
      return mutate(id, *session, op, body);
    }
    return error_response(404, "NotFound", "no route " + method + " " + path);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::SchemaVersionUnsupported)
      return error_response(400, std::string(to_string(e.kind())), e.what());
    return error_response(422, std::string(to_string(e.kind())), e.what(), std::string(to_string(e.kind())));
  } catch (const nlohmann::json::exception& e) {
    return error_response(400, "ParseError", e.what());
  }
}

Response SessionService::create(const std::string& body) {
  const io::SourceText src = io::parse_json(body);
  auto system = std::make_shared<const TileSystem>(io::system_from_json(src.json, src.lines));
  const ValidationReport report = validate(*system);
  if (!report.ok())
    return error_response(422, "InvalidSystem", report.violations.front().message,
                          std::string(to_string(report.violations.front().kind)));
  auto snapshot = std::make_shared<Snapshot>();
  snapshot->system = system;
  snapshot->assembly = system->seed;
  auto session = std::make_shared<Session>();
  session->current = snapshot;
  std::string id;
  {
    std::unique_lock lock(sessions_mutex_);
    id = "s" + std::to_string(next_id_++);
    sessions_[id] = session;
  }
  persist(id, *snapshot);
  return json_response(201, Json{{"sessionId", id}, {"revision", 0}});
}

Response SessionService::remove(const std::string& id) {
  std::unique_lock lock(sessions_mutex_);
  sessions_.erase(id);
  return json_response(200, Json{{"deleted", id}});
}

Response SessionService::read(const Session& session, const std::string& op) {
  const auto snap = session.load();
  const TileSystem& sys = *snap->system;
  Json out{{"revision", snap->revision}};
  if (op == "assembly") {
    out["assembly"] = io::assembly_to_json(sys, snap->assembly);
    out["terminal"] = frontier(snap->assembly, sys).empty();
  } else if (op == "frontier") {
    out["frontier"] = io::placements_to_json(sys, frontier(snap->assembly, sys));
  } else if (op == "constrained") {
    Json regions = Json::array();
    for (const auto& region : constrained_regions(snap->assembly)) {
      Json cells = Json::array();
      for (const Point& p : region) cells.push_back(io::point_to_json(p, sys.variant.dimension));
      regions.push_back(cells);
    }
    out["regions"] = regions;
  } else if (op == "trace") {
    out["trace"] = io::trace_to_json({sys, std::nullopt, snap->trace, std::nullopt, std::nullopt});
  } else {
    return error_response(404, "NotFound", "no read operation " + op);
  }
  return json_response(200, out);
}

Response SessionService::mutate(const std::string& id, Session& session, const std::string& op,
                                const std::string& body) {
  if (op != "attach" && op != "undo") return error_response(404, "NotFound", "no operation " + op);
  const Json req = body_object(body);
  std::lock_guard lock(session.write);
  const auto snap = session.load();
  if (req.contains("revision") && req["revision"] != snap->revision)
    return error_response(409, "StaleRevision", "session is at revision " + std::to_string(snap->revision));
  const TileSystem& sys = *snap->system;
  auto next = std::make_shared<Snapshot>(*snap);
  next->revision = snap->revision + 1;
  if (op == "attach") {
    if (!req.contains("placement")) throw Error(ErrorKind::ParseError, "missing \"placement\"", 1);
    const auto placements = io::placements_from_json(Json::array({req["placement"]}), sys);
    const Placement p = placements.front();
    if (const auto err = attach_error(snap->assembly, p, sys))
      return error_response(422, "InvalidPlacement", "cannot attach at " + to_string(p.location, sys.variant.dimension),
                            std::string(to_string(*err)));
    next->assembly = attach(snap->assembly, p, sys);
    next->trace.steps.push_back(p);
  } else {
    if (snap->trace.empty()) return error_response(422, "NothingToUndo", "trace is empty", "NothingToUndo");
    next->trace.steps.pop_back();
    next->assembly.erase(snap->trace.steps.back().location);
  }
  session.store(next);
  persist(id, *next);
  return json_response(200, Json{{"revision", next->revision}, {"assembly", io::assembly_to_json(sys, next->assembly)}});
}

Response SessionService::movie(const Session& session, const std::string& body) {
  const auto snap = session.load();
  const io::SourceText src = io::parse_json(body);
  const Window window = io::window_from_json(src.json, src.lines);
  const WindowMovie m = extract_movie(*snap->system, snap->trace, window);
  return json_response(200, Json{{"revision", snap->revision}, {"movie", io::movie_to_json(m, snap->system->variant.dimension)}});
}

Response SessionService::splice_preview(const Session& session, const std::string& body) {
  const auto snap = session.load();
  const TileSystem& sys = *snap->system;
  const io::SourceText src = io::parse_json(body);
  const Json& j = src.json;
  for (const char* key : {"traceB", "window", "c"})
    if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing \"") + key + "\"", 1);
  AssemblyTrace b;
  b.steps = io::placements_from_json(j["traceB"], sys, src.lines, "/traceB");
  const Window window = io::window_from_json(j["window"], src.lines, "/window");
  const Point c = io::point_from_json(j["c"], sys.variant.dimension, "/c");
  SpliceOptions options;
  const std::string mode = j.value("mode", "full");
  if (mode == "bondForming") options.mode = SpliceMode::BondForming;
  else if (mode != "full") throw Error(ErrorKind::ParseError, "mode must be full or bondForming", src.lines.line("/mode"));
  const AssemblyTrace spliced = splice(sys, snap->trace, b, window, c, options);
  return json_response(200, Json{{"revision", snap->revision},
                                 {"trace", io::placements_to_json(sys, spliced.steps)},
                                 {"assembly", io::assembly_to_json(sys, run_trace(sys, spliced, false))}});
}

void SessionService::persist(const std::string& id, const Snapshot& snapshot) const {
  if (!config_.snapshot_dir) return;
  io::write_file(*config_.snapshot_dir / (id + ".json"),
                 io::serialize_trace({*snapshot.system, std::nullopt, snapshot.trace, std::nullopt, std::nullopt}));
}

struct HttpServer::Impl {
  httplib::Server server;
  SessionService* service = nullptr;
};

HttpServer::HttpServer(SessionService& service) : impl_(std::make_unique<Impl>()) {
  impl_->service = &service;
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = impl_->service->handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  impl_->server.Get(R"(/sessions.*)", route);
  impl_->server.Post(R"(/sessions.*)", route);
  impl_->server.Delete(R"(/sessions.*)", route);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace tam::api
