#include "tam/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "tam/error.hpp"

namespace tam::io {

namespace {

class Scanner {
 public:
  Scanner(std::string_view text, std::map<std::string, std::size_t>& out) : text_(text), out_(out) {}

  void value(const std::string& pointer) {
    skip_ws();
    out_.emplace(pointer, line_);
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{') {
      advance();
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == '}') break;
        if (text_[pos_] == ',') { advance(); continue; }
        const std::string key = string();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ':') advance();
        value(pointer + "/" + escape(key));
      }
      advance();
    } else if (c == '[') {
      advance();
      for (std::size_t i = 0;; ++i) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == ']') break;
        value(pointer + "/" + std::to_string(i));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') advance();
      }
      advance();
    } else if (c == '"') {
      string();
    } else {
      while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos)
        advance();
    }
  }

 private:
  void advance() {
    if (pos_ < text_.size() && text_[pos_] == '\n') ++line_;
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  std::string string() {
    std::string s;
    advance();
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') advance();
      if (pos_ < text_.size()) s += text_[pos_];
      advance();
    }
    advance();
    return s;
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

  std::string_view text_;
  std::map<std::string, std::size_t>& out_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

[[noreturn]] void fail(const LineMap& lines, const std::string& at, const std::string& message) {
  const std::size_t line = lines.line(at);
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + message + " (at " +
                                         (at.empty() ? "/" : at) + ")",
              line);
}

void expect_object(const Json& j, const LineMap& lines, const std::string& at,
                   std::initializer_list<const char*> required, std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(lines, at, "expected an object");
  for (const char* key : required)
    if (!j.contains(key)) fail(lines, at, std::string("missing \"") + key + "\"");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : required) known = known || key == k;
    for (const char* k : optional) known = known || key == k;
    if (!known) fail(lines, at + "/" + key, "unknown field \"" + key + "\"");
  }
}

void expect_header(const Json& j, const LineMap& lines, const std::string& at, const std::string& format) {
  if (!j.contains("format") || j["format"] != format)
    fail(lines, at + "/format", "expected format \"" + format + "\"");
  if (!j.contains("version") || !j["version"].is_number_integer())
    fail(lines, at + "/version", "missing integer \"version\"");
  if (j["version"].get<long long>() != kFormatVersion)
    throw Error(ErrorKind::SchemaVersionUnsupported,
                "unsupported " + format + " version " + j["version"].dump(), lines.line(at + "/version"));
}

long long get_int(const Json& j, const char* key, const LineMap& lines, const std::string& at) {
  const Json& v = j.at(key);
  if (!v.is_number_integer()) fail(lines, at + "/" + key, std::string("\"") + key + "\" must be an integer");
  return v.get<long long>();
}

std::string get_string(const Json& j, const char* key, const LineMap& lines, const std::string& at) {
  const Json& v = j.at(key);
  if (!v.is_string()) fail(lines, at + "/" + key, std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

const Json& get_array(const Json& j, const char* key, const LineMap& lines, const std::string& at) {
  const Json& v = j.at(key);
  if (!v.is_array()) fail(lines, at + "/" + key, std::string("\"") + key + "\" must be an array");
  return v;
}

Point point_at(const Json& j, int dimension, const LineMap& lines, const std::string& at) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dimension))
    fail(lines, at, "expected a " + std::to_string(dimension) + "-element coordinate array");
  for (const auto& c : j)
    if (!c.is_number_integer()) fail(lines, at, "coordinates must be integers");
  return {j[0].get<int>(), j[1].get<int>(), dimension == 3 ? j[2].get<int>() : 0};
}

Json glue_to_json(const Glue& g) { return Json{{"label", g.label}, {"strength", g.strength}}; }

Glue glue_at(const Json& j, const LineMap& lines, const std::string& at) {
  expect_object(j, lines, at, {"label", "strength"});
  return Glue{get_string(j, "label", lines, at), static_cast<int>(get_int(j, "strength", lines, at))};
}

int dimension_at(const Json& j, const LineMap& lines, const std::string& at) {
  const long long d = get_int(j, "dimension", lines, at);
  if (d != 2 && d != 3) fail(lines, at + "/dimension", "dimension must be 2 or 3");
  return static_cast<int>(d);
}

std::vector<Placement> placements_at(const Json& j, const TileSystem& system, const LineMap& lines,
                                     const std::string& at) {
  if (!j.is_array()) fail(lines, at, "expected an array of placements");
  std::vector<Placement> out;
  const int dim = system.variant.dimension;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string here = at + "/" + std::to_string(i);
    expect_object(j[i], lines, here, {"pos", "tile"});
    const std::string id = get_string(j[i], "tile", lines, here);
    const auto tile = system.tiles.find(id);
    if (!tile) fail(lines, here + "/tile", "unknown tile \"" + id + "\"");
    out.push_back({point_at(j[i]["pos"], dim, lines, here + "/pos"), *tile});
  }
  return out;
}

}  // namespace

LineMap::LineMap(std::string_view text) { Scanner(text, lines_).value(""); }

std::size_t LineMap::line(const std::string& pointer) const {
  std::string p = pointer;
  for (;;) {
    if (auto it = lines_.find(p); it != lines_.end()) return it->second;
    if (p.empty()) return 1;
    p.erase(p.rfind('/'));
  }
}

SourceText parse_json(std::string_view text) {
  try {
    return {Json::parse(text.begin(), text.end()), LineMap(text)};
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": malformed JSON", line);
  }
}

Json point_to_json(const Point& p, int dimension) {
  return dimension == 3 ? Json::array({p.x, p.y, p.z}) : Json::array({p.x, p.y});
}

Point point_from_json(const Json& j, int dimension, const std::string& where) {
  return point_at(j, dimension, LineMap{}, where);
}

Json system_to_json(const TileSystem& system) {
  const int dim = system.variant.dimension;
  Json tiles = Json::array();
  for (const TileType& t : system.tiles.tiles()) {
    Json glues = Json::object();
    for (Direction d : directions(dim))
      if (!t.glue(d).is_null()) glues[std::string(1, letter(d))] = glue_to_json(t.glue(d));
    tiles.push_back(Json{{"id", t.id}, {"label", t.label}, {"glues", glues}});
  }
  Json seed = Json::array();
  for (const auto& [p, tile] : system.seed.placements())
    seed.push_back(Json{{"pos", point_to_json(p, dim)}, {"tile", system.tiles.id(tile)}});
  return Json{{"format", "tam-system"},
              {"version", kFormatVersion},
              {"name", system.name},
              {"dimension", dim},
              {"temperature", system.temperature},
              {"diffusionRestricted", system.variant.diffusion_restricted},
              {"tileTypes", tiles},
              {"seed", seed}};
}

TileSystem system_from_json(const Json& j, const LineMap& lines, const std::string& at) {
  if (!j.is_object()) fail(lines, at, "expected a system object");
  expect_header(j, lines, at, "tam-system");
  expect_object(j, lines, at, {"format", "version", "name", "dimension", "temperature", "tileTypes", "seed"},
                {"diffusionRestricted"});
  TileSystem sys;
  sys.name = get_string(j, "name", lines, at);
  const int dim = dimension_at(j, lines, at);
  sys.temperature = static_cast<int>(get_int(j, "temperature", lines, at));
  bool diffusion = false;
  if (j.contains("diffusionRestricted")) {
    if (!j["diffusionRestricted"].is_boolean()) fail(lines, at + "/diffusionRestricted", "expected a boolean");
    diffusion = j["diffusionRestricted"].get<bool>();
  }
  sys.variant = {dim, diffusion};
  std::vector<TileType> tiles;
  const Json& tj = get_array(j, "tileTypes", lines, at);
  for (std::size_t i = 0; i < tj.size(); ++i) {
    const std::string here = at + "/tileTypes/" + std::to_string(i);
    expect_object(tj[i], lines, here, {"id"}, {"label", "glues"});
    TileType t;
    t.id = get_string(tj[i], "id", lines, here);
    t.label = tj[i].contains("label") ? get_string(tj[i], "label", lines, here) : t.id;
    if (tj[i].contains("glues")) {
      const Json& gj = tj[i]["glues"];
      if (!gj.is_object()) fail(lines, here + "/glues", "expected an object keyed by direction");
      for (const auto& [key, value] : gj.items()) {
        const auto d = key.size() == 1 ? direction_from_letter(key[0]) : std::nullopt;
        const bool planar = d && *d != Direction::U && *d != Direction::D;
        if (!d || (dim == 2 && !planar)) fail(lines, here + "/glues/" + key, "invalid direction \"" + key + "\"");
        t.glue(*d) = glue_at(value, lines, here + "/glues/" + key);
      }
    }
    tiles.push_back(std::move(t));
  }
  sys.tiles = TileSet(dim, std::move(tiles));
  sys.seed = Assembly(dim);
  for (const Placement& p : placements_at(get_array(j, "seed", lines, at), sys, lines, at + "/seed"))
    if (!sys.seed.place(p.location, p.tile)) fail(lines, at + "/seed", "seed cell placed twice");
  return sys;
}

Json placements_to_json(const TileSystem& system, const std::vector<Placement>& placements) {
  Json out = Json::array();
  for (const Placement& p : placements)
    out.push_back(Json{{"pos", point_to_json(p.location, system.variant.dimension)}, {"tile", system.tiles.id(p.tile)}});
  return out;
}

std::vector<Placement> placements_from_json(const Json& j, const TileSystem& system, const LineMap& lines,
                                            const std::string& at) {
  return placements_at(j, system, lines, at);
}

Json assembly_to_json(const TileSystem& system, const Assembly& assembly) {
  std::vector<Placement> cells;
  for (const auto& [p, tile] : assembly.placements()) cells.push_back({p, tile});
  return placements_to_json(system, cells);
}

Json window_to_json(const Window& window) {
  const int dim = window.dimension();
  Json out{{"format", "tam-window"}, {"version", kFormatVersion}, {"dimension", dim}};
  if (window.is_box()) {
    const Box& b = *window.box_cells();
    out["box"] = Json{{"min", point_to_json(b.min, dim)}, {"max", point_to_json(b.max, dim)}};
  } else {
    Json edges = Json::array();
    for (const auto& [p, q] : window.edges()) edges.push_back(Json::array({point_to_json(p, dim), point_to_json(q, dim)}));
    out["edges"] = edges;
  }
  return out;
}

Window window_from_json(const Json& j, const LineMap& lines, const std::string& at) {
  if (!j.is_object()) fail(lines, at, "expected a window object");
  expect_header(j, lines, at, "tam-window");
  expect_object(j, lines, at, {"format", "version", "dimension"}, {"box", "edges"});
  const int dim = dimension_at(j, lines, at);
  if (j.contains("box") == j.contains("edges")) fail(lines, at, "exactly one of \"box\" and \"edges\" is required");
  if (j.contains("box")) {
    const std::string here = at + "/box";
    expect_object(j["box"], lines, here, {"min", "max"});
    const Point lo = point_at(j["box"]["min"], dim, lines, here + "/min");
    const Point hi = point_at(j["box"]["max"], dim, lines, here + "/max");
    if (lo.x > hi.x || lo.y > hi.y || lo.z > hi.z) fail(lines, here, "box min exceeds max");
    return Window::box(lo, hi, dim);
  }
  const Json& ej = get_array(j, "edges", lines, at);
  std::vector<Window::Edge> edges;
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const std::string here = at + "/edges/" + std::to_string(i);
    if (!ej[i].is_array() || ej[i].size() != 2) fail(lines, here, "an edge is a pair of points");
    edges.push_back({point_at(ej[i][0], dim, lines, here + "/0"), point_at(ej[i][1], dim, lines, here + "/1")});
  }
  return Window::from_edges(edges, dim);
}

Json movie_to_json(const WindowMovie& movie, int dimension) {
  Json entries = Json::array();
  for (const MovieEntry& e : movie.entries)
    entries.push_back(Json{{"from", point_to_json(e.from, dimension)},
                           {"to", point_to_json(e.to, dimension)},
                           {"glue", glue_to_json(e.glue)}});
  return Json{{"format", "tam-movie"},
              {"version", kFormatVersion},
              {"dimension", dimension},
              {"anchor", point_to_json(movie.anchor, dimension)},
              {"entries", entries}};
}

WindowMovie movie_from_json(const Json& j, int dimension, const LineMap& lines, const std::string& at) {
  if (!j.is_object()) fail(lines, at, "expected a movie object");
  expect_header(j, lines, at, "tam-movie");
  expect_object(j, lines, at, {"format", "version", "dimension", "anchor", "entries"});
  const int dim = dimension_at(j, lines, at);
  if (dimension != 0 && dim != dimension) fail(lines, at + "/dimension", "dimension mismatch");
  WindowMovie movie;
  movie.anchor = point_at(j["anchor"], dim, lines, at + "/anchor");
  const Json& ej = get_array(j, "entries", lines, at);
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const std::string here = at + "/entries/" + std::to_string(i);
    expect_object(ej[i], lines, here, {"from", "to", "glue"});
    movie.entries.push_back({point_at(ej[i]["from"], dim, lines, here + "/from"),
                             point_at(ej[i]["to"], dim, lines, here + "/to"), glue_at(ej[i]["glue"], lines, here + "/glue")});
  }
  return movie;
}

Json trace_to_json(const TraceDocument& doc) {
  Json out{{"format", "tam-trace"}, {"version", kFormatVersion}};
  out["system"] = doc.system_path ? Json(*doc.system_path) : system_to_json(doc.system);
  out["steps"] = placements_to_json(doc.system, doc.trace.steps);
  if (doc.rng_seed || doc.max_steps) {
    Json rng = Json::object();
    if (doc.rng_seed) rng["seed"] = *doc.rng_seed;
    if (doc.max_steps) rng["maxSteps"] = *doc.max_steps;
    out["rng"] = rng;
  }
  return out;
}

Json setup_to_json(const SimulationSetup& setup) {
  Json rules = Json::array();
  const int dim = setup.simulator.variant.dimension;
  for (const ResolverRule& r : setup.resolver.rules) {
    Json pattern = Json::array();
    for (const auto& [p, tile] : r.pattern)
      pattern.push_back(Json{{"pos", point_to_json(p, dim)}, {"tile", setup.simulator.tiles.id(tile)}});
    rules.push_back(Json{{"pattern", pattern}, {"output", setup.simulated.tiles.id(r.output)}});
  }
  return Json{{"format", "tam-setup"},
              {"version", kFormatVersion},
              {"simulator", system_to_json(setup.simulator)},
              {"simulated", system_to_json(setup.simulated)},
              {"scale", setup.scale},
              {"rules", rules}};
}

Json check_report_to_json(const SimulationSetup& setup, const SimCheckReport& report) {
  Json checks = Json::array();
  for (const CheckResult& r : report.results) {
    Json witnesses = Json::array();
    for (const Witness& w : r.witnesses) {
      const TileSystem& sys = w.simulator ? setup.simulator : setup.simulated;
      witnesses.push_back(Json{{"system", w.simulator ? "simulator" : "simulated"},
                               {"steps", placements_to_json(sys, w.trace.steps)}});
    }
    checks.push_back(Json{{"check", std::string(to_string(r.check))},
                          {"verdict", std::string(to_string(r.verdict))},
                          {"detail", r.detail},
                          {"witnesses", witnesses}});
  }
  return Json{{"checks", checks}, {"simulatorBound", report.simulator_bound}, {"simulatedBound", report.simulated_bound}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string serialize_system(const TileSystem& system) { return dump(system_to_json(system)); }

TileSystem parse_system(std::string_view text) {
  const SourceText src = parse_json(text);
  return system_from_json(src.json, src.lines);
}

std::string serialize_trace(const TraceDocument& doc) { return dump(trace_to_json(doc)); }

TraceDocument parse_trace(std::string_view text, const std::filesystem::path& base) {
  const SourceText src = parse_json(text);
  const Json& j = src.json;
  const LineMap& lines = src.lines;
  if (!j.is_object()) fail(lines, "", "expected a trace object");
  expect_header(j, lines, "", "tam-trace");
  expect_object(j, lines, "", {"format", "version", "system", "steps"}, {"rng"});
  TraceDocument doc;
  if (j["system"].is_string()) {
    doc.system_path = j["system"].get<std::string>();
    const std::filesystem::path path = base.empty() ? std::filesystem::path(*doc.system_path) : base / *doc.system_path;
    doc.system = parse_system(read_file(path));
  } else {
    doc.system = system_from_json(j["system"], lines, "/system");
  }
  doc.trace.steps = placements_at(j["steps"], doc.system, lines, "/steps");
  if (j.contains("rng")) {
    expect_object(j["rng"], lines, "/rng", {}, {"seed", "maxSteps"});
    if (j["rng"].contains("seed")) doc.rng_seed = static_cast<std::uint64_t>(get_int(j["rng"], "seed", lines, "/rng"));
    if (j["rng"].contains("maxSteps"))
      doc.max_steps = static_cast<std::size_t>(get_int(j["rng"], "maxSteps", lines, "/rng"));
  }
  return doc;
}

std::string serialize_setup(const SimulationSetup& setup) { return dump(setup_to_json(setup)); }

SimulationSetup parse_setup(std::string_view text) {
  const SourceText src = parse_json(text);
  const Json& j = src.json;
  const LineMap& lines = src.lines;
  if (!j.is_object()) fail(lines, "", "expected a setup object");
  expect_header(j, lines, "", "tam-setup");
  expect_object(j, lines, "", {"format", "version", "simulator", "simulated", "scale", "rules"});
  SimulationSetup setup;
  setup.simulator = system_from_json(j["simulator"], lines, "/simulator");
  setup.simulated = system_from_json(j["simulated"], lines, "/simulated");
  setup.scale = static_cast<int>(get_int(j, "scale", lines, ""));
  setup.resolver.scale = setup.scale;
  const Json& rj = get_array(j, "rules", lines, "");
  for (std::size_t i = 0; i < rj.size(); ++i) {
    const std::string here = "/rules/" + std::to_string(i);
    expect_object(rj[i], lines, here, {"pattern", "output"});
    ResolverRule rule;
    for (const Placement& p : placements_at(rj[i]["pattern"], setup.simulator, lines, here + "/pattern"))
      rule.pattern.push_back({p.location, p.tile});
    const std::string out = get_string(rj[i], "output", lines, here);
    const auto tile = setup.simulated.tiles.find(out);
    if (!tile) fail(lines, here + "/output", "unknown simulated tile \"" + out + "\"");
    rule.output = *tile;
    setup.resolver.rules.push_back(std::move(rule));
  }
  validate_setup(setup);
  return setup;
}

std::string serialize_window(const Window& window) { return dump(window_to_json(window)); }

Window parse_window(std::string_view text) {
  const SourceText src = parse_json(text);
  return window_from_json(src.json, src.lines);
}

std::string serialize_movie(const WindowMovie& movie, int dimension) { return dump(movie_to_json(movie, dimension)); }

WindowMovie parse_movie(std::string_view text) {
  const SourceText src = parse_json(text);
  return movie_from_json(src.json, 0, src.lines);
}

std::string serialize_report(const Report& report) {
  return dump(Json{{"format", "tam-report"},
                   {"version", kFormatVersion},
                   {"command", report.command},
                   {"status", report.status},
                   {"data", report.data}});
}

Report parse_report(std::string_view text) {
  const SourceText src = parse_json(text);
  const Json& j = src.json;
  if (!j.is_object()) fail(src.lines, "", "expected a report object");
  expect_header(j, src.lines, "", "tam-report");
  expect_object(j, src.lines, "", {"format", "version", "command", "status", "data"});
  Report r;
  r.command = get_string(j, "command", src.lines, "");
  r.status = get_string(j, "status", src.lines, "");
  if (r.status != "ok" && r.status != "fail" && r.status != "unknown")
    fail(src.lines, "/status", "status must be ok, fail or unknown");
  if (!j["data"].is_object()) fail(src.lines, "/data", "expected an object");
  r.data = j["data"];
  return r;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << text;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fill_for(const std::string& id) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : id) h = (h ^ c) * 16777619u;
  return "hsl(" + std::to_string(h % 360) + ",55%,70%)";
}

}  // namespace

std::string render_svg(const TileSystem& system, const Assembly& assembly, const RenderOptions& options) {
  const int dim = assembly.dimension();
  const int s = options.scale > 0 ? options.scale : 32;
  std::set<Point> hatched;
  if (options.highlight_constrained)
    for (const auto& region : constrained_regions(assembly)) hatched.insert(region.begin(), region.end());

  std::vector<int> layers;
  if (dim == 2) {
    if (options.slice_z && *options.slice_z != 0)
      throw Error(ErrorKind::SliceOutOfRange, "2D assemblies only have slice z = 0");
    layers.push_back(0);
  } else if (options.slice_z) {
    if (assembly.empty() || *options.slice_z < assembly.bounds().min.z || *options.slice_z > assembly.bounds().max.z)
      throw Error(ErrorKind::SliceOutOfRange, "slice z = " + std::to_string(*options.slice_z) + " is outside the assembly");
    layers.push_back(*options.slice_z);
  } else if (!assembly.empty()) {
    for (int z = assembly.bounds().min.z; z <= assembly.bounds().max.z; ++z) layers.push_back(z);
  }

  Box box{{0, 0, 0}, {0, 0, 0}};
  if (!assembly.empty()) box = assembly.bounds();
  const int cols = box.max.x - box.min.x + 1;
  const int rows = box.max.y - box.min.y + 1;
  const int layer_width = (cols + 1) * s;
  const int width = std::max<int>(1, static_cast<int>(layers.size())) * layer_width;
  const int height = rows * s;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\">"
         "<path d=\"M0,6 L6,0\" stroke=\"#555\" stroke-width=\"1\"/></pattern></defs>\n";
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const int z = layers[li];
    const int ox = static_cast<int>(li) * layer_width;
    out << "<g class=\"layer\" data-z=\"" << z << "\">\n";
    auto cell_xy = [&](const Point& p) {
      return std::pair<int, int>{ox + (p.x - box.min.x) * s, (box.max.y - p.y) * s};
    };
    for (const auto& [p, tile] : assembly.placements()) {
      if (p.z != z) continue;
      const auto [x, y] = cell_xy(p);
      const TileType& t = system.tiles[tile];
      out << "<rect class=\"tile\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << s << "\" height=\"" << s
          << "\" fill=\"" << fill_for(t.id) << "\" stroke=\"#333\"/>";
      out << "<text x=\"" << x + s / 2 << "\" y=\"" << y + s / 2 << "\" font-size=\"" << s / 3
          << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << xml_escape(t.label) << "</text>\n";
    }
    for (const Point& p : hatched) {
      if (p.z != z) continue;
      const auto [x, y] = cell_xy(p);
      out << "<rect class=\"constrained\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << s << "\" height=\"" << s
          << "\" fill=\"url(#hatch)\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tam::io
