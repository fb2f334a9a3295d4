#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tam/dynamics.hpp"
#include "tam/simulation.hpp"
#include "tam/system.hpp"
#include "tam/window_movie.hpp"

namespace tam::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Maps JSON pointers of a parsed text to the line their value starts on.
class LineMap {
 public:
  LineMap() = default;
  explicit LineMap(std::string_view text);
  // Line of the deepest recorded prefix of `pointer`, 1 when unknown.
  std::size_t line(const std::string& pointer) const;

 private:
  std::map<std::string, std::size_t> lines_;
};

// Parsed text plus line information for error reporting.
struct SourceText {
  Json json;
  LineMap lines;
};

// Throws Error(ParseError) with the 1-based line of a syntax error.
SourceText parse_json(std::string_view text);

struct TraceDocument {
  TileSystem system;
  std::optional<std::string> system_path;  // serialized by reference when set
  AssemblyTrace trace;
  std::optional<std::uint64_t> rng_seed;
  std::optional<std::size_t> max_steps;
};

// Generic command result: status is "ok", "fail" or "unknown".
struct Report {
  std::string command;
  std::string status = "ok";
  Json data = Json::object();
};

Json point_to_json(const Point& p, int dimension);
Point point_from_json(const Json& j, int dimension, const std::string& where = "");

Json system_to_json(const TileSystem& system);
TileSystem system_from_json(const Json& j, const LineMap& lines = {}, const std::string& at = "");
Json placements_to_json(const TileSystem& system, const std::vector<Placement>& placements);
std::vector<Placement> placements_from_json(const Json& j, const TileSystem& system,
                                            const LineMap& lines = {}, const std::string& at = "");
Json assembly_to_json(const TileSystem& system, const Assembly& assembly);
Json window_to_json(const Window& window);
Window window_from_json(const Json& j, const LineMap& lines = {}, const std::string& at = "");
Json movie_to_json(const WindowMovie& movie, int dimension);
WindowMovie movie_from_json(const Json& j, int dimension, const LineMap& lines = {}, const std::string& at = "");
Json trace_to_json(const TraceDocument& doc);
Json setup_to_json(const SimulationSetup& setup);
Json check_report_to_json(const SimulationSetup& setup, const SimCheckReport& report);

std::string serialize_system(const TileSystem& system);
TileSystem parse_system(std::string_view text);

std::string serialize_trace(const TraceDocument& doc);
// A "system" given as a string is a path resolved against `base`.
TraceDocument parse_trace(std::string_view text, const std::filesystem::path& base = {});

std::string serialize_setup(const SimulationSetup& setup);
SimulationSetup parse_setup(std::string_view text);

std::string serialize_window(const Window& window);
Window parse_window(std::string_view text);

std::string serialize_movie(const WindowMovie& movie, int dimension);
WindowMovie parse_movie(std::string_view text);

std::string serialize_report(const Report& report);
Report parse_report(std::string_view text);

std::string dump(const Json& j);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

struct RenderOptions {
  std::optional<int> slice_z;  // 3D only; without it every layer is drawn
  bool highlight_constrained = false;
  int scale = 32;              // pixels per cell
};

// SVG with one <rect class="tile"> per drawn tile and one
// <rect class="constrained"> per hatched cell. Throws Error(SliceOutOfRange).
std::string render_svg(const TileSystem& system, const Assembly& assembly, const RenderOptions& options = {});

}  // namespace tam::io
