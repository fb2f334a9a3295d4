#include <doctest.h>

#include <regex>

#include "tam/error.hpp"
#include "tam/io.hpp"
#include "tam/systems.hpp"

using namespace tam;

namespace {

std::vector<TileSystem> shipped_systems() {
  std::vector<TileSystem> out{gen_undirected_ab(),        gen_undirected_ab({3, true}), gen_blocking_counters(2).system,
                              gen_rectangle_arms(),       gen_chambers(4).system,       fixtures::ribbon(),
                              fixtures::directed_row(5),  fixtures::ring(true).system};
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("system documents round trip") {
  for (const TileSystem& sys : shipped_systems()) {
    CAPTURE(sys.name);
    const std::string text = io::serialize_system(sys);
    const TileSystem back = io::parse_system(text);
    CHECK(io::serialize_system(back) == text);
    CHECK(back.tiles == sys.tiles);
    CHECK(back.seed == sys.seed);
    CHECK(back.variant == sys.variant);
  }
}

TEST_CASE("A/B document lists three tile types") {
  const io::Json j = io::system_to_json(gen_undirected_ab());
  CHECK(j["tileTypes"].size() == 3);
  CHECK(j["tileTypes"][0]["glues"].contains("N"));
}

TEST_CASE("parse errors carry line numbers") {
  std::string text = io::serialize_system(gen_undirected_ab());
  const std::string no_temp = std::regex_replace(text, std::regex("  \"temperature\": 1,\n"), "");
  try {
    io::parse_system(no_temp);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(e.index() == 1u);
    CHECK(std::string(e.what()).find("temperature") != std::string::npos);
  }
  const std::string broken = "{\n  \"format\": \"tam-system\",\n  \"version\": 1,\n  oops\n}";
  try {
    io::parse_system(broken);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(e.index() == 4u);
  }
  const std::string bad_strength = std::regex_replace(text, std::regex("\"strength\": 1"), "\"strength\": \"x\"");
  try {
    io::parse_system(bad_strength);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    const std::size_t line = 1 + count(bad_strength.substr(0, bad_strength.find("\"strength\": \"x\"")), "\n");
    CHECK(e.index() == line);
  }
}

TEST_CASE("schema violations") {
  const std::string text = io::serialize_system(gen_undirected_ab());
  CHECK(kind_of([&] { io::parse_system(std::regex_replace(text, std::regex("\"version\": 1"), "\"version\": 2")); }) ==
        ErrorKind::SchemaVersionUnsupported);
  CHECK(kind_of([&] { io::parse_system(std::regex_replace(text, std::regex("\"name\""), "\"nickname\"")); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([&] { io::parse_system(std::regex_replace(text, std::regex("\"N\":"), "\"U\":")); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([&] { io::parse_system(std::regex_replace(text, std::regex("\"tile\": \"S\""), "\"tile\": \"Q\"")); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([&] { io::parse_system("[]"); }) == ErrorKind::ParseError);
}

TEST_CASE("trace documents round trip inline and by reference") {
  const TileSystem sys = fixtures::ribbon();
  io::TraceDocument doc{sys, std::nullopt, random_run(sys, 9, 5), 9u, 5u};
  const std::string inline_text = io::serialize_trace(doc);
  const io::TraceDocument back = io::parse_trace(inline_text);
  CHECK(back.trace.steps == doc.trace.steps);
  CHECK(back.rng_seed == 9u);
  CHECK(io::serialize_trace(back) == inline_text);

  const auto dir = std::filesystem::temp_directory_path() / "tam-io-test";
  std::filesystem::create_directories(dir);
  io::write_file(dir / "sys.json", io::serialize_system(sys));
  doc.system_path = "sys.json";
  const io::TraceDocument ref = io::parse_trace(io::serialize_trace(doc), dir);
  CHECK(ref.system_path == "sys.json");
  CHECK(run_trace(ref.system, ref.trace) == run_trace(sys, doc.trace));
  std::filesystem::remove_all(dir);
}

TEST_CASE("setup documents round trip") {
  std::vector<fixtures::NamedSetup> all = fixtures::identity_setups();
  for (auto& s : fixtures::broken_setups()) all.push_back(s);
  for (const auto& ns : all) {
    CAPTURE(ns.name);
    const std::string text = io::serialize_setup(ns.setup);
    const SimulationSetup back = io::parse_setup(text);
    CHECK(io::serialize_setup(back) == text);
    CHECK(back.resolver.rules.size() == ns.setup.resolver.rules.size());
  }
}

TEST_CASE("window and movie documents round trip") {
  const Window box = Window::box({-1, -2, 0}, {3, 1, 0}, 2);
  CHECK(io::parse_window(io::serialize_window(box)) == box);
  const Window tiny = Window::box({0, 0, 0}, {0, 0, 0}, 3);
  const std::vector<Window::Edge> edges(tiny.edges().begin(), tiny.edges().end());
  const Window explicit_window = Window::from_edges(edges, 3);
  const std::string text = io::serialize_window(explicit_window);
  CHECK(text.find("\"edges\"") != std::string::npos);
  CHECK(io::parse_window(text) == explicit_window);

  const TileSystem sys = fixtures::ribbon();
  const WindowMovie m = extract_movie(sys, random_run(sys, 1, 5), Window::box({-1, -1, 0}, {1, 1, 0}, 2));
  const WindowMovie back = io::parse_movie(io::serialize_movie(m, 2));
  CHECK(back.entries == m.entries);
  CHECK(back.anchor == m.anchor);
}

TEST_CASE("reports round trip") {
  io::Report r{"explore", "unknown", io::Json{{"truncated", true}}};
  const io::Report back = io::parse_report(io::serialize_report(r));
  CHECK(back.command == "explore");
  CHECK(back.status == "unknown");
  CHECK(back.data["truncated"] == true);
  CHECK_THROWS_AS(io::parse_report(std::regex_replace(io::serialize_report(r), std::regex("unknown"), "maybe")), Error);
}

TEST_CASE("rendering") {
  const TileSystem ab = gen_undirected_ab();
  const std::string one = io::render_svg(ab, ab.seed);
  CHECK(count(one, "class=\"tile\"") == 1);
  CHECK(one == io::render_svg(ab, ab.seed));

  const auto ring = fixtures::ring(true);
  const Assembly closed = run_trace(ring.system, ring.trace);
  const std::string hatched = io::render_svg(ring.system, closed, {std::nullopt, true, 16});
  CHECK(count(hatched, "class=\"tile\"") == 8);
  CHECK(count(hatched, "class=\"constrained\"") == 1);
  CHECK(count(io::render_svg(ring.system, closed), "class=\"constrained\"") == 0);

  const auto plug = scenario_plug_chambers(4);
  const Assembly chambers = run_trace(plug.system, plug.trace);
  for (int z : {0, 2, 5}) {
    std::size_t layer = 0;
    for (const auto& [p, _] : chambers.placements()) layer += p.z == z;
    CHECK(count(io::render_svg(plug.system, chambers, {z, false, 8}), "class=\"tile\"") == layer);
  }
  CHECK(count(io::render_svg(plug.system, chambers), "class=\"tile\"") == chambers.size());
  CHECK(kind_of([&] { io::render_svg(plug.system, chambers, {99, false, 8}); }) == ErrorKind::SliceOutOfRange);
  CHECK(kind_of([&] { io::render_svg(ab, ab.seed, {1, false, 8}); }) == ErrorKind::SliceOutOfRange);
}
