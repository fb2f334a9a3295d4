#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <sstream>

#include "tam/bounds.hpp"
#include "tam/error.hpp"
#include "tam/io.hpp"
#include "tam/server.hpp"
#include "tam/systems.hpp"

using namespace tam;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 3;

struct Input {
  std::string system_path;
  std::string trace_path;

  void attach(CLI::App* cmd, bool trace_allowed = true) {
    cmd->add_option("--system", system_path, "System document");
    if (trace_allowed) cmd->add_option("--trace", trace_path, "Trace document (carries its system)");
  }

  io::TraceDocument load() const {
    if (!trace_path.empty()) {
      const std::filesystem::path p(trace_path);
      return io::parse_trace(io::read_file(p), p.parent_path());
    }
    if (system_path.empty()) throw Error(ErrorKind::InvalidArgument, "--system or --trace is required");
    io::TraceDocument doc;
    doc.system = io::parse_system(io::read_file(system_path));
    return doc;
  }
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) std::cout << text;
  else io::write_file(out, text);
}

int emit_report(const std::string& command, int code, Json data, const std::string& out = "") {
  io::Report r;
  r.command = command;
  r.status = code == kOk ? "ok" : code == kFail ? "fail" : "unknown";
  r.data = std::move(data);
  emit(io::serialize_report(r), out);
  return code;
}

Point parse_offset(const std::string& text, int dimension) {
  std::vector<int> v;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) v.push_back(std::stoi(part));
  if (v.size() != static_cast<std::size_t>(dimension))
    throw Error(ErrorKind::InvalidArgument, "offset '" + text + "' needs " + std::to_string(dimension) + " coordinates");
  return {v[0], v[1], dimension == 3 ? v[2] : 0};
}

ModelVariant parse_variant(const std::string& name) {
  if (name == "aTAM") return {2, false};
  if (name == "PaTAM") return {2, true};
  if (name == "3DaTAM") return {3, false};
  if (name == "SaTAM") return {3, true};
  throw Error(ErrorKind::InvalidArgument, "unknown variant " + name);
}

Json assemblies_json(const TileSystem& sys, const std::vector<Assembly>& list) {
  Json out = Json::array();
  for (const Assembly& a : list) out.push_back(io::assembly_to_json(sys, a));
  return out;
}

int exit_code(const ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::SchemaVersionUnsupported:
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnknownTile:
    case ErrorKind::InvalidWindow:
    case ErrorKind::InvalidSetup:
    case ErrorKind::NotTwoDimensional:
    case ErrorKind::SliceOutOfRange:
      return kUsage;
    case ErrorKind::StateBudgetExceeded:
      return kUnknown;
    default:
      return kFail;
  }
}

api::HttpServer* g_server = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tile assembly workbench"};
  app.require_subcommand(1);
  std::function<int()> action;
  std::string out;
  ExplorationOptions explore_opts;

  auto add_explore = [&](CLI::App* cmd) {
    cmd->add_option("--max-tiles", explore_opts.max_tiles, "Assembly size bound");
    cmd->add_option("--max-states", explore_opts.max_states, "State budget");
    cmd->add_option("--threads", explore_opts.threads, "Worker threads");
  };

  // validate
  Input validate_in;
  auto* validate_cmd = app.add_subcommand("validate", "Check system invariants");
  validate_in.attach(validate_cmd, false);
  validate_cmd->callback([&] {
    action = [&] {
      const TileSystem sys = validate_in.load().system;
      const ValidationReport report = validate(sys);
      Json v = Json::array();
      for (const Violation& x : report.violations)
        v.push_back(Json{{"kind", std::string(to_string(x.kind))}, {"message", x.message}});
      return emit_report("validate", report.ok() ? kOk : kFail,
                         Json{{"variant", sys.variant.name()}, {"violations", v}}, out);
    };
  });

  // run
  Input run_in;
  std::uint64_t rng_seed = 0;
  std::size_t max_steps = 1000;
  std::string trace_out;
  auto* run_cmd = app.add_subcommand("run", "Random assembly sequence");
  run_in.attach(run_cmd, false);
  run_cmd->add_option("--rng-seed", rng_seed, "Seed for std::mt19937_64");
  run_cmd->add_option("--max-steps", max_steps, "Step limit");
  run_cmd->add_option("--trace-out", trace_out, "Write the trace document here");
  run_cmd->callback([&] {
    action = [&] {
      io::TraceDocument doc = run_in.load();
      doc.trace = random_run(doc.system, rng_seed, max_steps);
      doc.rng_seed = rng_seed;
      doc.max_steps = max_steps;
      const Assembly final = run_trace(doc.system, doc.trace);
      const bool terminal = frontier(final, doc.system).empty();
      if (trace_out.empty()) {
        std::cout << io::serialize_trace(doc);
        return kOk;
      }
      io::write_file(trace_out, io::serialize_trace(doc));
      return emit_report("run", kOk,
                         Json{{"steps", doc.trace.size()}, {"terminal", terminal}, {"traceOut", trace_out}}, out);
    };
  });

  // frontier
  Input frontier_in;
  auto* frontier_cmd = app.add_subcommand("frontier", "List attachable placements");
  frontier_in.attach(frontier_cmd);
  frontier_cmd->callback([&] {
    action = [&] {
      const io::TraceDocument doc = frontier_in.load();
      const Assembly a = run_trace(doc.system, doc.trace);
      const auto f = frontier(a, doc.system);
      return emit_report("frontier", kOk,
                         Json{{"terminal", f.empty()}, {"frontier", io::placements_to_json(doc.system, f)}}, out);
    };
  });

  // explore
  Input explore_in;
  bool list_terminals = false;
  auto* explore_cmd = app.add_subcommand("explore", "Bounded producible enumeration");
  explore_in.attach(explore_cmd, false);
  add_explore(explore_cmd);
  explore_cmd->add_flag("--terminals", list_terminals, "Include terminal assemblies");
  explore_cmd->callback([&] {
    action = [&] {
      const TileSystem sys = explore_in.load().system;
      const ExplorationResult r = explore_producibles(sys, explore_opts);
      Json data{{"producibles", r.producibles.size()},
                {"terminals", r.terminals.size()},
                {"edges", r.edges.size()},
                {"truncated", r.truncated},
                {"sizeBound", r.size_bound}};
      if (list_terminals) data["terminalAssemblies"] = assemblies_json(sys, r.terminal_assemblies());
      return emit_report("explore", r.truncated ? kUnknown : kOk, data, out);
    };
  });

  // directed
  Input directed_in;
  auto* directed_cmd = app.add_subcommand("directed", "Decide directedness within the bound");
  directed_in.attach(directed_cmd, false);
  add_explore(directed_cmd);
  directed_cmd->callback([&] {
    action = [&] {
      const TileSystem sys = directed_in.load().system;
      const DirectednessVerdict v = check_directed(sys, explore_opts);
      const int code = v.kind == DirectednessVerdict::Kind::Directed     ? kOk
                       : v.kind == DirectednessVerdict::Kind::Undirected ? kFail
                                                                         : kUnknown;
      return emit_report("directed", code,
                         Json{{"verdict", std::string(to_string(v.kind))},
                              {"terminalCount", v.terminal_count},
                              {"conflict", v.conflict},
                              {"witnesses", assemblies_json(sys, v.witnesses)}},
                         out);
    };
  });

  // movie
  auto* movie_cmd = app.add_subcommand("movie", "Window movie tools");
  movie_cmd->require_subcommand(1);
  std::string trace_a, trace_b, window_path, offset, mode = "full", translations;
  bool strict = false;
  std::optional<std::size_t> repetitions;
  auto load_trace = [](const std::string& path) {
    return io::parse_trace(io::read_file(path), std::filesystem::path(path).parent_path());
  };
  auto load_window = [&] { return io::parse_window(io::read_file(window_path)); };

  auto* extract_cmd = movie_cmd->add_subcommand("extract", "Extract the movie of a trace at a window");
  extract_cmd->add_option("--trace", trace_a, "Trace document")->required();
  extract_cmd->add_option("--window", window_path, "Window document")->required();
  extract_cmd->callback([&] {
    action = [&] {
      const io::TraceDocument doc = load_trace(trace_a);
      emit(io::serialize_movie(extract_movie(doc.system, doc.trace, load_window()), doc.system.variant.dimension), out);
      return kOk;
    };
  });

  auto* splice_cmd = movie_cmd->add_subcommand("splice", "Splice two traces with matching movies");
  splice_cmd->add_option("--trace-a", trace_a, "Seed-side trace")->required();
  splice_cmd->add_option("--trace-b", trace_b, "Far-side trace")->required();
  splice_cmd->add_option("--window", window_path, "Window of trace A")->required();
  splice_cmd->add_option("--c", offset, "Translation x,y[,z] of B's window")->required();
  splice_cmd->add_option("--mode", mode, "full or bondForming");
  splice_cmd->add_flag("--strict", strict, "Apply the diffusion rule to emitted steps");
  splice_cmd->callback([&] {
    action = [&] {
      io::TraceDocument a = load_trace(trace_a);
      const io::TraceDocument b = load_trace(trace_b);
      SpliceOptions opt{mode == "bondForming" ? SpliceMode::BondForming : SpliceMode::Full, strict};
      if (mode != "full" && mode != "bondForming") throw Error(ErrorKind::InvalidArgument, "unknown mode " + mode);
      a.trace = splice(a.system, a.trace, b.trace, load_window(), parse_offset(offset, a.system.variant.dimension), opt);
      a.system_path.reset();
      a.rng_seed.reset();
      a.max_steps.reset();
      emit(io::serialize_trace(a), out);
      return kOk;
    };
  });

  auto* pump_cmd = movie_cmd->add_subcommand("pump", "Repeat the segment between two matching windows");
  pump_cmd->add_option("--trace", trace_a, "Trace document")->required();
  pump_cmd->add_option("--window", window_path, "First window")->required();
  pump_cmd->add_option("--c", offset, "Second window offset x,y[,z]")->required();
  pump_cmd->add_option("--repetitions", repetitions, "Iterations (default: until blocked)");
  pump_cmd->add_option("--trace-out", trace_out, "Write the pumped trace document here");
  pump_cmd->add_flag("--strict", strict, "Apply the diffusion rule to emitted steps");
  pump_cmd->callback([&] {
    action = [&] {
      io::TraceDocument doc = load_trace(trace_a);
      PumpOptions opt;
      opt.repetitions = repetitions;
      opt.strict = strict;
      const PumpResult r = pump(doc.system, doc.trace, load_window(), parse_offset(offset, doc.system.variant.dimension), opt);
      doc.trace = r.trace;
      doc.system_path.reset();
      if (!trace_out.empty()) io::write_file(trace_out, io::serialize_trace(doc));
      return emit_report("movie pump", kOk,
                         Json{{"completed", r.completed}, {"blocked", r.blocked}, {"steps", r.trace.size()},
                              {"trace", io::trace_to_json(doc)}},
                         out);
    };
  });

  auto* find_cmd = movie_cmd->add_subcommand("find-window", "Find two translates with equal movies");
  find_cmd->add_option("--trace", trace_a, "Trace document")->required();
  find_cmd->add_option("--window", window_path, "Window template")->required();
  find_cmd->add_option("--translations", translations, "Offsets separated by ';', e.g. 0,0;0,-1")->required();
  find_cmd->add_option("--threads", explore_opts.threads, "Worker threads");
  find_cmd->callback([&] {
    action = [&] {
      const io::TraceDocument doc = load_trace(trace_a);
      const int dim = doc.system.variant.dimension;
      std::vector<Point> ts;
      std::stringstream ss(translations);
      for (std::string part; std::getline(ss, part, ';');) ts.push_back(parse_offset(part, dim));
      const auto m = find_matching_window_pair(doc.system, doc.trace, load_window(), ts, explore_opts.threads);
      if (!m) return emit_report("movie find-window", kFail, Json{{"found", false}}, out);
      return emit_report("movie find-window", kOk,
                         Json{{"found", true},
                              {"first", io::window_to_json(m->first)},
                              {"second", io::window_to_json(m->second)},
                              {"c", io::point_to_json(m->c, dim)}},
                         out);
    };
  });

  // simcheck
  std::string setup_path, check_name = "all";
  SimCheckOptions sim_opts;
  auto* sim_cmd = app.add_subcommand("simcheck", "Check a simulation setup");
  sim_cmd->add_option("--setup", setup_path, "Setup document")->required();
  sim_cmd->add_option("--check", check_name, "all|monotonic|clean|productions|follows|models|directedness");
  sim_cmd->add_option("--max-tiles", sim_opts.simulator.max_tiles, "Simulator size bound");
  sim_cmd->add_option("--max-tiles-simulated", sim_opts.simulated.max_tiles, "Simulated size bound");
  sim_cmd->add_option("--threads", sim_opts.simulator.threads, "Worker threads");
  sim_cmd->callback([&] {
    action = [&] {
      const SimulationSetup setup = io::parse_setup(io::read_file(setup_path));
      std::vector<CheckKind> checks(std::begin(kAllChecks), std::end(kAllChecks));
      if (check_name != "all") {
        const auto k = check_kind_from_string(check_name);
        if (!k) throw Error(ErrorKind::InvalidArgument, "unknown check " + check_name);
        checks = {*k};
      }
      sim_opts.simulated.threads = sim_opts.simulator.threads;
      const SimCheckReport rep = run_checks(setup, checks, sim_opts);
      int code = kOk;
      for (const CheckResult& r : rep.results) {
        if (r.verdict == Verdict::Fail) code = kFail;
        else if (r.verdict == Verdict::Unknown && code == kOk) code = kUnknown;
      }
      return emit_report("simcheck", code, io::check_report_to_json(setup, rep), out);
    };
  });

  // gen
  std::string gen_variant = "aTAM";
  int gen_k = 3, gen_h = 6;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a system document");
  gen_cmd->require_subcommand(1);
  auto* gen_ab = gen_cmd->add_subcommand("ab", "Two-terminal A/B system");
  gen_ab->add_option("--variant", gen_variant, "aTAM|PaTAM|3DaTAM|SaTAM");
  gen_ab->callback([&] {
    action = [&] {
      emit(io::serialize_system(gen_undirected_ab(parse_variant(gen_variant))), out);
      return kOk;
    };
  });
  auto* gen_bc = gen_cmd->add_subcommand("blocking-counters", "Counters with crashing arms");
  gen_bc->add_option("--k", gen_k, "Number of counters");
  gen_bc->callback([&] {
    action = [&] {
      emit(io::serialize_system(gen_blocking_counters(gen_k).system), out);
      return kOk;
    };
  });
  auto* gen_ra = gen_cmd->add_subcommand("rectangle-arms", "PaTAM frame with arms");
  gen_ra->callback([&] {
    action = [&] {
      emit(io::serialize_system(gen_rectangle_arms()), out);
      return kOk;
    };
  });
  auto* gen_ch = gen_cmd->add_subcommand("chambers", "Two chambers joined by a tunnel");
  gen_ch->add_option("--height", gen_h, "Chamber height");
  gen_ch->callback([&] {
    action = [&] {
      emit(io::serialize_system(gen_chambers(gen_h).system), out);
      return kOk;
    };
  });

  // scenario
  std::string scenario_name, out_dir = ".";
  int scenario_k = 1, scenario_h = 6;
  auto* scenario_cmd = app.add_subcommand("scenario", "Run a scripted scenario");
  scenario_cmd->add_option("name", scenario_name, "seal-rectangle|plug-chambers|pump-arm")->required();
  scenario_cmd->add_option("--out-dir", out_dir, "Directory for system.json, trace.json, report.json");
  scenario_cmd->add_option("--k", scenario_k, "pump-arm: counter count");
  scenario_cmd->add_option("--height", scenario_h, "plug-chambers: chamber height");
  scenario_cmd->callback([&] {
    action = [&] {
      ScenarioResult r;
      if (scenario_name == "seal-rectangle") r = scenario_seal_rectangle();
      else if (scenario_name == "plug-chambers") r = scenario_plug_chambers(scenario_h);
      else if (scenario_name == "pump-arm") r = scenario_pump_arm(scenario_k);
      else throw Error(ErrorKind::InvalidArgument, "unknown scenario " + scenario_name);
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      io::write_file(dir / "system.json", io::serialize_system(r.system));
      io::write_file(dir / "trace.json",
                     io::serialize_trace({r.system, std::string("system.json"), r.trace, std::nullopt, std::nullopt}));
      Json assertions = Json::object(), values = Json::object(), checkpoints = Json::object();
      for (const auto& [k, v] : r.assertions) assertions[k] = v;
      for (const auto& [k, v] : r.values) values[k] = v;
      for (const auto& [k, v] : r.checkpoints) checkpoints[k] = v;
      const Json data{{"scenario", r.name}, {"assertions", assertions}, {"values", values}, {"checkpoints", checkpoints}};
      const int code = r.all_hold() ? kOk : kFail;
      emit_report("scenario", code, data, (dir / "report.json").string());
      return emit_report("scenario", code, data, out);
    };
  });

  // render
  Input render_in;
  io::RenderOptions render_opts;
  auto* render_cmd = app.add_subcommand("render", "SVG rendering of an assembly");
  render_in.attach(render_cmd);
  render_cmd->add_option("--slice-z", render_opts.slice_z, "Layer to draw (3D)");
  render_cmd->add_flag("--highlight-constrained", render_opts.highlight_constrained, "Hatch constrained cells");
  render_cmd->add_option("--scale", render_opts.scale, "Pixels per cell");
  render_cmd->callback([&] {
    action = [&] {
      const io::TraceDocument doc = render_in.load();
      emit(io::render_svg(doc.system, run_trace(doc.system, doc.trace), render_opts), out);
      return kOk;
    };
  });

  // embed3d
  Input embed_in;
  std::optional<bool> embed_diffusion;
  auto* embed_cmd = app.add_subcommand("embed3d", "Place a 2D system in the z = 0 plane");
  embed_in.attach(embed_cmd, false);
  embed_cmd->add_option("--diffusion", embed_diffusion, "Override the diffusion flag (true/false)");
  embed_cmd->callback([&] {
    action = [&] {
      emit(io::serialize_system(embed_2d_in_3d(embed_in.load().system, embed_diffusion)), out);
      return kOk;
    };
  });

  // bounds
  int bound_dim = 2, bound_c = 1, bound_n = 1;
  std::string bound_p;
  auto* bounds_cmd = app.add_subcommand("bounds", "Exact proof constants");
  bounds_cmd->require_subcommand(1);
  auto* pumping_cmd = bounds_cmd->add_subcommand("pumping", "Window movie count bound");
  pumping_cmd->add_option("--dim", bound_dim, "2 or 3");
  pumping_cmd->add_option("--c", bound_c, "Scale factor");
  pumping_cmd->add_option("--n", bound_n, "Tile type count");
  pumping_cmd->callback([&] {
    action = [&] {
      const BigInt p = pumping_bound(bound_dim, bound_c, bound_n);
      return emit_report("bounds pumping", kOk,
                         Json{{"dimension", bound_dim}, {"c", bound_c}, {"n", bound_n}, {"p", p.str()}}, out);
    };
  });
  auto* chamber_cmd = bounds_cmd->add_subcommand("chamber", "Chamber base and height");
  chamber_cmd->add_option("--c", bound_c, "Scale factor");
  chamber_cmd->add_option("--p", bound_p, "Pumping constant (decimal)")->required();
  chamber_cmd->callback([&] {
    action = [&] {
      BigInt p;
      try {
        p = BigInt(bound_p);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "--p must be a decimal integer");
      }
      const ChamberBounds cb = chamber_bounds(bound_c, p);
      return emit_report("bounds chamber", kOk, Json{{"c", bound_c}, {"p", bound_p}, {"b", cb.b.str()}, {"h", cb.h.str()}},
                         out);
    };
  });

  // serve
  std::string host = "127.0.0.1", snapshot_dir;
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP session API");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Port (0 picks one)");
  serve_cmd->add_option("--snapshot-dir", snapshot_dir, "Persist session traces here");
  serve_cmd->callback([&] {
    action = [&] {
      api::ServiceConfig config;
      if (!snapshot_dir.empty()) config.snapshot_dir = snapshot_dir;
      api::SessionService service(config);
      api::HttpServer server(service);
      const int bound = server.bind(host, port);
      if (bound < 0) throw Error(ErrorKind::InvalidArgument, "cannot bind " + host + ":" + std::to_string(port));
      std::cerr << "listening on " << host << ":" << bound << "\n";
      g_server = &server;
      std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
      std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
      server.listen();
      g_server = nullptr;
      return kOk;
    };
  });

  for (CLI::App* cmd : app.get_subcommands({}))
    if (cmd != serve_cmd) cmd->add_option("--out", out, "Write output here instead of stdout");
  for (CLI::App* cmd : {movie_cmd, gen_cmd, bounds_cmd})
    for (CLI::App* sub : cmd->get_subcommands({})) sub->add_option("--out", out, "Write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (!action) return kUsage;
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
