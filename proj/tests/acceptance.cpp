// Acceptance suite: one line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "wml_gen.hpp"
#include "tam/bounds.hpp"
#include "tam/error.hpp"
#include "tam/systems.hpp"

using namespace tam;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

const std::vector<ModelVariant> kVariants{{2, false}, {2, true}, {3, false}, {3, true}};

Outcome undirected_witness() {
  int ok = 0;
  for (const ModelVariant& v : kVariants) {
    const DirectednessVerdict d = check_directed(gen_undirected_ab(v));
    if (d.kind == DirectednessVerdict::Kind::Undirected && d.terminal_count == 2 && d.witnesses.size() == 2) ++ok;
  }
  return {ok == 4, std::to_string(ok) + "/4 variants undirected with exactly 2 terminals"};
}

Outcome stability_oracle() {
  std::mt19937_64 rng(20240601);
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const int dim = i % 4 == 3 ? 3 : 2;
    const auto r = oracle::random_glued_assembly(rng, 1 + rng() % 10, dim);
    const int tau = 1 + static_cast<int>(rng() % 4);
    if (is_tau_stable(r.assembly, r.tiles, tau) != oracle::brute_force_stable(r.assembly, r.tiles, tau)) ++disagreements;
  }
  return {disagreements == 0, "1000 cases, " + std::to_string(disagreements) + " disagreements"};
}

Outcome diffusion_oracle() {
  std::mt19937_64 rng(77);
  int disagreements = 0, with_regions = 0;
  for (int i = 0; i < 1200; ++i) {
    const int dim = i < 1000 ? 2 : 3;
    const std::size_t n = 1 + rng() % 200;
    Assembly a = rng() % 2 ? oracle::random_polyomino_assembly(rng, n, dim)
                           : oracle::random_configuration(rng, n, dim, dim == 2 ? 8 + static_cast<int>(rng() % 12)
                                                                                : 4 + static_cast<int>(rng() % 4));
    const auto expected = oracle::enclosed_regions(a);
    with_regions += !expected.empty();
    if (constrained_regions(a) != expected) ++disagreements;
  }
  return {disagreements == 0, "1000 2D + 200 3D, " + std::to_string(with_regions) + " with enclosed cells, " +
                                  std::to_string(disagreements) + " disagreements"};
}

Outcome wml_properties() {
  std::mt19937_64 rng(4242);
  const int per_family[3] = {200, 200, 120};
  int checked = 0, failures = 0, missing = 0;
  std::string first;
  for (int family = 0; family < 3; ++family)
    for (int i = 0; i < per_family[family]; ++i) {
      const auto inst = oracle::random_wml_instance(rng, family);
      if (!inst) {
        ++missing;
        continue;
      }
      ++checked;
      const std::string err = oracle::check_wml(*inst);
      if (!err.empty()) {
        ++failures;
        if (first.empty()) first = err;
      }
    }
  return {checked >= 500 && failures == 0,
          std::to_string(checked) + " instances with equal movies, " + std::to_string(failures) + " failures" +
              (first.empty() ? "" : " (" + first + ")") + (missing ? ", " + std::to_string(missing) + " not generated" : "")};
}

Outcome pumping_reproduction() {
  std::ostringstream detail;
  bool ok = true;
  for (int k = 1; k <= 3; ++k) {
    const ScenarioResult r = scenario_pump_arm(k);
    const long long n = r.values.at("n"), pumped = r.values.at("pumpedCrashRow"), direct = r.values.at("directCrashRow");
    ok = ok && n == 7 + k && pumped == direct && r.assertion("pumpBlocked") && r.assertion("crashAdjacentToPlanter");
    detail << (k > 1 ? ", " : "") << "n=" << n << ": pumped row " << pumped << " vs direct " << direct;
  }
  return {ok, detail.str()};
}

Outcome sealing_divergence() {
  const ScenarioResult r = scenario_seal_rectangle();
  const bool ok = r.assertion("patamInteriorFrontierEmpty") && r.assertion("atamInteriorFrontierNonEmpty") &&
                  r.assertion("interiorStepRejected") &&
                  r.values.at("rejectedIndex") == static_cast<long long>(r.trace.size());
  return {ok, "PaTAM interior frontier empty, aTAM has " + std::to_string(r.values.at("atamInteriorFrontier")) +
                  " placements, InvalidStep at index " + std::to_string(r.values.at("rejectedIndex"))};
}

Outcome chamber_divergence() {
  const int h = 6;
  const ScenarioResult r = scenario_plug_chambers(h);
  const Chambers ch = gen_chambers(h);
  const int mid = ch.layout.tunnel_mid_x;
  auto cross_section = [&](const Assembly& a) {
    int n = 0;
    for (int y = 3; y <= 5; ++y)
      for (int z = 1; z <= 3; ++z) n += a.contains({mid, y, z});
    return n;
  };
  int worst = 0;
  std::size_t states = 0;
  ExplorationOptions opt;
  opt.max_tiles = 7;
  opt.threads = 4;
  for (const Assembly& a : explore_producibles(ch.system, opt).producibles) {
    worst = std::max(worst, cross_section(a));
    ++states;
  }
  std::vector<AssemblyTrace> runs{r.trace, random_run(ch.system, 1, 900), random_run(ch.system, 2, 900)};
  for (const AssemblyTrace& t : runs) {
    Assembly a = ch.system.seed;
    for (const Placement& p : t.steps) {
      a.place(p.location, p.tile);
      worst = std::max(worst, cross_section(a));
      ++states;
    }
  }
  const bool ok = r.assertion("innerPillarFrontierEmptySaTAM") && r.assertion("innerPillarFrontierNonEmpty3DaTAM") &&
                  r.values.at("outerBase") == 81 && r.values.at("innerBase") == 81 && worst <= 8;
  return {ok, "SaTAM inner frontier empty, 3DaTAM non-empty, bases " + std::to_string(r.values.at("outerBase")) + "/" +
                  std::to_string(r.values.at("innerBase")) + ", max tunnel cross-section " + std::to_string(worst) +
                  " over " + std::to_string(states) + " producibles"};
}

Outcome proof_constants() {
  const bool ok = pumping_bound(2, 1, 1) == 48 && pumping_bound(3, 1, 1) == BigInt(185794560) &&
                  chamber_bounds(1, 10).b == 25 && chamber_bounds(1, 10).h == 299;
  return {ok, "p2=" + pumping_bound(2, 1, 1).str() + " p3=" + pumping_bound(3, 1, 1).str() + " (b,h)=(" +
                  chamber_bounds(1, 10).b.str() + "," + chamber_bounds(1, 10).h.str() + ")"};
}

// Verdicts expected on every fixture. Co-failures are forced by the
// definitions: productions contains the clean condition, a resolution change
// that is later re-read cannot be a production step, and a simulated
// producible without preimage leaves models nothing to reach.
const std::map<std::string, std::vector<CheckKind>> kExpectedFailures{
    {"diagonal-fuzz", {CheckKind::Clean, CheckKind::Productions}},
    {"non-monotone", {CheckKind::Monotonic, CheckKind::Follows}},
    {"missing-terminal-image", {CheckKind::Productions, CheckKind::Models}},
    {"extra-production", {CheckKind::Productions}},
    {"directedness-breaking", {CheckKind::Directedness}},
};

Outcome checker_calibration() {
  const std::vector<CheckKind> all(std::begin(kAllChecks), std::end(kAllChecks));
  std::ostringstream detail;
  bool ok = true;
  for (const auto& ns : fixtures::identity_setups()) {
    const bool pass = run_checks(ns.setup, all).all_pass();
    ok = ok && pass;
    detail << ns.name << (pass ? " all pass" : " NOT all pass") << "; ";
  }
  for (const auto& ns : fixtures::broken_setups()) {
    const SimCheckReport rep = run_checks(ns.setup, all);
    const CheckResult* target = rep.find(ns.target);
    bool replay = target && target->verdict == Verdict::Fail && !target->witnesses.empty();
    if (replay)
      for (const Witness& w : target->witnesses) {
        try {
          run_trace(w.simulator ? ns.setup.simulator : ns.setup.simulated, w.trace);
        } catch (const Error&) {
          replay = false;
        }
      }
    std::vector<CheckKind> failed;
    for (const CheckResult& c : rep.results) {
      if (c.verdict == Verdict::Fail) failed.push_back(c.check);
      if (c.verdict == Verdict::Unknown) replay = false;
    }
    const bool matrix = failed == kExpectedFailures.at(ns.name);
    ok = ok && replay && matrix;
    detail << ns.name << " fails " << to_string(ns.target) << (replay ? " (witness replays)" : " (NO replayable witness)")
           << (matrix ? "" : " UNEXPECTED verdicts") << "; ";
  }
  return {ok, detail.str()};
}

Outcome exploration_determinism() {
  struct Case {
    TileSystem system;
    std::size_t max_tiles;
  };
  std::vector<Case> cases{{fixtures::ribbon(), 8}, {fixtures::directed_row(5), 10}, {fixtures::ring(true).system, 12},
                          {fixtures::ring(false).system, 12}, {gen_rectangle_arms(), 14}, {gen_chambers(4).system, 6},
                          {gen_blocking_counters(1).system, 30}};
  for (const ModelVariant& v : kVariants) cases.push_back({gen_undirected_ab(v), 10});
  for (const auto& ns : fixtures::broken_setups()) cases.push_back({ns.setup.simulator, 10});
  int identical = 0;
  std::size_t total_states = 0;
  for (const Case& c : cases) {
    ExplorationOptions opt;
    opt.max_tiles = c.max_tiles;
    std::optional<ExplorationResult> base;
    bool same = true;
    for (unsigned threads : {1u, 2u, 4u, 8u}) {
      opt.threads = threads;
      ExplorationResult r = explore_producibles(c.system, opt);
      if (!base) {
        total_states += r.producibles.size();
        base = std::move(r);
        continue;
      }
      same = same && r.keys == base->keys && r.terminals == base->terminals && r.edges.size() == base->edges.size() &&
             r.truncated == base->truncated;
    }
    identical += same;
  }
  return {identical == static_cast<int>(cases.size()),
          std::to_string(identical) + "/" + std::to_string(cases.size()) + " fixtures identical under 1/2/4/8 threads (" +
              std::to_string(total_states) + " producibles)"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "undirected witness", 1.0, undirected_witness},
      {2, "stability oracle", 30.0, stability_oracle},
      {3, "diffusion oracle", 60.0, diffusion_oracle},
      {4, "window movie splicing", 120.0, wml_properties},
      {5, "pumping reproduction", 60.0, pumping_reproduction},
      {6, "sealing divergence", 60.0, sealing_divergence},
      {7, "chamber divergence", 120.0, chamber_divergence},
      {8, "proof constants", 0.1, proof_constants},
      {9, "checker calibration", 120.0, checker_calibration},
      {10, "exploration determinism", 120.0, exploration_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs, limit %gs", secs, c.limit_seconds);
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << " " << c.name << ": " << o.detail << " ["
              << timing << (in_time ? "" : ", TOO SLOW") << "]\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : "all criteria passed\n");
  return failed ? 1 : 0;
}
