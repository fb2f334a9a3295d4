#include "tam/simulation.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tam {

void validate_setup(const SimulationSetup& setup) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidSetup, msg); };
  if (setup.scale < 1) fail("scale must be positive");
  if (setup.resolver.scale != setup.scale) fail("resolver scale differs from setup scale");
  const int dim = setup.simulator.variant.dimension;
  if (setup.simulated.variant.dimension != dim)
    fail("simulated system must share the simulator's dimension (embed 2D systems first)");
  for (std::size_t r = 0; r < setup.resolver.rules.size(); ++r) {
    const ResolverRule& rule = setup.resolver.rules[r];
    const std::string where = "rule " + std::to_string(r);
    if (rule.pattern.empty()) fail(where + " has an empty pattern");
    if (rule.output >= setup.simulated.tiles.size()) fail(where + " outputs an unknown tile");
    for (const auto& [offset, tile] : rule.pattern) {
      auto in_range = [&](int v) { return v >= 0 && v < setup.scale; };
      if (!in_range(offset.x) || !in_range(offset.y) || (dim == 3 ? !in_range(offset.z) : offset.z != 0))
        fail(where + " offset " + to_string(offset, dim) + " lies outside the block");
      if (tile >= setup.simulator.tiles.size()) fail(where + " references an unknown simulator tile");
    }
  }
}

namespace {

int floor_div(int a, int m) { return a >= 0 ? a / m : -((-a + m - 1) / m); }

}  // namespace

Point macro_coordinate(const Point& p, int scale) {
  return {floor_div(p.x, scale), floor_div(p.y, scale), floor_div(p.z, scale)};
}

MBlock block_at(const Assembly& assembly, const Point& macro, int scale) {
  MBlock block{scale, {}};
  const Point origin = macro * scale;
  const int depth = assembly.dimension() == 3 ? scale : 1;
  for (int z = 0; z < depth; ++z)
    for (int y = 0; y < scale; ++y)
      for (int x = 0; x < scale; ++x)
        if (auto t = assembly.at(origin + Point{x, y, z})) block.cells.emplace(Point{x, y, z}, *t);
  return block;
}

std::map<Point, MBlock> blocks(const Assembly& assembly, int scale) {
  std::map<Point, MBlock> out;
  for (const auto& [p, t] : assembly.placements()) {
    const Point macro = macro_coordinate(p, scale);
    MBlock& b = out[macro];
    b.scale = scale;
    b.cells.emplace(p - macro * scale, t);
  }
  return out;
}

std::optional<TileIndex> eval_r(const Resolver& resolver, const MBlock& block) {
  if (block.empty()) return std::nullopt;
  for (const ResolverRule& rule : resolver.rules) {
    const bool matches = std::all_of(rule.pattern.begin(), rule.pattern.end(), [&](const auto& cell) {
      auto it = block.cells.find(cell.first);
      return it != block.cells.end() && it->second == cell.second;
    });
    if (matches) return rule.output;
  }
  return std::nullopt;
}

Assembly r_star(const SimulationSetup& setup, const Assembly& assembly) {
  Assembly out(setup.simulated.variant.dimension);
  for (const auto& [macro, block] : blocks(assembly, setup.scale))
    if (auto t = eval_r(setup.resolver, block)) out.place(macro, *t);
  return out;
}

std::vector<Point> clean_violations(const SimulationSetup& setup, const Assembly& assembly) {
  const auto all = blocks(assembly, setup.scale);
  std::vector<Point> out;
  if (all.size() <= 1) return out;
  Assembly image(setup.simulated.variant.dimension);
  for (const auto& [macro, block] : all)
    if (auto t = eval_r(setup.resolver, block)) image.place(macro, *t);
  for (const auto& [macro, block] : all) {
    if (image.contains(macro)) continue;
    const auto dirs = directions(assembly.dimension());
    const bool near = std::any_of(dirs.begin(), dirs.end(),
                                  [&](Direction d) { return image.contains(macro + unit(d)); });
    if (!near) out.push_back(macro);
  }
  return out;
}

std::string_view to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Monotonic: return "monotonic";
    case CheckKind::Clean: return "clean";
    case CheckKind::Productions: return "productions";
    case CheckKind::Follows: return "follows";
    case CheckKind::Models: return "models";
    case CheckKind::Directedness: return "directedness";
  }
  return "?";
}

std::optional<CheckKind> check_kind_from_string(std::string_view name) {
  for (CheckKind k : kAllChecks)
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

const CheckResult* SimCheckReport::find(CheckKind kind) const {
  for (const auto& r : results)
    if (r.check == kind) return &r;
  return nullptr;
}

bool SimCheckReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.verdict == Verdict::Pass; });
}

SimulationSetup identity_setup(const TileSystem& system) {
  SimulationSetup setup{system, system, 1, {1, {}}};
  for (TileIndex t = 0; t < system.tiles.size(); ++t)
    setup.resolver.rules.push_back({{{Point{}, t}}, t});
  return setup;
}

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  Bits& operator|=(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Reflexive-transitive closure of the exploration edges.
std::vector<Bits> reachability(const ExplorationResult& ex) {
  const std::size_t n = ex.producibles.size();
  std::vector<std::vector<std::size_t>> children(n);
  for (const auto& e : ex.edges) children[e.from].push_back(e.to);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ex.producibles[a].size() > ex.producibles[b].size();
  });
  std::vector<Bits> reach(n, Bits(n));
  for (std::size_t i : order) {
    reach[i].set(i);
    for (std::size_t c : children[i]) reach[i] |= reach[c];
  }
  return reach;
}

std::string describe(const Point& p, int dim) { return to_string(p, dim); }

class Checker {
 public:
  Checker(const SimulationSetup& setup, const SimCheckOptions& options) : setup_(setup), options_(options) {
    validate_setup(setup);
  }

  CheckResult run(CheckKind kind) {
    switch (kind) {
      case CheckKind::Monotonic: return monotonic();
      case CheckKind::Clean: return clean();
      case CheckKind::Productions: return productions();
      case CheckKind::Follows: return follows();
      case CheckKind::Models: return models();
      case CheckKind::Directedness: return directedness();
    }
    return {kind, Verdict::Unknown, "", {}};
  }

  std::size_t simulator_bound() const { return options_.simulator.max_tiles; }
  std::size_t simulated_bound() const { return options_.simulated.max_tiles; }

 private:
  const ExplorationResult& s() {
    if (!s_) {
      s_ = explore_producibles(setup_.simulator, options_.simulator);
      for (const auto& a : s_->producibles) {
        images_.push_back(r_star(setup_, a));
        image_keys_.push_back(images_.back().canonical_key());
      }
    }
    return *s_;
  }
  const ExplorationResult& t() {
    if (!t_) t_ = explore_producibles(setup_.simulated, options_.simulated);
    return *t_;
  }
  std::optional<std::size_t> image_in_t(std::size_t i) {
    s();
    const auto& keys = t().keys;
    auto it = std::lower_bound(keys.begin(), keys.end(), image_keys_[i]);
    if (it == keys.end() || *it != image_keys_[i]) return std::nullopt;
    return static_cast<std::size_t>(it - keys.begin());
  }

  Witness sim(std::size_t i) { return {true, s().trace_to(i)}; }
  Witness tgt(std::size_t i) { return {false, t().trace_to(i)}; }
  int sdim() const { return setup_.simulator.variant.dimension; }

  static CheckResult fail(CheckKind kind, std::string detail, std::vector<Witness> w) {
    return {kind, Verdict::Fail, std::move(detail), std::move(w)};
  }
  static CheckResult done(CheckKind kind, bool truncated, const std::string& what) {
    if (truncated) return {kind, Verdict::Unknown, "exploration truncated; " + what, {}};
    return {kind, Verdict::Pass, what, {}};
  }

  CheckResult monotonic() {
    const auto& ex = s();
    for (const auto& e : ex.edges) {
      const Point macro = macro_coordinate(e.placement.location, setup_.scale);
      const auto before = eval_r(setup_.resolver, block_at(ex.producibles[e.from], macro, setup_.scale));
      if (!before) continue;
      const auto after = eval_r(setup_.resolver, block_at(ex.producibles[e.to], macro, setup_.scale));
      if (after != before) {
        std::string detail = "block " + describe(macro, sdim()) + " resolved to " +
                             setup_.simulated.tiles.id(*before) + " and then to " +
                             (after ? setup_.simulated.tiles.id(*after) : std::string("empty space"));
        return fail(CheckKind::Monotonic, detail, {sim(e.to)});
      }
    }
    return done(CheckKind::Monotonic, ex.truncated, "every resolved block kept its tile");
  }

  std::optional<CheckResult> first_unclean(CheckKind kind) {
    const auto& ex = s();
    for (std::size_t i = 0; i < ex.producibles.size(); ++i) {
      auto bad = clean_violations(setup_, ex.producibles[i]);
      if (!bad.empty())
        return fail(kind, "diagonal or detached fuzz at block " + describe(bad.front(), sdim()), {sim(i)});
    }
    return std::nullopt;
  }

  CheckResult clean() {
    if (auto f = first_unclean(CheckKind::Clean)) return *f;
    return done(CheckKind::Clean, s().truncated, "every producible maps cleanly");
  }

  CheckResult productions() {
    const CheckKind kind = CheckKind::Productions;
    if (auto f = first_unclean(kind)) return *f;
    const auto& sx = s();
    const auto& tx = t();
    std::vector<bool> hit(tx.producibles.size(), false), hit_terminal(tx.producibles.size(), false);
    std::vector<bool> t_terminal(tx.producibles.size(), false);
    for (std::size_t j : tx.terminals) t_terminal[j] = true;
    for (std::size_t i = 0; i < sx.producibles.size(); ++i) {
      auto j = image_in_t(i);
      if (!j) {
        if (!tx.truncated || images_[i].size() <= tx.size_bound)
          return fail(kind, "image of a simulator producible is not producible in the simulated system",
                      {sim(i)});
        continue;
      }
      hit[*j] = true;
    }
    for (std::size_t i : sx.terminals) {
      auto j = image_in_t(i);
      if (!j) continue;
      if (!t_terminal[*j])
        return fail(kind, "image of a simulator terminal is not terminal in the simulated system", {sim(i)});
      hit_terminal[*j] = true;
    }
    if (!sx.truncated) {
      for (std::size_t j = 0; j < tx.producibles.size(); ++j)
        if (!hit[j]) return fail(kind, "simulated producible has no simulator preimage", {tgt(j)});
      for (std::size_t j : tx.terminals)
        if (!hit_terminal[j]) return fail(kind, "simulated terminal is not the image of a simulator terminal", {tgt(j)});
    }
    return done(kind, sx.truncated || tx.truncated, "producible, terminal and clean-mapping conditions hold");
  }

  // Whether `b` is reachable from `a` by valid attachments in the simulated system.
  bool produces(const Assembly& a, const Assembly& b) {
    if (!is_subassembly(a, b)) return false;
    std::vector<Placement> diff;
    for (const auto& [p, t] : b.placements())
      if (!a.contains(p)) diff.push_back({p, t});
    if (diff.empty()) return true;
    const TileSystem& sys = setup_.simulated;
    if (diff.size() > 20) {
      Assembly cur = a;
      std::vector<bool> used(diff.size(), false);
      for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t k = 0; k < diff.size(); ++k)
          if (!used[k] && !attach_error(cur, diff[k], sys)) {
            cur.place(diff[k].location, diff[k].tile);
            used[k] = progress = true;
          }
      }
      return cur.size() == b.size();
    }
    std::unordered_set<std::uint32_t> dead;
    std::function<bool(Assembly&, std::uint32_t)> search = [&](Assembly& cur, std::uint32_t mask) {
      if (mask == (std::uint32_t{1} << diff.size()) - 1) return true;
      if (dead.count(mask)) return false;
      for (std::size_t k = 0; k < diff.size(); ++k) {
        if (mask & (std::uint32_t{1} << k) || attach_error(cur, diff[k], sys)) continue;
        cur.place(diff[k].location, diff[k].tile);
        const bool ok = search(cur, mask | (std::uint32_t{1} << k));
        cur.erase(diff[k].location);
        if (ok) return true;
      }
      dead.insert(mask);
      return false;
    };
    Assembly cur = a;
    return search(cur, 0);
  }

  CheckResult follows() {
    const auto& ex = s();
    for (const auto& e : ex.edges) {
      if (image_keys_[e.from] == image_keys_[e.to]) continue;
      if (!produces(images_[e.from], images_[e.to]))
        return fail(CheckKind::Follows, "simulator step maps to a transition the simulated system cannot make",
                    {sim(e.to)});
    }
    return done(CheckKind::Follows, ex.truncated, "every simulator step maps to a simulated production");
  }

  CheckResult models() {
    const CheckKind kind = CheckKind::Models;
    const auto& sx = s();
    const auto& tx = t();
    if (sx.producibles.size() > options_.max_reach_states || tx.producibles.size() > options_.max_reach_states)
      return {kind, Verdict::Unknown, "state space too large for the reachability search", {}};
    const bool truncated = sx.truncated || tx.truncated;
    const auto sreach = reachability(sx);
    const auto treach = reachability(tx);
    const std::size_t ns = sx.producibles.size(), nt = tx.producibles.size();

    std::vector<std::vector<std::size_t>> preimages(nt);
    std::vector<Bits> preimage_bits(nt, Bits(ns));
    for (std::size_t i = 0; i < ns; ++i)
      if (auto j = image_in_t(i)) {
        preimages[*j].push_back(i);
        preimage_bits[*j].set(i);
      }

    std::size_t largest_pi = 0;
    for (std::size_t a = 0; a < nt; ++a) {
      std::vector<std::size_t> successors;
      for (std::size_t b = 0; b < nt; ++b)
        if (b != a && treach[a].test(b)) successors.push_back(b);
      const auto& cands = preimages[a];
      if (cands.empty()) {
        if (truncated) return {kind, Verdict::Unknown, "no preimage found within the bound", {}};
        return fail(kind, "simulated producible has no simulator preimage", {tgt(a)});
      }
      std::vector<std::size_t> good, needed;
      std::optional<std::size_t> bad;
      for (std::size_t c : cands) {
        bool all = true, any = false;
        for (std::size_t b : successors) {
          const bool r = sreach[c].intersects(preimage_bits[b]);
          all = all && r;
          any = any || r;
        }
        if (all) good.push_back(c);
        else if (!bad) bad = c;
        if (any) needed.push_back(c);
      }
      auto covers = [&](const std::vector<std::size_t>& pi) {
        return std::all_of(needed.begin(), needed.end(), [&](std::size_t d) {
          return std::any_of(pi.begin(), pi.end(), [&](std::size_t p) { return sreach[p].test(d); });
        });
      };
      if (good.empty() || !covers(good)) {
        if (truncated) return {kind, Verdict::Unknown, "witness set search failed within a truncated bound", {}};
        std::string detail = good.empty()
                                 ? "no preimage can reach an image of every successor (clause 1)"
                                 : "some preimage leading to a successor is not reachable from the witness set (clause 2)";
        std::vector<Witness> w{tgt(a)};
        if (bad) w.push_back(sim(*bad));
        return fail(kind, detail, w);
      }
      largest_pi = std::max(largest_pi, smallest_pi(good, covers));
    }
    return done(kind, truncated, "witness sets found (largest minimal |Pi| = " + std::to_string(largest_pi) + ")");
  }

  // Size of the smallest covering subset of `good`, trying subsets in order
  // of size until the cap; falls back to all of `good`.
  template <class Covers>
  std::size_t smallest_pi(const std::vector<std::size_t>& good, const Covers& covers) {
    std::size_t tried = 0;
    for (std::size_t k = 1; k <= good.size(); ++k) {
      std::vector<bool> pick(good.size(), false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        if (++tried > options_.pi_cap) return good.size();
        std::vector<std::size_t> pi;
        for (std::size_t i = 0; i < good.size(); ++i)
          if (pick[i]) pi.push_back(good[i]);
        if (covers(pi)) return k;
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return good.size();
  }

  CheckResult directedness() {
    const CheckKind kind = CheckKind::Directedness;
    const auto vs = check_directed(s());
    const auto vt = check_directed(t());
    using K = DirectednessVerdict::Kind;
    if (vs.kind == K::Unknown || vt.kind == K::Unknown)
      return {kind, Verdict::Unknown, "directedness unknown within the bound", {}};
    if (vs.kind == vt.kind)
      return {kind, Verdict::Pass, "both systems are " + std::string(to_string(vs.kind)), {}};
    const bool sim_undirected = vs.kind == K::Undirected;
    const auto& ex = sim_undirected ? s() : t();
    const auto& w = sim_undirected ? vs.witnesses : vt.witnesses;
    std::vector<Witness> witnesses;
    for (const Assembly& a : w)
      if (auto i = ex.find(a)) witnesses.push_back({sim_undirected, ex.trace_to(*i)});
    return fail(kind,
                "simulator is " + std::string(to_string(vs.kind)) + " but simulated system is " +
                    std::string(to_string(vt.kind)),
                witnesses);
  }

  const SimulationSetup& setup_;
  const SimCheckOptions& options_;
  std::optional<ExplorationResult> s_, t_;
  std::vector<Assembly> images_;
  std::vector<std::string> image_keys_;
};

}  // namespace

SimCheckReport run_checks(const SimulationSetup& setup, const std::vector<CheckKind>& checks,
                          const SimCheckOptions& options) {
  Checker checker(setup, options);
  SimCheckReport report;
  report.simulator_bound = checker.simulator_bound();
  report.simulated_bound = checker.simulated_bound();
  for (CheckKind k : checks) report.results.push_back(checker.run(k));
  return report;
}

CheckResult run_check(const SimulationSetup& setup, CheckKind check, const SimCheckOptions& options) {
  return run_checks(setup, {check}, options).results.front();
}

}  // namespace tam
