#include "tam/dynamics.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <random>
#include <thread>
#include <unordered_map>

namespace tam {

AssemblyTrace AssemblyTrace::translated(const Point& offset) const {
  AssemblyTrace out;
  out.steps.reserve(steps.size());
  for (const auto& s : steps) out.steps.push_back({s.location + offset, s.tile});
  return out;
}

AssemblyTrace AssemblyTrace::prefix(std::size_t n) const {
  AssemblyTrace out;
  out.steps.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(std::min(n, steps.size())));
  return out;
}

OutsideMap::OutsideMap(const Assembly& assembly) {
  if (assembly.empty()) return;
  empty_ = false;
  box_ = assembly.bounds().inflated(1, assembly.dimension());
  BoxIndexer idx(box_);
  outside_.assign(idx.size(), false);
  std::vector<bool> occupied(idx.size(), false);
  for (const auto& [p, t] : assembly.placements()) occupied[idx(p)] = true;
  // The inflated shell is empty, so its min corner lies on the outside.
  std::vector<std::size_t> stack{idx(box_.min)};
  outside_[stack.back()] = true;
  while (!stack.empty()) {
    const Point p = idx.point(stack.back());
    stack.pop_back();
    for (Direction d : directions(assembly.dimension())) {
      const Point q = p + unit(d);
      if (!box_.contains(q)) continue;
      const std::size_t i = idx(q);
      if (occupied[i] || outside_[i]) continue;
      outside_[i] = true;
      stack.push_back(i);
    }
  }
}

bool OutsideMap::outside(const Point& p) const {
  if (empty_ || !box_.contains(p)) return true;
  return outside_[BoxIndexer(box_)(p)];
}

std::vector<std::set<Point>> constrained_regions(const Assembly& assembly) {
  std::vector<std::set<Point>> regions;
  if (assembly.empty()) return regions;
  const OutsideMap outside(assembly);
  const Box box = assembly.bounds().inflated(1, assembly.dimension());
  const BoxIndexer idx(box);
  std::vector<bool> seen(idx.size(), false);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Point start = idx.point(i);
    if (seen[i] || assembly.contains(start) || outside.outside(start)) continue;
    std::set<Point> region;
    std::vector<Point> stack{start};
    seen[i] = true;
    while (!stack.empty()) {
      const Point p = stack.back();
      stack.pop_back();
      region.insert(p);
      for (Direction d : directions(assembly.dimension())) {
        const Point q = p + unit(d);
        if (!box.contains(q) || assembly.contains(q)) continue;
        const std::size_t j = idx(q);
        if (seen[j]) continue;
        seen[j] = true;
        stack.push_back(q);
      }
    }
    regions.push_back(std::move(region));
  }
  std::sort(regions.begin(), regions.end());
  return regions;
}

int attachment_strength(const Assembly& assembly, const TileSet& tiles, const Point& p,
                        TileIndex tile) {
  int total = 0;
  for (Direction d : directions(assembly.dimension())) {
    auto other = assembly.at(p + unit(d));
    if (!other) continue;
    total += bond_strength(tiles[tile].glue(d), tiles[*other].glue(opposite(d)));
  }
  return total;
}

std::optional<ErrorKind> attach_error(const Assembly& assembly, const Placement& placement,
                                      const TileSystem& system, std::optional<bool> diffusion) {
  if (placement.tile >= system.tiles.size()) return ErrorKind::UnknownTile;
  if (system.variant.dimension == 2 && placement.location.z != 0) return ErrorKind::DimensionMismatch;
  if (assembly.contains(placement.location)) return ErrorKind::Occupied;
  if (attachment_strength(assembly, system.tiles, placement.location, placement.tile) <
      system.temperature)
    return ErrorKind::InsufficientStrength;
  if (diffusion.value_or(system.variant.diffusion_restricted) &&
      !OutsideMap(assembly).outside(placement.location))
    return ErrorKind::ConstrainedLocation;
  return std::nullopt;
}

namespace {

std::vector<Placement> frontier_impl(const Assembly& assembly, const TileSystem& system,
                                     bool diffusion) {
  const TileSet& tiles = system.tiles;
  const int dim = assembly.dimension();
  std::set<Point> candidates;
  for (const auto& [p, t] : assembly.placements())
    for (Direction d : directions(dim)) {
      const Point q = p + unit(d);
      if (!assembly.contains(q)) candidates.insert(q);
    }
  std::optional<OutsideMap> outside;
  if (diffusion) outside.emplace(assembly);

  std::vector<Placement> out;
  std::map<TileIndex, int> strength;
  for (const Point& p : candidates) {
    if (outside && !outside->outside(p)) continue;
    strength.clear();
    for (Direction d : directions(dim)) {
      auto other = assembly.at(p + unit(d));
      if (!other) continue;
      const Glue& g = tiles[*other].glue(opposite(d));
      if (g.strength <= 0) continue;
      for (TileIndex t : tiles.tiles_with_glue(d, g)) strength[t] += g.strength;
    }
    std::vector<Placement> here;
    for (const auto& [t, s] : strength)
      if (s >= system.temperature) here.push_back({p, t});
    std::sort(here.begin(), here.end(), [&](const Placement& a, const Placement& b) {
      return tiles.id(a.tile) < tiles.id(b.tile);
    });
    out.insert(out.end(), here.begin(), here.end());
  }
  return out;
}

}  // namespace

std::vector<Placement> frontier(const Assembly& assembly, const TileSystem& system) {
  return frontier_impl(assembly, system, system.variant.diffusion_restricted);
}

Assembly attach(const Assembly& assembly, const Placement& placement, const TileSystem& system) {
  if (auto err = attach_error(assembly, placement, system))
    throw Error(*err, "cannot attach " +
                          (placement.tile < system.tiles.size() ? system.tiles.id(placement.tile)
                                                                : std::string("?")) +
                          " at " + to_string(placement.location, system.variant.dimension));
  Assembly out = assembly;
  out.place(placement.location, placement.tile);
  return out;
}

Assembly run_trace(const TileSystem& system, const AssemblyTrace& trace,
                   std::optional<bool> diffusion) {
  Assembly current = system.seed;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    if (auto err = attach_error(current, trace.steps[i], system, diffusion))
      throw Error(ErrorKind::InvalidStep,
                  "step " + std::to_string(i) + " failed with " + std::string(to_string(*err)), i,
                  *err);
    current.place(trace.steps[i].location, trace.steps[i].tile);
  }
  return current;
}

AssemblyTrace random_run(const TileSystem& system, std::uint64_t rng_seed, std::size_t max_steps) {
  std::mt19937_64 engine(rng_seed);
  AssemblyTrace trace;
  Assembly current = system.seed;
  while (trace.size() < max_steps) {
    const auto options = frontier(current, system);
    if (options.empty()) break;
    const Placement& pick = options[engine() % options.size()];
    current.place(pick.location, pick.tile);
    trace.steps.push_back(pick);
  }
  return trace;
}

std::optional<std::size_t> ExplorationResult::find(const Assembly& a) const {
  const std::string key = a.canonical_key();
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - keys.begin());
}

AssemblyTrace ExplorationResult::trace_to(std::size_t i) const {
  AssemblyTrace trace;
  while (parent_edge.at(i)) {
    const ExplorationEdge& e = edges[*parent_edge[i]];
    trace.steps.push_back(e.placement);
    i = e.from;
  }
  std::reverse(trace.steps.begin(), trace.steps.end());
  return trace;
}

std::vector<Assembly> ExplorationResult::terminal_assemblies() const {
  std::vector<Assembly> out;
  for (std::size_t i : terminals) out.push_back(producibles[i]);
  return out;
}

namespace {

struct Expansion {
  bool at_bound = false;
  std::vector<Placement> moves;
};

Expansion expand(const Assembly& a, const TileSystem& system, std::size_t max_tiles) {
  Expansion e;
  e.at_bound = a.size() >= max_tiles;
  e.moves = frontier(a, system);
  return e;
}

}  // namespace

ExplorationResult explore_producibles(const TileSystem& system, const ExplorationOptions& options) {
  std::vector<Assembly> states{system.seed};
  std::vector<std::string> keys{system.seed.canonical_key()};
  std::unordered_map<std::string, std::size_t> index{{keys[0], 0}};
  std::vector<std::optional<std::size_t>> parent{std::nullopt};
  std::vector<ExplorationEdge> edges;
  std::vector<bool> terminal(1, false);
  bool truncated = false;

  std::vector<std::size_t> level{0};
  const unsigned threads = std::max(1u, options.threads);
  while (!level.empty()) {
    std::vector<Expansion> results(level.size());
    if (threads == 1 || level.size() < 2) {
      for (std::size_t i = 0; i < level.size(); ++i)
        results[i] = expand(states[level[i]], system, options.max_tiles);
    } else {
      std::vector<std::future<void>> jobs;
      const std::size_t chunk = (level.size() + threads - 1) / threads;
      for (std::size_t start = 0; start < level.size(); start += chunk) {
        const std::size_t stop = std::min(level.size(), start + chunk);
        jobs.push_back(std::async(std::launch::async, [&, start, stop] {
          for (std::size_t i = start; i < stop; ++i)
            results[i] = expand(states[level[i]], system, options.max_tiles);
        }));
      }
      for (auto& j : jobs) j.get();
    }
    // Deterministic merge in level order, then frontier order.
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::size_t from = level[i];
      const Expansion& e = results[i];
      if (e.moves.empty()) {
        terminal[from] = true;
        continue;
      }
      if (e.at_bound) {
        truncated = true;
        continue;
      }
      for (const Placement& m : e.moves) {
        Assembly child = states[from];
        child.place(m.location, m.tile);
        std::string key = child.canonical_key();
        auto [it, inserted] = index.emplace(key, states.size());
        if (inserted) {
          if (states.size() >= options.max_states)
            throw Error(ErrorKind::StateBudgetExceeded,
                        "more than " + std::to_string(options.max_states) + " states");
          states.push_back(std::move(child));
          keys.push_back(std::move(key));
          parent.push_back(edges.size());
          terminal.push_back(false);
          next.push_back(it->second);
        }
        edges.push_back({from, it->second, m});
      }
    }
    level = std::move(next);
  }

  // Re-index everything by canonical key order.
  std::vector<std::size_t> order(states.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<std::size_t> rank(states.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  ExplorationResult result;
  result.truncated = truncated;
  result.size_bound = options.max_tiles;
  result.states_visited = states.size();
  for (auto& e : edges) {
    e.from = rank[e.from];
    e.to = rank[e.to];
  }
  std::vector<std::size_t> edge_order(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) edge_order[i] = i;
  std::sort(edge_order.begin(), edge_order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(edges[a].from, edges[a].placement, edges[a].to) <
           std::tie(edges[b].from, edges[b].placement, edges[b].to);
  });
  std::vector<std::size_t> edge_rank(edges.size());
  for (std::size_t r = 0; r < edge_order.size(); ++r) edge_rank[edge_order[r]] = r;
  result.edges.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) result.edges[edge_rank[i]] = edges[i];

  result.producibles.reserve(states.size());
  result.keys.reserve(states.size());
  result.parent_edge.resize(states.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::size_t old = order[r];
    result.producibles.push_back(std::move(states[old]));
    result.keys.push_back(std::move(keys[old]));
    if (parent[old]) result.parent_edge[r] = edge_rank[*parent[old]];
    if (terminal[old]) result.terminals.push_back(r);
  }
  return result;
}

std::string_view to_string(DirectednessVerdict::Kind kind) {
  switch (kind) {
    case DirectednessVerdict::Kind::Directed: return "directed";
    case DirectednessVerdict::Kind::Undirected: return "undirected";
    case DirectednessVerdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

DirectednessVerdict check_directed(const ExplorationResult& exploration) {
  DirectednessVerdict v;
  v.terminal_count = exploration.terminals.size();
  if (exploration.terminals.size() >= 2) {
    v.kind = DirectednessVerdict::Kind::Undirected;
    v.witnesses = {exploration.producibles[exploration.terminals[0]],
                   exploration.producibles[exploration.terminals[1]]};
    return v;
  }
  std::unordered_map<std::string, std::size_t> by_domain;
  for (std::size_t i = 0; i < exploration.producibles.size(); ++i) {
    auto [it, inserted] = by_domain.emplace(exploration.producibles[i].domain_key(), i);
    if (!inserted) {
      v.kind = DirectednessVerdict::Kind::Undirected;
      v.conflict = true;
      v.witnesses = {exploration.producibles[it->second], exploration.producibles[i]};
      return v;
    }
  }
  if (!exploration.truncated && exploration.terminals.size() == 1)
    v.kind = DirectednessVerdict::Kind::Directed;
  return v;
}

DirectednessVerdict check_directed(const TileSystem& system, const ExplorationOptions& options) {
  return check_directed(explore_producibles(system, options));
}

}  // namespace tam
