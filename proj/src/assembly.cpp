#include "tam/assembly.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "tam/error.hpp"

namespace tam {

std::optional<TileIndex> Assembly::at(const Point& p) const {
  auto it = cells_.find(p);
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

bool Assembly::place(const Point& p, TileIndex tile) {
  return cells_.emplace(p, tile).second;
}

Assembly Assembly::translated(const Point& offset) const {
  Assembly out(dimension_);
  for (const auto& [p, t] : cells_) out.cells_.emplace_hint(out.cells_.end(), p + offset, t);
  return out;
}

Box Assembly::bounds() const {
  Box b{cells_.begin()->first, cells_.begin()->first};
  for (const auto& [p, t] : cells_) {
    b.min = {std::min(b.min.x, p.x), std::min(b.min.y, p.y), std::min(b.min.z, p.z)};
    b.max = {std::max(b.max.x, p.x), std::max(b.max.y, p.y), std::max(b.max.z, p.z)};
  }
  return b;
}

bool Assembly::connected() const {
  if (cells_.empty()) return false;
  std::set<Point> seen{cells_.begin()->first};
  std::vector<Point> stack{cells_.begin()->first};
  while (!stack.empty()) {
    Point p = stack.back();
    stack.pop_back();
    for (Direction d : directions(dimension_)) {
      Point q = p + unit(d);
      if (cells_.count(q) && seen.insert(q).second) stack.push_back(q);
    }
  }
  return seen.size() == cells_.size();
}

namespace {
void append_point(std::string& s, const Point& p, int dimension) {
  s += std::to_string(p.x);
  s += ',';
  s += std::to_string(p.y);
  if (dimension == 3) {
    s += ',';
    s += std::to_string(p.z);
  }
}
}  // namespace

std::string Assembly::canonical_key() const {
  std::string s;
  s.reserve(cells_.size() * 12);
  for (const auto& [p, t] : cells_) {
    append_point(s, p, dimension_);
    s += ':';
    s += std::to_string(t);
    s += ';';
  }
  return s;
}

std::string Assembly::domain_key() const {
  std::string s;
  s.reserve(cells_.size() * 10);
  for (const auto& [p, t] : cells_) {
    append_point(s, p, dimension_);
    s += ';';
  }
  return s;
}

int BindingGraph::weight(const Point& p, const Point& q) const {
  BindingEdge key{std::min(p, q), std::max(p, q), 0};
  auto it = std::lower_bound(edges.begin(), edges.end(), key,
                             [](const BindingEdge& a, const BindingEdge& b) {
                               return std::tie(a.a, a.b) < std::tie(b.a, b.b);
                             });
  if (it != edges.end() && it->a == key.a && it->b == key.b) return it->weight;
  return 0;
}

BindingGraph binding_graph(const Assembly& assembly, const TileSet& tiles) {
  BindingGraph g;
  for (const auto& [p, t] : assembly.placements()) {
    if (t >= tiles.size())
      throw Error(ErrorKind::UnknownTile, "placement at " + to_string(p) + " uses unknown tile");
    g.vertices.push_back(p);
  }
  for (const auto& [p, t] : assembly.placements()) {
    // Only look in the positive directions so every pair is visited once.
    for (Direction d : directions(assembly.dimension())) {
      if (index(d) < index(Direction::U)) continue;
      const Point q = p + unit(d);
      auto other = assembly.at(q);
      if (!other) continue;
      const int w = bond_strength(tiles[t].glue(d), tiles[*other].glue(opposite(d)));
      if (w > 0) g.edges.push_back({p, q, w});
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::optional<long long> global_min_cut(std::size_t n,
                                        const std::vector<std::array<long long, 3>>& edges) {
  if (n < 2) return std::nullopt;
  std::vector<std::unordered_map<std::size_t, long long>> adj(n);
  for (const auto& e : edges) {
    const auto a = static_cast<std::size_t>(e[0]);
    const auto b = static_cast<std::size_t>(e[1]);
    if (a == b) continue;
    adj[a][b] += e[2];
    adj[b][a] += e[2];
  }
  std::vector<bool> merged(n, false);
  long long best = std::numeric_limits<long long>::max();
  std::vector<long long> key(n);
  std::vector<bool> in_a(n);
  for (std::size_t phase = 0; phase + 1 < n; ++phase) {
    // Maximum-adjacency ordering over the remaining super-vertices.
    std::fill(key.begin(), key.end(), 0);
    std::fill(in_a.begin(), in_a.end(), false);
    std::priority_queue<std::pair<long long, std::size_t>> pq;
    std::size_t remaining = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (merged[v]) continue;
      ++remaining;
      pq.push({0, v});
    }
    std::size_t prev = n, last = n;
    for (std::size_t added = 0; added < remaining;) {
      auto [k, v] = pq.top();
      pq.pop();
      if (in_a[v] || k != key[v]) continue;
      in_a[v] = true;
      ++added;
      prev = last;
      last = v;
      for (const auto& [u, w] : adj[v]) {
        if (merged[u] || in_a[u]) continue;
        key[u] += w;
        pq.push({key[u], u});
      }
    }
    best = std::min(best, key[last]);
    // Merge `last` into `prev`.
    merged[last] = true;
    for (const auto& [u, w] : adj[last]) {
      if (u == prev) continue;
      adj[prev][u] += w;
      adj[u][prev] += w;
      adj[u].erase(last);
    }
    adj[prev].erase(last);
    adj[last].clear();
  }
  return best;
}

bool is_tau_stable(const Assembly& assembly, const TileSet& tiles, int tau) {
  if (assembly.size() <= 1) return true;
  const BindingGraph g = binding_graph(assembly, tiles);
  std::map<Point, long long> id;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) id[g.vertices[i]] = static_cast<long long>(i);
  std::vector<std::array<long long, 3>> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges) edges.push_back({id[e.a], id[e.b], e.weight});
  return *global_min_cut(g.vertices.size(), edges) >= tau;
}

bool is_subassembly(const Assembly& a, const Assembly& b) {
  for (const auto& [p, t] : a.placements()) {
    auto other = b.at(p);
    if (!other || *other != t) return false;
  }
  return true;
}

std::set<Point> shape(const Assembly& assembly) {
  std::set<Point> s;
  for (const auto& [p, t] : assembly.placements()) s.insert(p);
  return s;
}

}  // namespace tam
