#include "tam/window_movie.hpp"

#include <algorithm>
#include <future>

namespace tam {

namespace {

Window::Edge normalized(const Point& p, const Point& q) { return p < q ? Window::Edge{p, q} : Window::Edge{q, p}; }

}  // namespace

Window Window::box(const Point& min, const Point& max, int dimension) {
  Window w;
  w.dimension_ = dimension;
  Box cells{min, max};
  if (dimension == 2) cells.min.z = cells.max.z = 0;
  if (cells.min.x > cells.max.x || cells.min.y > cells.max.y || cells.min.z > cells.max.z)
    throw Error(ErrorKind::InvalidWindow, "box window with min > max");
  w.box_ = cells;
  const BoxIndexer idx(cells);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Point p = idx.point(i);
    for (Direction d : directions(dimension)) {
      const Point q = p + unit(d);
      if (!cells.contains(q)) w.edges_.insert(normalized(p, q));
    }
  }
  return w;
}

Window Window::from_edges(const std::vector<Edge>& edges, int dimension) {
  if (edges.empty()) throw Error(ErrorKind::InvalidWindow, "window has no edges");
  Window w;
  w.dimension_ = dimension;
  for (const auto& [p, q] : edges) {
    if (!adjacent(p, q) || (dimension == 2 && (p.z != 0 || q.z != 0)))
      throw Error(ErrorKind::InvalidWindow, "window edge " + to_string(p, dimension) + " - " +
                                                to_string(q, dimension) + " is not a lattice edge");
    w.edges_.insert(normalized(p, q));
  }
  Box bounds{w.edges_.begin()->first, w.edges_.begin()->first};
  for (const auto& [p, q] : w.edges_)
    for (const Point& r : {p, q}) {
      bounds.min = {std::min(bounds.min.x, r.x), std::min(bounds.min.y, r.y), std::min(bounds.min.z, r.z)};
      bounds.max = {std::max(bounds.max.x, r.x), std::max(bounds.max.y, r.y), std::max(bounds.max.z, r.z)};
    }
  const Box region = bounds.inflated(1, dimension);
  const BoxIndexer idx(region);
  std::vector<int> component(idx.size(), -1);
  int count = 0;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    if (component[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    component[s] = count;
    while (!stack.empty()) {
      const Point p = idx.point(stack.back());
      stack.pop_back();
      for (Direction d : directions(dimension)) {
        const Point q = p + unit(d);
        if (!region.contains(q) || w.edges_.count(normalized(p, q))) continue;
        const std::size_t j = idx(q);
        if (component[j] >= 0) continue;
        component[j] = count;
        stack.push_back(j);
      }
    }
    ++count;
  }
  if (count != 2)
    throw Error(ErrorKind::InvalidWindow,
                "window splits the lattice into " + std::to_string(count) + " regions, expected 2");
  for (const auto& [p, q] : w.edges_)
    if (component[idx(p)] == component[idx(q)])
      throw Error(ErrorKind::InvalidWindow,
                  "edge " + to_string(p, dimension) + " - " + to_string(q, dimension) + " does not separate");
  const int outer = component[idx(region.min)];
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (component[i] != outer) w.inside_.insert(idx.point(i));
  return w;
}

Point Window::anchor() const { return edges_.begin()->first; }

bool Window::inside(const Point& p) const { return box_ ? box_->contains(p) : inside_.count(p) != 0; }

bool Window::crosses(const Point& p, const Point& q) const {
  return adjacent(p, q) && inside(p) != inside(q);
}

Window Window::translated(const Point& c) const {
  Window w;
  w.dimension_ = dimension_;
  if (box_) w.box_ = Box{box_->min + c, box_->max + c};
  for (const auto& [p, q] : edges_) w.edges_.insert({p + c, q + c});
  for (const Point& p : inside_) w.inside_.insert(p + c);
  return w;
}

WindowMovie WindowMovie::translated(const Point& c) const {
  WindowMovie m{entries, anchor + c};
  for (auto& e : m.entries) {
    e.from += c;
    e.to += c;
  }
  return m;
}

namespace {

void record(std::vector<MovieEntry>& out, const TileSet& tiles, const Window& window, const Point& p,
            TileIndex t) {
  for (Direction d : directions(window.dimension())) {
    const Point q = p + unit(d);
    const Glue& g = tiles[t].glue(d);
    if (g.strength > 0 && window.crosses(p, q)) out.push_back({p, q, g});
  }
}

WindowMovie movie_of(const TileSystem& system, const AssemblyTrace& trace, const Window& window) {
  WindowMovie m;
  m.anchor = window.anchor();
  for (const auto& [p, t] : system.seed.placements()) record(m.entries, system.tiles, window, p, t);
  for (const auto& s : trace.steps) record(m.entries, system.tiles, window, s.location, s.tile);
  return m;
}

Assembly replay(const TileSystem& system, const AssemblyTrace& trace, std::optional<bool> diffusion) {
  try {
    return run_trace(system, trace, diffusion);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidTrace, e.what(), e.index(), e.cause());
  }
}

}  // namespace

WindowMovie extract_movie(const TileSystem& system, const AssemblyTrace& trace, const Window& window,
                          std::optional<bool> diffusion) {
  replay(system, trace, diffusion);
  return movie_of(system, trace, window);
}

bool movies_equal(const WindowMovie& m1, const WindowMovie& m2, const Point& c) {
  if (m1.entries.size() != m2.entries.size()) return false;
  for (std::size_t k = 0; k < m1.entries.size(); ++k) {
    const MovieEntry& a = m1.entries[k];
    const MovieEntry& b = m2.entries[k];
    if (a.from != b.from - c || a.to != b.to - c || a.glue != b.glue) return false;
  }
  return true;
}

WindowMovie bond_forming_submovie(const WindowMovie& movie, const Assembly& final_assembly,
                                  const TileSet& tiles) {
  WindowMovie out;
  out.anchor = movie.anchor;
  for (const auto& e : movie.entries) {
    auto other = final_assembly.at(e.to);
    if (!other || !final_assembly.contains(e.from)) continue;
    const Glue& facing = tiles[*other].glue(opposite(*direction_between(e.from, e.to)));
    if (bond_strength(e.glue, facing) > 0) out.entries.push_back(e);
  }
  return out;
}

namespace {

struct SpliceOutcome {
  AssemblyTrace trace;
  std::optional<Error> error;
};

// Side of the window holding the seed, shared by both traces.
bool seed_side(const TileSystem& system, const Window& window, const Point& shift) {
  std::optional<bool> side;
  for (const auto& [p, t] : system.seed.placements()) {
    const bool s = window.inside(p + shift);
    if (side && *side != s)
      throw Error(ErrorKind::WindowSideMismatch, "seed straddles the window");
    side = s;
  }
  if (!side) throw Error(ErrorKind::WindowSideMismatch, "empty seed");
  return *side;
}

bool left_side(const TileSystem& system, const Window& window, const Point& c) {
  const bool a = seed_side(system, window, Point{});
  const bool b = seed_side(system, window.translated(c), Point{});
  if (a != b)
    throw Error(ErrorKind::WindowSideMismatch, "seeds lie on different sides of the two windows");
  return a;
}

SpliceOutcome splice_impl(const TileSystem& system, const AssemblyTrace& a, const AssemblyTrace& b,
                          const Window& window, const Point& c, const SpliceOptions& options) {
  const std::optional<bool> diffusion =
      options.strict ? std::optional<bool>{} : std::optional<bool>{false};
  const bool left = left_side(system, window, c);
  const Assembly alpha = replay(system, a, diffusion);
  const Assembly beta = replay(system, b, diffusion);
  const Window shifted = window.translated(c);

  WindowMovie ma = movie_of(system, a, window);
  WindowMovie mb = movie_of(system, b, shifted);
  if (options.mode == SpliceMode::BondForming) {
    ma = bond_forming_submovie(ma, alpha, system.tiles);
    mb = bond_forming_submovie(mb, beta, system.tiles);
  }
  if (!movies_equal(ma, mb, c))
    throw Error(ErrorKind::MovieMismatch, "window movies differ (" + std::to_string(ma.size()) +
                                              " vs " + std::to_string(mb.size()) + " entries)");

  const auto& as = a.steps;
  const AssemblyTrace b_shifted = b.translated(-c);
  const auto& bs = b_shifted.steps;
  const auto& movie = ma.entries;
  auto on_left = [&](const Point& p) { return window.inside(p) == left; };

  SpliceOutcome out;
  Assembly current = system.seed;
  auto emit = [&](const Placement& step) {
    if (auto err = attach_error(current, step, system, diffusion)) {
      out.error = Error(ErrorKind::SpliceStepInvalid,
                        "spliced step " + std::to_string(out.trace.size()) + " at " +
                            to_string(step.location, system.variant.dimension) + ": " +
                            std::string(to_string(*err)),
                        out.trace.size(), *err);
      return false;
    }
    current.place(step.location, step.tile);
    out.trace.steps.push_back(step);
    return true;
  };

  std::size_t i = 0, j = 0, k = 0;
  while (i < as.size() || j < bs.size()) {
    if (k < movie.size()) {
      const Point pos = movie[k].from;
      ++k;
      // Later glues of an already placed tile, or seed glues, need no step.
      if (current.contains(pos)) continue;
      if (on_left(pos)) {
        for (; i < as.size() && as[i].location != pos; ++i)
          if (on_left(as[i].location) && !emit(as[i])) return out;
        if (i < as.size() && !emit(as[i++])) return out;
      } else {
        for (; j < bs.size() && bs[j].location != pos; ++j)
          if (!on_left(bs[j].location) && !emit(bs[j])) return out;
        if (j < bs.size() && !emit(bs[j++])) return out;
      }
    } else {
      if (i < as.size()) {
        if (on_left(as[i].location) && !emit(as[i])) return out;
        ++i;
      }
      if (j < bs.size()) {
        if (!on_left(bs[j].location) && !emit(bs[j])) return out;
        ++j;
      }
    }
  }
  return out;
}

}  // namespace

AssemblyTrace splice(const TileSystem& system, const AssemblyTrace& a, const AssemblyTrace& b,
                     const Window& window, const Point& c, const SpliceOptions& options) {
  SpliceOutcome out = splice_impl(system, a, b, window, c, options);
  if (out.error) throw *out.error;
  return std::move(out.trace);
}

Assembly splice_target(const TileSystem& system, const AssemblyTrace& a, const AssemblyTrace& b,
                       const Window& window, const Point& c) {
  const bool left = left_side(system, window, c);
  const Assembly alpha = replay(system, a, false);
  const Assembly beta = replay(system, b, false).translated(-c);
  Assembly out(system.variant.dimension);
  for (const auto& [p, t] : alpha.placements())
    if (window.inside(p) == left) out.place(p, t);
  for (const auto& [p, t] : beta.placements())
    if (window.inside(p) != left) out.place(p, t);
  return out;
}

std::optional<MatchingWindows> find_matching_window_pair(const TileSystem& system,
                                                         const AssemblyTrace& trace,
                                                         const Window& window_template,
                                                         const std::vector<Point>& translations,
                                                         unsigned threads) {
  if (trace.empty()) return std::nullopt;
  replay(system, trace, false);
  std::vector<WindowMovie> movies(translations.size());
  auto work = [&](std::size_t start, std::size_t stop) {
    for (std::size_t i = start; i < stop; ++i)
      movies[i] = movie_of(system, trace, window_template.translated(translations[i]));
  };
  if (threads <= 1 || translations.size() < 2) {
    work(0, translations.size());
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (translations.size() + threads - 1) / threads;
    for (std::size_t s = 0; s < translations.size(); s += chunk)
      jobs.push_back(std::async(std::launch::async, work, s, std::min(translations.size(), s + chunk)));
    for (auto& j : jobs) j.get();
  }
  for (std::size_t i = 0; i < translations.size(); ++i) {
    if (movies[i].empty()) continue;
    for (std::size_t j = i + 1; j < translations.size(); ++j) {
      const Point c = translations[j] - translations[i];
      if (movies_equal(movies[i], movies[j], c))
        return MatchingWindows{window_template.translated(translations[i]),
                               window_template.translated(translations[j]), c};
    }
  }
  return std::nullopt;
}

PumpResult pump(const TileSystem& system, const AssemblyTrace& trace, const Window& w1, const Point& c,
                const PumpOptions& options) {
  PumpResult result{trace, 0, false};
  const Window w2 = w1.translated(c);
  const SpliceOptions splice_options{SpliceMode::Full, options.strict};
  const std::optional<bool> diffusion =
      options.strict ? std::optional<bool>{} : std::optional<bool>{false};
  const bool left = left_side(system, w2, -c);
  Assembly current = replay(system, trace, diffusion);

  // Steps of the original trace on the far side of w1, replayed at offset
  // k*c once splicing is obstructed by tiles already in the window.
  std::vector<Placement> segment;
  for (const auto& s : trace.steps)
    if (w1.inside(s.location) != left) segment.push_back(s);
  bool obstructed = false;

  for (std::size_t i = 1;; ++i) {
    if (options.repetitions ? i > *options.repetitions : i > options.max_iterations) break;
    const Point ci = c * static_cast<int>(i);
    if (!obstructed) {
      const Window window = w2.translated(c * static_cast<int>(i - 1));
      std::optional<SpliceOutcome> out;
      try {
        out = splice_impl(system, result.trace, trace, window, -ci, splice_options);
      } catch (const Error&) {
        if (options.repetitions || i == 1) throw;
      }
      if (out && out->error && options.repetitions) throw *out->error;
      if (out && !out->error) {
        Assembly next = replay(system, out->trace, diffusion);
        if (is_subassembly(current, next)) {
          result.trace = std::move(out->trace);
          current = std::move(next);
          result.completed = i;
          continue;
        }
        if (options.repetitions)
          throw Error(ErrorKind::SpliceStepInvalid, "pumped copy would replace existing tiles");
      }
      obstructed = true;
    }
    for (const Placement& s : segment) {
      const Placement step{s.location + ci, s.tile};
      if (current.at(step.location) == std::optional<TileIndex>{step.tile}) continue;
      if (attach_error(current, step, system, diffusion)) {
        result.blocked = true;
        return result;
      }
      current.place(step.location, step.tile);
      result.trace.steps.push_back(step);
    }
    result.completed = i;
  }
  return result;
}

}  // namespace tam
