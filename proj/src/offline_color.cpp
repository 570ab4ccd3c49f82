#include "streamcolor/offline_color.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "streamcolor/error.hpp"

namespace streamcolor {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct DenseIds {
  std::unordered_map<VertexId, std::uint32_t> index;

  std::uint32_t of(VertexId v) {
    auto [it, inserted] = index.try_emplace(v, static_cast<std::uint32_t>(index.size()));
    return it->second;
  }
  std::uint32_t size() const { return static_cast<std::uint32_t>(index.size()); }
};

struct DenseGraph {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::uint32_t vertices = 0;
  std::uint32_t max_deg = 0;
};

DenseGraph densify(std::span<const Edge> edges) {
  DenseIds ids;
  DenseGraph g;
  g.edges.reserve(edges.size());
  std::vector<std::uint32_t> deg;
  for (const auto& e : edges) {
    const auto a = ids.of(e.u);
    const auto b = ids.of(e.v);
    if (a == b) fail(ErrorCode::SelfLoop, "offline graph has a self-loop");
    g.edges.emplace_back(a, b);
    deg.resize(ids.size(), 0);
    g.max_deg = std::max({g.max_deg, ++deg[a], ++deg[b]});
  }
  g.vertices = ids.size();
  return g;
}

// Per-vertex list of (color, edge) for the colored edges at that vertex.
class SparseColorTable {
 public:
  explicit SparseColorTable(std::uint32_t vertices) : at_(vertices) {}

  std::uint32_t edge_with(std::uint32_t v, Color c) const {
    for (const auto& [col, e] : at_[v])
      if (col == c) return e;
    return kNone;
  }
  void put(std::uint32_t v, Color c, std::uint32_t e) { at_[v].emplace_back(c, e); }
  void recolor(std::uint32_t v, std::uint32_t e, Color c) {
    for (auto& [col, edge] : at_[v])
      if (edge == e) {
        col = c;
        return;
      }
  }
  Color lowest_free(std::uint32_t v) const {
    std::vector<bool> used(at_[v].size() + 1, false);
    for (const auto& [col, e] : at_[v])
      if (col < used.size()) used[col] = true;
    return static_cast<Color>(std::find(used.begin(), used.end(), false) - used.begin());
  }

 private:
  std::vector<std::vector<std::pair<Color, std::uint32_t>>> at_;
};

}  // namespace

std::uint32_t max_degree(std::span<const Edge> edges) {
  std::unordered_map<VertexId, std::uint32_t> deg;
  std::uint32_t best = 0;
  for (const auto& e : edges) best = std::max({best, ++deg[e.u], ++deg[e.v]});
  return best;
}

EdgeColors color_bipartite_exact(const OfflineGraph& graph, SpaceMeter* meter) {
  if (!graph.oriented) fail(ErrorCode::NotBipartite, "no bipartition witness");
  if (graph.edges.empty()) return {};

  DenseIds left, right;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) edges.emplace_back(left.of(e.u), right.of(e.v));
  for (const auto& [v, id] : left.index)
    if (right.index.count(v)) fail(ErrorCode::NotBipartite, "vertex on both sides");

  const std::uint64_t words = 5 * edges.size() + 2 * (left.size() + right.size());
  std::optional<ScopedCharge> charge;
  if (meter) charge.emplace(*meter, Account::OfflineColor, words);

  // Left vertices are [0, L), right vertices [L, L + R) in the table.
  const std::uint32_t L = left.size();
  SparseColorTable table(L + right.size());
  EdgeColors color(edges.size(), kNone);
  auto other = [&](std::uint32_t e, std::uint32_t v) {
    return edges[e].first == v ? edges[e].second + L : edges[e].first;
  };

  std::vector<std::uint32_t> path;
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    const std::uint32_t x = edges[e].first;
    const std::uint32_t y = edges[e].second + L;
    const Color a = table.lowest_free(x);
    if (table.edge_with(y, a) != kNone) {
      const Color b = table.lowest_free(y);
      // Walk the a/b alternating path from y and swap its two colors. It
      // cannot reach x, since a is free at x.
      path.clear();
      std::uint32_t v = y;
      Color want = a;
      for (std::uint32_t f; (f = table.edge_with(v, want)) != kNone;) {
        path.push_back(f);
        v = other(f, v);
        want = want == a ? b : a;
      }
      for (std::uint32_t f : path) {
        const Color flipped = color[f] == a ? b : a;
        table.recolor(edges[f].first, f, flipped);
        table.recolor(edges[f].second + L, f, flipped);
        color[f] = flipped;
      }
    }
    color[e] = a;
    table.put(x, a, e);
    table.put(y, a, e);
  }
  return color;
}

EdgeColors color_general(const OfflineGraph& graph, SpaceMeter* meter) {
  if (graph.edges.empty()) return {};
  const DenseGraph g = densify(graph.edges);
  const std::uint32_t palette = g.max_deg + 1;

  const std::uint64_t words =
      static_cast<std::uint64_t>(g.vertices) * palette + g.edges.size() + 2 * g.vertices;
  std::optional<ScopedCharge> charge;
  if (meter) charge.emplace(*meter, Account::OfflineColor, words);

  // at[v * palette + c] = edge of color c at v.
  std::vector<std::uint32_t> at(static_cast<std::size_t>(g.vertices) * palette, kNone);
  EdgeColors color(g.edges.size(), kNone);
  auto slot = [&](std::uint32_t v, Color c) -> std::uint32_t& {
    return at[static_cast<std::size_t>(v) * palette + c];
  };
  auto is_free = [&](std::uint32_t v, Color c) { return slot(v, c) == kNone; };
  auto other = [&](std::uint32_t e, std::uint32_t v) {
    return g.edges[e].first == v ? g.edges[e].second : g.edges[e].first;
  };
  auto set_color = [&](std::uint32_t e, Color c) {
    color[e] = c;
    slot(g.edges[e].first, c) = e;
    slot(g.edges[e].second, c) = e;
  };
  auto clear_color = [&](std::uint32_t e) {
    slot(g.edges[e].first, color[e]) = kNone;
    slot(g.edges[e].second, color[e]) = kNone;
    color[e] = kNone;
  };
  auto lowest_free = [&](std::uint32_t v) {
    Color c = 0;
    while (!is_free(v, c)) ++c;
    return c;
  };

  std::vector<std::uint32_t> fan, fan_edges, path;
  std::vector<bool> in_fan(g.vertices, false);
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    const auto [x, f] = g.edges[e];
    Color common = kNone;
    for (Color c = 0; c < palette && common == kNone; ++c)
      if (is_free(x, c) && is_free(f, c)) common = c;
    if (common != kNone) {
      set_color(e, common);
      continue;
    }

    // Maximal fan of x starting at f: each next fan edge's color is free at
    // the previous fan vertex.
    fan.assign(1, f);
    fan_edges.assign(1, e);
    in_fan[f] = true;
    for (bool grew = true; grew;) {
      grew = false;
      const std::uint32_t last = fan.back();
      for (Color c = 0; c < palette; ++c) {
        const std::uint32_t xe = slot(x, c);
        if (xe == kNone || !is_free(last, c)) continue;
        const std::uint32_t y = other(xe, x);
        if (in_fan[y]) continue;
        fan.push_back(y);
        fan_edges.push_back(xe);
        in_fan[y] = true;
        grew = true;
        break;
      }
    }
    for (std::uint32_t v : fan) in_fan[v] = false;

    const Color c = lowest_free(x);
    const Color d = lowest_free(fan.back());

    // Invert the cd-path through x (it starts with x's d-edge).
    path.clear();
    std::uint32_t v = x;
    Color want = d;
    for (std::uint32_t pe; (pe = slot(v, want)) != kNone;) {
      path.push_back(pe);
      v = other(pe, v);
      want = want == d ? c : d;
    }
    std::vector<Color> old(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
      old[i] = color[path[i]];
      clear_color(path[i]);
    }
    for (std::size_t i = 0; i < path.size(); ++i) set_color(path[i], old[i] == c ? d : c);

    // First fan vertex w with d free such that the prefix is still a fan.
    std::size_t w = fan.size();
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (i > 0 && (color[fan_edges[i]] == kNone || !is_free(fan[i - 1], color[fan_edges[i]])))
        break;
      if (is_free(fan[i], d)) {
        w = i;
        break;
      }
    }
    if (w == fan.size()) fail(ErrorCode::InvalidArgument, "Misra-Gries rotation failed");

    // Rotate the prefix: fan edge i takes the color of fan edge i + 1.
    std::vector<Color> shifted(w);
    for (std::size_t i = 0; i < w; ++i) shifted[i] = color[fan_edges[i + 1]];
    for (std::size_t i = 1; i <= w; ++i) clear_color(fan_edges[i]);
    for (std::size_t i = 0; i < w; ++i) set_color(fan_edges[i], shifted[i]);
    set_color(fan_edges[w], d);
  }
  return color;
}

EdgeColors color_greedy(const OfflineGraph& graph, SpaceMeter* meter) {
  if (graph.edges.empty()) return {};
  const DenseGraph g = densify(graph.edges);
  const std::uint32_t palette = 2 * g.max_deg - 1;
  const std::uint64_t words = static_cast<std::uint64_t>(g.vertices) * palette + g.edges.size();
  std::optional<ScopedCharge> charge;
  if (meter) charge.emplace(*meter, Account::OfflineColor, words);

  std::vector<bool> used(static_cast<std::size_t>(g.vertices) * palette, false);
  EdgeColors color(g.edges.size());
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    const auto [a, b] = g.edges[e];
    Color c = 0;
    while (used[static_cast<std::size_t>(a) * palette + c] ||
           used[static_cast<std::size_t>(b) * palette + c])
      ++c;
    used[static_cast<std::size_t>(a) * palette + c] = true;
    used[static_cast<std::size_t>(b) * palette + c] = true;
    color[e] = c;
  }
  return color;
}

bool is_proper_coloring(std::span<const Edge> edges, std::span<const Color> colors) {
  if (edges.size() != colors.size()) return false;
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (VertexId v : {edges[i].u, edges[i].v}) {
      const std::uint64_t key = (static_cast<std::uint64_t>(v) << 32) | colors[i];
      if (!seen.insert(key).second) return false;
    }
  }
  return true;
}

std::uint32_t distinct_colors(std::span<const Color> colors) {
  std::unordered_set<Color> s(colors.begin(), colors.end());
  return static_cast<std::uint32_t>(s.size());
}

}  // namespace streamcolor
