#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "streamcolor/space_meter.hpp"
#include "streamcolor/types.hpp"

namespace streamcolor {

/// A finite simple graph given by its edge list. When `oriented` is set the
/// edge list doubles as a bipartition witness: every `u` is a left vertex and
/// every `v` a right vertex.
struct OfflineGraph {
  std::vector<Edge> edges;
  bool oriented = false;
};

/// Colors are returned per edge, in input order.
using EdgeColors = std::vector<Color>;

std::uint32_t max_degree(std::span<const Edge> edges);

/// Proper Δ'-edge-coloring of a bipartite graph (König) by alternating-path
/// insertion in edge order: each edge takes the lowest color free at its left
/// end; on conflict the alternating path at the right end is flipped.
/// Throws NotBipartite without an orientation witness or when a vertex sits
/// on both sides. Working memory is charged to `meter` while running.
EdgeColors color_bipartite_exact(const OfflineGraph& graph, SpaceMeter* meter = nullptr);

/// Proper (Δ'+1)-edge-coloring of any simple graph (Misra-Gries fans and
/// cd-path inversion; edges that have a common free color take it directly).
EdgeColors color_general(const OfflineGraph& graph, SpaceMeter* meter = nullptr);

/// Each edge gets the lowest color unused at both endpoints; < 2Δ'-1 colors.
EdgeColors color_greedy(const OfflineGraph& graph, SpaceMeter* meter = nullptr);

/// No two edges sharing an endpoint share a color.
bool is_proper_coloring(std::span<const Edge> edges, std::span<const Color> colors);

/// Number of distinct colors in `colors`.
std::uint32_t distinct_colors(std::span<const Color> colors);

}  // namespace streamcolor
