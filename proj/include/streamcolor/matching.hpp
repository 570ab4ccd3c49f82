#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "streamcolor/palette.hpp"
#include "streamcolor/rng.hpp"
#include "streamcolor/types.hpp"

namespace streamcolor {

/// One edge (u, v_i) of the arriving online vertex: its three distinct base
/// colors in [0, P), sorted ascending, and the band (0/1/2) each came from.
struct ColorSlot {
  std::array<Color, 3> colors{};
  std::array<std::uint8_t, 3> bands{};
};

/// Bipartite graph between an online vertex's edge slots and the P base
/// colors. The color side is implicit.
struct ColorGraph {
  std::uint32_t period = 0;
  std::vector<ColorSlot> slots;
};

struct SlotChoice {
  Color base = 0;
  std::uint8_t band = 0;

  /// Band-offset color band * P + base.
  Color flat(std::uint32_t period) const { return band * period + base; }

  friend bool operator==(const SlotChoice&, const SlotChoice&) = default;
};

/// Per-slot choice of a perfect matching; nullopt when none exists.
using MatchResult = std::optional<std::vector<SlotChoice>>;

/// Slot i takes neighbors ((r^j + deg) mod P), j = 1..3, of the i-th state.
/// Throws TooManySlots when more than delta states are given.
ColorGraph build_color_graph(std::span<const OfflineState> states, const PaletteParams& params);

/// Hopcroft-Karp on the color graph with the color side stored sparsely.
/// Deterministic: slots scan their colors lowest first, slots are served in
/// index order.
MatchResult perfect_match(const ColorGraph& graph);

/// Exhaustive search (test oracle); at most 12 slots, else InstanceTooLarge.
/// Returns the lexicographically first assignment in ascending color order.
MatchResult brute_force_match(const ColorGraph& graph);

/// Hopcroft-Karp for an arbitrary left side: left vertex i may use any right
/// id in adj[i] (ids need not be dense). Returns the right id matched to each
/// left vertex if every left vertex can be matched.
std::optional<std::vector<std::uint32_t>> left_perfect_matching(
    std::span<const std::vector<std::uint32_t>> adj);

/// Exactly-k uniformly random distinct values in [0, range), via a partial
/// Fisher-Yates shuffle over a sparse swap table.
std::vector<std::uint32_t> sample_k_subset(Rng& rng, std::uint32_t range, std::uint32_t k);

/// One sample of the random k-out bipartite graph: each of n left vertices
/// picks a uniform k-subset of u_size right vertices. True iff it has a
/// left-perfect matching. Requires u_size >= k >= 1.
bool kout_trial(std::uint32_t n, std::uint32_t u_size, std::uint32_t k, Rng& rng);

/// True iff `choice` is a valid perfect matching of `graph`.
bool is_valid_matching(const ColorGraph& graph, const std::vector<SlotChoice>& choice);

}  // namespace streamcolor
