#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "streamcolor/rng.hpp"
#include "streamcolor/types.hpp"

namespace streamcolor {

/// c = 272/100, kept rational so the period is computed in integers.
inline constexpr std::uint64_t kPaletteFactorNum = 272;
inline constexpr std::uint64_t kPaletteFactorDen = 100;

/// ceil(num * x / den) in integer arithmetic.
constexpr std::uint64_t ceil_scaled(std::uint64_t x, std::uint64_t num, std::uint64_t den) {
  return (num * x + den - 1) / den;
}

struct PaletteParams {
  std::uint32_t delta = 1;
  std::uint32_t period = 3;  // P = ceil(2.72 * delta)

  static PaletteParams for_degree(std::uint32_t delta);

  /// Width of the three proposal bands, 3P.
  Color band_span() const { return 3 * period; }
};

/// Per-offline-vertex state: three distinct shifts in [0, P) and the number
/// of this vertex's edges consumed so far.
struct OfflineState {
  std::array<std::uint32_t, 3> shifts{};
  std::uint32_t deg = 0;

  friend bool operator==(const OfflineState&, const OfflineState&) = default;
};

/// Words of algorithm memory per stored OfflineState (3 shifts + counter).
inline constexpr std::uint64_t kOfflineStateWords = 4;

/// Draws three distinct shifts (ordered as drawn) and deg = 0.
/// Throws PeriodTooSmall when P < 3.
OfflineState draw_offline_state(Rng& rng, const PaletteParams& params);

/// The three band-offset proposals for the next edge of this vertex:
///   x1 = (r1 + deg) mod P, x2 = (r2 + deg) mod P + P, x3 = (r3 + deg) mod P + 2P.
/// Pure; the caller increments deg once per consumed edge.
std::array<Color, 3> propose_colors(const OfflineState& state, const PaletteParams& params);

/// Mixed-radix encoding of composite colors such as (batch, base). The first
/// component is most significant; flat ids exactly tile [0, total()).
class FlatPalette {
 public:
  explicit FlatPalette(std::vector<std::pair<std::string, Color>> layout);

  Color flatten(std::span<const Color> tuple) const;
  std::vector<Color> unflatten(Color flat) const;

  Color total() const { return total_; }
  const std::vector<std::pair<std::string, Color>>& layout() const { return layout_; }

 private:
  std::vector<std::pair<std::string, Color>> layout_;
  Color total_ = 1;
};

/// Contiguous, disjoint color blocks handed out in order (one per
/// sub-instance, spill set or flush).
class ColorBlocks {
 public:
  /// Reserves `width` colors and returns the block's first color.
  Color reserve(std::string label, Color width);

  Color total() const { return total_; }
  const std::vector<std::pair<std::string, Color>>& blocks() const { return blocks_; }

 private:
  std::vector<std::pair<std::string, Color>> blocks_;
  Color total_ = 0;
};

}  // namespace streamcolor
