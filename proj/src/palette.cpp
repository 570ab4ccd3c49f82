#include "streamcolor/palette.hpp"

#include "streamcolor/error.hpp"

namespace streamcolor {

PaletteParams PaletteParams::for_degree(std::uint32_t delta) {
  if (delta < 1) fail(ErrorCode::InvalidArgument, "palette needs delta >= 1");
  PaletteParams p;
  p.delta = delta;
  p.period = static_cast<std::uint32_t>(ceil_scaled(delta, kPaletteFactorNum, kPaletteFactorDen));
  return p;
}

OfflineState draw_offline_state(Rng& rng, const PaletteParams& params) {
  const std::uint32_t P = params.period;
  if (P < 3) fail(ErrorCode::PeriodTooSmall, "period " + std::to_string(P) + " < 3");
  OfflineState s;
  s.shifts[0] = static_cast<std::uint32_t>(rng.below(P));
  do {
    s.shifts[1] = static_cast<std::uint32_t>(rng.below(P));
  } while (s.shifts[1] == s.shifts[0]);
  do {
    s.shifts[2] = static_cast<std::uint32_t>(rng.below(P));
  } while (s.shifts[2] == s.shifts[0] || s.shifts[2] == s.shifts[1]);
  return s;
}

std::array<Color, 3> propose_colors(const OfflineState& state, const PaletteParams& params) {
  const std::uint32_t P = params.period;
  std::array<Color, 3> x{};
  for (std::uint32_t j = 0; j < 3; ++j)
    x[j] = static_cast<Color>((static_cast<std::uint64_t>(state.shifts[j]) + state.deg) % P) +
           j * P;
  return x;
}

FlatPalette::FlatPalette(std::vector<std::pair<std::string, Color>> layout)
    : layout_(std::move(layout)) {
  std::uint64_t total = 1;
  for (const auto& [label, width] : layout_) {
    if (width == 0) fail(ErrorCode::InvalidArgument, "zero-width component '" + label + "'");
    total *= width;
    if (total > 0xffffffffULL) fail(ErrorCode::InvalidArgument, "palette too large");
  }
  total_ = static_cast<Color>(total);
}

Color FlatPalette::flatten(std::span<const Color> tuple) const {
  if (tuple.size() != layout_.size())
    fail(ErrorCode::ComponentOutOfRange, "tuple arity does not match layout");
  std::uint64_t flat = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const auto& [label, width] = layout_[i];
    if (tuple[i] >= width)
      fail(ErrorCode::ComponentOutOfRange, label + "=" + std::to_string(tuple[i]) +
                                               " outside width " + std::to_string(width));
    flat = flat * width + tuple[i];
  }
  return static_cast<Color>(flat);
}

std::vector<Color> FlatPalette::unflatten(Color flat) const {
  if (flat >= total_) fail(ErrorCode::ComponentOutOfRange, "flat color outside palette");
  std::vector<Color> tuple(layout_.size());
  for (std::size_t i = layout_.size(); i-- > 0;) {
    tuple[i] = flat % layout_[i].second;
    flat /= layout_[i].second;
  }
  return tuple;
}

Color ColorBlocks::reserve(std::string label, Color width) {
  const Color start = total_;
  if (static_cast<std::uint64_t>(total_) + width > 0xffffffffULL)
    fail(ErrorCode::InvalidArgument, "color space exhausted");
  total_ += width;
  blocks_.emplace_back(std::move(label), width);
  return start;
}

}  // namespace streamcolor
