#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "streamcolor/stream_model.hpp"
#include "streamcolor/types.hpp"

namespace streamcolor {

struct VerifyReport {
  bool proper = true;    // no two edges at a vertex share a color
  bool complete = true;  // every stream edge colored exactly once, nothing else
  std::uint64_t edges = 0;
  std::uint64_t assignments = 0;
  std::uint64_t colors_used = 0;
  std::optional<Color> max_color;
  std::vector<Edge> missing;
  std::vector<Edge> duplicates;
  std::vector<Edge> extraneous;
  std::vector<std::pair<ColorAssignment, ColorAssignment>> conflicts;
  std::optional<Color> budget;
  bool within_budget = true;  // max_color + 1 <= budget when a budget is given

  bool ok() const { return proper && complete && within_budget; }
};

/// Checks an output against the edges of its stream. Unbounded memory.
VerifyReport verify(std::span<const Edge> stream_edges,
                    std::span<const ColorAssignment> assignments,
                    std::optional<Color> budget = std::nullopt);

VerifyReport verify(const StreamFile& stream, const OutputFile& output,
                    std::optional<Color> budget = std::nullopt);

/// Multi-line human summary; lists at most `max_items` of each problem kind.
std::string format_report(const VerifyReport& report, std::size_t max_items = 10);

}  // namespace streamcolor
