#pragma once

#include <cstdint>
#include <vector>

namespace streamcolor {

using VertexId = std::uint32_t;
using Color = std::uint32_t;

/// One emitted edge color. `u` is the online (batch-owning) endpoint when
/// the producing algorithm has one; consumers treat the edge as unordered.
struct ColorAssignment {
  VertexId u = 0;
  VertexId v = 0;
  Color color = 0;

  friend bool operator==(const ColorAssignment&, const ColorAssignment&) = default;
};

using Assignments = std::vector<ColorAssignment>;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Shifts every color in `out[from..]` by `base`.
inline void offset_colors(Assignments& out, std::size_t from, Color base) {
  for (std::size_t i = from; i < out.size(); ++i) out[i].color += base;
}

/// Appends `src` to `dst` with every color shifted by `base`.
inline void append_offset(Assignments& dst, const Assignments& src, Color base) {
  dst.reserve(dst.size() + src.size());
  for (auto a : src) {
    a.color += base;
    dst.push_back(a);
  }
}

}  // namespace streamcolor
