#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "streamcolor/palette.hpp"
#include "streamcolor/rng.hpp"
#include "streamcolor/space_meter.hpp"
#include "streamcolor/types.hpp"

namespace streamcolor {

struct SpillReport {
  std::uint64_t spilled_vertices = 0;  // arrivals (or batches) whose edges went to S
  std::uint64_t spilled_edges = 0;

  SpillReport& operator+=(const SpillReport& o) {
    spilled_vertices += o.spilled_vertices;
    spilled_edges += o.spilled_edges;
    return *this;
  }
};

struct OneSidedConfig {
  std::uint32_t delta = 1;        // declared max degree
  std::uint32_t batch_size = 0;   // 0: vertex arrivals; k: batch arrivals
  std::uint32_t max_batches = 0;  // batch mode; 0 means ceil(delta / k)
  std::uint64_t seed = 0;
};

/// Streaming edge coloring of a bipartite graph under one-sided vertex
/// arrivals, and its batch-arrival generalization.
///
/// Every offline vertex stores three distinct random shifts and a degree
/// counter. An arriving online vertex (or batch) is colored by a perfect
/// matching of its edges to the base colors those shifts propose; when none
/// exists its edges are stored in the spill set S and colored offline by
/// finalize() in a block placed after the streaming colors.
///
/// Color layout (all relative to this instance):
///   vertex mode: [0, 3P) streaming, [3P, 3P + Δ) spill
///   batch mode:  [0, B·3P) streaming as (batch, base) mixed radix, then Δ spill
/// Offline vertices are any ids; their state is created at first sight.
class OneSidedInstance {
 public:
  OneSidedInstance(const OneSidedConfig& config, SpaceMeter& meter);
  ~OneSidedInstance();
  OneSidedInstance(OneSidedInstance&&) noexcept;
  OneSidedInstance& operator=(OneSidedInstance&&) = delete;

  /// All edges of online vertex u. Throws DegreeExceeded if the list is longer
  /// than Δ or an offline vertex would pass Δ.
  Assignments on_online_vertex(VertexId u, std::span<const VertexId> neighbors);

  /// Exactly k edges of online vertex u. Throws BatchSizeMismatch,
  /// TooManyBatches or DegreeExceeded.
  Assignments on_batch(VertexId u, std::span<const VertexId> neighbors);

  /// Colors and empties the spill set; releases the offline states.
  Assignments finalize();

  /// True if consuming these offline endpoints would push one past Δ.
  bool would_exceed(std::span<const VertexId> offline) const;

  std::uint32_t offline_degree(VertexId v) const;

  /// Installs a known state for v before it is first seen (replay, tests).
  /// Shifts must be distinct and below P.
  void preset_state(VertexId v, const OfflineState& state);

  const PaletteParams& params() const { return params_; }
  const OneSidedConfig& config() const { return config_; }
  bool batch_mode() const { return config_.batch_size > 0; }
  std::uint32_t max_batches() const { return max_batches_; }

  /// Streaming colors are below this; the spill block follows.
  Color streaming_colors() const;
  Color budget() const { return streaming_colors() + config_.delta; }

  SpillReport spill_report() const { return report_; }
  std::size_t spill_size() const { return spill_.size(); }

 private:
  OfflineState& state_of(VertexId v);
  Assignments color_edges(VertexId u, std::span<const VertexId> neighbors, Color block_base);
  void check_degrees(std::span<const VertexId> neighbors) const;

  OneSidedConfig config_;
  PaletteParams params_;
  std::uint32_t max_batches_ = 1;
  SpaceMeter* meter_;
  Rng rng_;
  std::unordered_map<VertexId, OfflineState> states_;
  std::unordered_map<VertexId, std::uint32_t> batches_seen_;
  std::vector<Edge> spill_;
  SpillReport report_;
  bool finalized_ = false;
};

}  // namespace streamcolor
