#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "streamcolor/dispatch.hpp"
#include "streamcolor/one_sided.hpp"
#include "streamcolor/rng.hpp"
#include "streamcolor/space_meter.hpp"
#include "streamcolor/types.hpp"

namespace streamcolor {

/// Side of an arriving vertex in a two-sided bipartite stream.
enum class Side : std::uint32_t { V = 0, U = 1 };

/// Instance index for an arrival from `side` (0 = V, 1 = U). UnknownSide otherwise.
std::size_t route_two_sided(std::uint32_t side);

/// Two-sided vertex arrivals as two one-sided streams. Arrivals of V-side
/// vertices feed instance 0 (V online there), U-side arrivals feed instance 1.
/// Instance 1's colors follow instance 0's block.
class SideSplit {
 public:
  SideSplit(std::uint32_t delta, std::uint64_t seed, SpaceMeter& meter);

  void on_arrival(Side side, VertexId u, std::span<const VertexId> neighbors, Assignments& out);
  void finalize(Assignments& out);

  Color budget() const { return 2 * instances_[0].budget(); }
  Color block_base(Side side) const;
  SpillReport spill_report() const;
  const OneSidedInstance& instance(Side side) const {
    return instances_[static_cast<std::size_t>(side)];
  }
  OneSidedInstance& instance(Side side) { return instances_[static_cast<std::size_t>(side)]; }

 private:
  std::vector<OneSidedInstance> instances_;
};

inline constexpr std::uint32_t kBaseStore = std::numeric_limits<std::uint32_t>::max();

struct BipartizationConfig {
  std::uint32_t delta = 1;
  std::uint32_t n_vertices = 0;
  std::uint64_t seed = 0;
  BoundPolicy policy = BoundPolicy::Strict;
};

/// Random recursive bipartization of a general graph.
///
/// Every vertex gets a word of random bits (drawn at first sight). An edge
/// belongs to the first level where its endpoints' bits differ; the endpoint
/// with bit 1 is the online side there. Levels are created while their
/// declared degree stays at or above max(10·log2 n, 16); edges agreeing on all
/// created levels land in the base store, colored offline at the end with
/// Δ' + 1 colors.
class BipartizationTree {
 public:
  BipartizationTree(const BipartizationConfig& config, SpaceMeter& meter);
  ~BipartizationTree();
  BipartizationTree(const BipartizationTree&) = delete;
  BipartizationTree& operator=(const BipartizationTree&) = delete;

  /// ceil(log2 delta): the most levels the recursion could use.
  static std::uint32_t max_levels(std::uint32_t delta);
  /// Declared degree at level l: min(delta, ceil(1.5 · delta / 2^(l+1))).
  static std::uint32_t declared_level_delta(std::uint32_t delta, std::uint32_t level);
  /// Degree below which no further level is created.
  static std::uint32_t stop_degree(std::uint32_t n_vertices);
  /// Number of levels created for these parameters.
  static std::uint32_t level_count(std::uint32_t delta, std::uint32_t n_vertices);

  std::uint32_t levels() const { return levels_; }
  std::uint32_t level_delta(std::uint32_t level) const { return level_delta_.at(level); }

  bool bit(VertexId v, std::uint32_t level);
  /// First level where the bits of u and v differ, or kBaseStore.
  std::uint32_t route(VertexId u, VertexId v);

  /// Level degree bookkeeping: `admit` returns false (and records a breach)
  /// when the edge would push an endpoint past the level's declared degree;
  /// under the strict policy it throws BoundViolation instead.
  bool admit(std::uint32_t level, VertexId u, VertexId v);

  void store_base(VertexId u, VertexId v);
  std::size_t base_size() const { return base_.size(); }
  Color base_width() const { return config_.delta + 1; }
  void finalize_base(Color base, Assignments& out);

  std::uint64_t breaches() const { return breaches_; }
  const BipartizationConfig& config() const { return config_; }

 private:
  BipartizationConfig config_;
  SpaceMeter* meter_;
  Rng rng_;
  std::uint32_t levels_ = 0;
  std::vector<std::uint32_t> level_delta_;
  std::vector<std::uint64_t> bits_;
  std::vector<bool> drawn_;
  std::vector<std::vector<std::uint32_t>> level_degree_;
  std::vector<Edge> base_;
  std::uint64_t breaches_ = 0;
  std::uint64_t held_bits_ = 0;
  std::uint64_t held_base_ = 0;
};

}  // namespace streamcolor
