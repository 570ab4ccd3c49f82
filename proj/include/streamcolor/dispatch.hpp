#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "streamcolor/one_sided.hpp"
#include "streamcolor/rng.hpp"
#include "streamcolor/space_meter.hpp"
#include "streamcolor/types.hpp"

namespace streamcolor {

/// What to do when a sub-instance would see a degree above its declared bound.
enum class BoundPolicy {
  Strict,  // throw Error(BoundViolation)
  Divert,  // store the offending batch, color it at finalize in its own block
};

enum class DispatchMode {
  Sqrt,     // s = ceil(sqrt(delta)), k vertex-arrival sub-instances
  General,  // 1 <= s <= ceil(sqrt(delta)), grouped batch sub-instances
};

struct DispatchConfig {
  DispatchMode mode = DispatchMode::Sqrt;
  std::uint32_t delta = 1;
  std::uint32_t s = 1;           // General mode only
  std::uint32_t n_vertices = 0;  // vertex ids lie in [0, n_vertices)
  std::uint64_t seed = 0;
  bool force_stream = false;     // skip the small-delta store-everything path
  BoundPolicy policy = BoundPolicy::Strict;
};

/// ceil(sqrt(x)) in integer arithmetic.
std::uint32_t ceil_sqrt(std::uint64_t x);

/// Sub-instance index of the I-th batch (1-based) of a vertex with shift b.
inline std::uint32_t sqrt_instance(std::uint32_t batch, std::uint32_t shift, std::uint32_t k) {
  return (batch + shift) % k;
}

/// Group instance of the I-th batch (1-based): ceil(I / width) shifted by g, mod s.
inline std::uint32_t group_instance(std::uint32_t batch, std::uint32_t shift,
                                    std::uint32_t group_width, std::uint32_t s) {
  const std::uint32_t group = (batch + group_width - 1) / group_width;
  return (group + shift) % s;
}

/// True when the store-everything path applies (delta small against log^2 n).
bool use_fallback(DispatchMode mode, std::uint32_t delta, std::uint32_t n_vertices);

/// Edge-arrival coloring of a bipartite graph whose sides are known.
///
/// Edges are buffered in T; once a vertex holds k of them they leave as one
/// batch and are routed, by a random per-vertex shift of the batch counter, to
/// one of several one-sided sub-instances with disjoint color blocks.
///
/// Sqrt mode batches only online-side vertices and delivers each batch as a
/// vertex arrival to one of k instances (declared degree 2k). General mode
/// batches both sides: when |T| reaches n·s every vertex holding >= k edges is
/// drained, and if T is still full it is colored offline with k fresh colors.
/// Batches of an online-side owner go to the first family of s grouped batch
/// instances, batches of an offline-side owner to the second.
class EdgeDispatcher {
 public:
  EdgeDispatcher(const DispatchConfig& config, SpaceMeter& meter);
  ~EdgeDispatcher();
  EdgeDispatcher(const EdgeDispatcher&) = delete;
  EdgeDispatcher& operator=(const EdgeDispatcher&) = delete;

  /// Consumes edge (online, offline). Throws DegreeExceeded past delta.
  void feed_edge(VertexId online, VertexId offline, Assignments& out);

  /// Colors everything still held (buffer, diverted batches, spill sets).
  void finalize(Assignments& out);

  /// True if the edge would push an endpoint past delta.
  bool would_exceed(VertexId a, VertexId b) const;
  std::uint32_t degree(VertexId v) const { return degree_[v]; }

  Color budget() const { return total_colors_; }
  SpillReport spill_report() const;
  std::uint64_t bound_breaches() const { return breaches_; }
  std::uint64_t flushes() const { return flushes_; }
  std::size_t buffered_edges() const { return buffered_; }

  bool fallback() const { return fallback_; }
  const DispatchConfig& config() const { return config_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t s() const { return s_; }
  std::uint32_t group_width() const { return group_width_; }
  std::uint32_t instance_delta() const { return instance_delta_; }
  std::uint64_t max_flushes() const { return max_flushes_; }
  const std::vector<OneSidedInstance>& instances() const { return instances_; }

  /// Set when the requested s was above ceil(sqrt(delta)) and got clamped.
  bool s_clamped() const { return s_clamped_; }

 private:
  struct VertexState {
    std::vector<std::uint32_t> slots;  // buffered edges, oldest first
    std::uint32_t batches = 0;
    std::uint32_t shift = 0;
    bool shift_drawn = false;
  };

  void check_degree(VertexId online, VertexId offline);
  std::uint32_t next_batch_index(VertexId owner);
  void form_batch(VertexId owner, Assignments& out);
  void deliver(std::size_t instance, VertexId owner, const std::vector<VertexId>& nbrs,
               Assignments& out);
  void flush_buffer(Color base, Color width, Assignments& out);
  void drain_heavy(Assignments& out);
  std::uint32_t alloc_slot(VertexId online, VertexId offline);
  void free_slot(std::uint32_t slot);
  std::uint64_t words_per_buffered_edge() const;
  void hold(Account account, std::uint64_t words);
  void drop(Account account, std::uint64_t words);
  void color_oriented(const std::vector<Edge>& edges, Color base, Assignments& out);

  DispatchConfig config_;
  SpaceMeter* meter_;
  Rng rng_;
  bool fallback_ = false;
  bool s_clamped_ = false;
  std::uint32_t k_ = 1;
  std::uint32_t s_ = 1;
  std::uint32_t group_width_ = 1;
  std::uint32_t instance_delta_ = 1;
  std::uint64_t cap_ = 0;
  std::uint64_t max_flushes_ = 0;

  std::vector<OneSidedInstance> instances_;
  std::vector<Color> instance_base_;
  Color flush_base_ = 0;
  Color leftover_base_ = 0;
  Color leftover_width_ = 0;
  Color overflow_base_ = 0;
  Color total_colors_ = 0;

  std::vector<std::uint32_t> degree_;
  std::vector<VertexState> vertices_;
  std::vector<Edge> pool_;             // slot -> (online, offline)
  std::vector<std::uint32_t> free_slots_;
  std::set<VertexId> heavy_;           // general mode: vertices holding >= k
  std::size_t buffered_ = 0;
  std::vector<Edge> stored_;           // fallback store
  std::vector<Edge> overflow_;
  std::uint64_t breaches_ = 0;
  std::uint64_t flushes_ = 0;
  std::array<std::uint64_t, kAccountCount> held_{};  // words held on the meter
  bool finalized_ = false;
};

}  // namespace streamcolor
