#include "streamcolor/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "streamcolor/error.hpp"
#include "streamcolor/offline_color.hpp"

namespace streamcolor {

std::size_t route_two_sided(std::uint32_t side) {
  if (side > 1) fail(ErrorCode::UnknownSide, "unknown side " + std::to_string(side));
  return side;
}

SideSplit::SideSplit(std::uint32_t delta, std::uint64_t seed, SpaceMeter& meter) {
  instances_.reserve(2);
  for (std::uint64_t i = 0; i < 2; ++i)
    instances_.emplace_back(OneSidedConfig{delta, 0, 0, split_seed(seed, i)}, meter);
}

Color SideSplit::block_base(Side side) const {
  return side == Side::V ? 0 : instances_[0].budget();
}

void SideSplit::on_arrival(Side side, VertexId u, std::span<const VertexId> neighbors,
                           Assignments& out) {
  const std::size_t i = route_two_sided(static_cast<std::uint32_t>(side));
  append_offset(out, instances_[i].on_online_vertex(u, neighbors), block_base(side));
}

void SideSplit::finalize(Assignments& out) {
  for (Side side : {Side::V, Side::U})
    append_offset(out, instance(side).finalize(), block_base(side));
}

SpillReport SideSplit::spill_report() const {
  SpillReport r = instances_[0].spill_report();
  r += instances_[1].spill_report();
  return r;
}

std::uint32_t BipartizationTree::max_levels(std::uint32_t delta) {
  return delta <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(delta - 1));
}

std::uint32_t BipartizationTree::declared_level_delta(std::uint32_t delta, std::uint32_t level) {
  const std::uint64_t den = std::uint64_t{2} << level;  // 2^(level+1)
  const std::uint64_t d = (3 * std::uint64_t{delta} + 2 * den - 1) / (2 * den);
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(delta, d));
}

std::uint32_t BipartizationTree::stop_degree(std::uint32_t n_vertices) {
  const double lg = n_vertices > 1 ? std::log2(static_cast<double>(n_vertices)) : 0.0;
  return std::max<std::uint32_t>(16, static_cast<std::uint32_t>(std::ceil(10.0 * lg)));
}

std::uint32_t BipartizationTree::level_count(std::uint32_t delta, std::uint32_t n_vertices) {
  const std::uint32_t cap = max_levels(delta);
  const std::uint32_t stop = stop_degree(n_vertices);
  std::uint32_t l = 0;
  while (l < cap && declared_level_delta(delta, l) >= stop) ++l;
  return l;
}

BipartizationTree::BipartizationTree(const BipartizationConfig& config, SpaceMeter& meter)
    : config_(config), meter_(&meter), rng_(config.seed) {
  if (config_.delta == 0) fail(ErrorCode::InvalidArgument, "delta must be at least 1");
  levels_ = level_count(config_.delta, config_.n_vertices);
  for (std::uint32_t l = 0; l < levels_; ++l)
    level_delta_.push_back(declared_level_delta(config_.delta, l));
  bits_.assign(config_.n_vertices, 0);
  drawn_.assign(config_.n_vertices, false);
  level_degree_.assign(levels_, std::vector<std::uint32_t>(config_.n_vertices, 0));
}

BipartizationTree::~BipartizationTree() {
  if (held_bits_ > 0) meter_->release(Account::Bits, held_bits_);
  if (held_base_ > 0) meter_->release(Account::BaseStore, held_base_);
}

bool BipartizationTree::bit(VertexId v, std::uint32_t level) {
  if (v >= config_.n_vertices)
    fail(ErrorCode::InvalidArgument, "vertex id outside [0, " +
                                         std::to_string(config_.n_vertices) + ")");
  if (!drawn_[v]) {
    bits_[v] = rng_.next();
    drawn_[v] = true;
    meter_->charge(Account::Bits, 1);
    ++held_bits_;
  }
  return (bits_[v] >> level) & 1u;
}

std::uint32_t BipartizationTree::route(VertexId u, VertexId v) {
  for (std::uint32_t l = 0; l < levels_; ++l)
    if (bit(u, l) != bit(v, l)) return l;
  // Touch both endpoints so every seen vertex owns its bit word.
  if (levels_ == 0) {
    bit(u, 0);
    bit(v, 0);
  }
  return kBaseStore;
}

bool BipartizationTree::admit(std::uint32_t level, VertexId u, VertexId v) {
  auto& deg = level_degree_.at(level);
  const std::uint32_t cap = level_delta_[level];
  if (deg[u] >= cap || deg[v] >= cap) {
    ++breaches_;
    if (config_.policy == BoundPolicy::Strict)
      fail(ErrorCode::BoundViolation, "level " + std::to_string(level) +
                                          " degree would exceed its declared bound " +
                                          std::to_string(cap));
    return false;
  }
  // One counter word per (level, vertex) once the vertex appears there.
  for (VertexId x : {u, v}) {
    if (deg[x]++ == 0) {
      meter_->charge(Account::Bits, 1);
      ++held_bits_;
    }
  }
  return true;
}

void BipartizationTree::store_base(VertexId u, VertexId v) {
  base_.push_back({u, v});
  meter_->charge(Account::BaseStore, 2);
  held_base_ += 2;
}

void BipartizationTree::finalize_base(Color base, Assignments& out) {
  if (base_.empty()) return;
  const EdgeColors colors = color_general(OfflineGraph{base_, false}, meter_);
  out.reserve(out.size() + base_.size());
  for (std::size_t i = 0; i < base_.size(); ++i)
    out.push_back({base_[i].u, base_[i].v, base + colors[i]});
  meter_->release(Account::BaseStore, held_base_);
  held_base_ = 0;
  base_.clear();
  base_.shrink_to_fit();
}

}  // namespace streamcolor
