#include "streamcolor/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "streamcolor/error.hpp"
#include "streamcolor/offline_color.hpp"

namespace streamcolor {

namespace {

constexpr VertexId kFreeSlot = std::numeric_limits<VertexId>::max();

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

std::uint32_t ceil_sqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r < x) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= x) --r;
  return static_cast<std::uint32_t>(r);
}

bool use_fallback(DispatchMode mode, std::uint32_t delta, std::uint32_t n_vertices) {
  if (n_vertices < 2) return true;
  const double lg = std::log2(static_cast<double>(n_vertices));
  const double factor = mode == DispatchMode::Sqrt ? 300.0 : 900.0;
  return static_cast<double>(delta) <= factor * lg * lg;
}

EdgeDispatcher::EdgeDispatcher(const DispatchConfig& config, SpaceMeter& meter)
    : config_(config), meter_(&meter), rng_(split_seed(config.seed, 0)) {
  if (config_.delta == 0) fail(ErrorCode::InvalidArgument, "delta must be at least 1");
  k_ = ceil_sqrt(config_.delta);
  if (config_.mode == DispatchMode::General) {
    if (config_.s == 0) fail(ErrorCode::InvalidArgument, "s must be at least 1");
    s_clamped_ = config_.s > k_;
    s_ = std::min(config_.s, k_);
  } else {
    s_ = k_;
  }
  degree_.assign(config_.n_vertices, 0);
  fallback_ = !config_.force_stream && use_fallback(config_.mode, config_.delta, config_.n_vertices);
  if (fallback_) {
    total_colors_ = config_.delta;
    return;
  }
  vertices_.resize(config_.n_vertices);

  Color next = 0;
  if (config_.mode == DispatchMode::Sqrt) {
    instance_delta_ = 2 * k_;
    instances_.reserve(k_);
    for (std::uint32_t x = 0; x < k_; ++x) {
      instances_.emplace_back(OneSidedConfig{instance_delta_, 0, 0, split_seed(config_.seed, 1 + x)},
                              meter);
      instance_base_.push_back(next);
      next += instances_.back().budget();
    }
    leftover_width_ = config_.delta;
  } else {
    group_width_ = static_cast<std::uint32_t>(ceil_div(k_, s_));
    const std::uint64_t spread = std::max<std::uint64_t>(ceil_div(2ull * config_.delta, s_),
                                                         std::uint64_t{group_width_} * k_);
    instance_delta_ = static_cast<std::uint32_t>(std::min<std::uint64_t>(config_.delta, spread));
    instances_.reserve(2 * s_);
    for (std::uint32_t x = 0; x < 2 * s_; ++x) {
      instances_.emplace_back(
          OneSidedConfig{instance_delta_, k_, group_width_, split_seed(config_.seed, 1 + x)}, meter);
      instance_base_.push_back(next);
      next += instances_.back().budget();
    }
    cap_ = std::uint64_t{config_.n_vertices} * s_;
    const std::uint64_t max_edges = std::uint64_t{config_.n_vertices} * config_.delta / 2;
    max_flushes_ = ceil_div(max_edges, std::max<std::uint64_t>(cap_, 1)) + 1;
    flush_base_ = next;
    next += static_cast<Color>(max_flushes_ * k_);
    leftover_width_ = k_;
  }
  leftover_base_ = next;
  next += leftover_width_;
  if (config_.policy == BoundPolicy::Divert) {
    overflow_base_ = next;
    next += config_.delta;
  }
  total_colors_ = next;
}

EdgeDispatcher::~EdgeDispatcher() {
  for (std::size_t a = 0; a < kAccountCount; ++a)
    if (held_[a] > 0) meter_->release(static_cast<Account>(a), held_[a]);
}

void EdgeDispatcher::hold(Account account, std::uint64_t words) {
  meter_->charge(account, words);
  held_[static_cast<std::size_t>(account)] += words;
}

void EdgeDispatcher::drop(Account account, std::uint64_t words) {
  meter_->release(account, words);
  held_[static_cast<std::size_t>(account)] -= words;
}

std::uint64_t EdgeDispatcher::words_per_buffered_edge() const {
  // Both endpoints, plus one list entry per endpoint that can own a batch.
  return config_.mode == DispatchMode::Sqrt ? 3 : 4;
}

SpillReport EdgeDispatcher::spill_report() const {
  SpillReport r;
  for (const auto& inst : instances_) r += inst.spill_report();
  return r;
}

bool EdgeDispatcher::would_exceed(VertexId a, VertexId b) const {
  return degree_.at(a) >= config_.delta || degree_.at(b) >= config_.delta;
}

void EdgeDispatcher::check_degree(VertexId online, VertexId offline) {
  if (online >= config_.n_vertices || offline >= config_.n_vertices)
    fail(ErrorCode::InvalidArgument, "vertex id outside [0, " +
                                         std::to_string(config_.n_vertices) + ")");
  for (VertexId v : {online, offline}) {
    if (degree_[v] >= config_.delta)
      fail(ErrorCode::DegreeExceeded, "vertex " + std::to_string(v) + " exceeds delta=" +
                                          std::to_string(config_.delta));
  }
  for (VertexId v : {online, offline})
    if (degree_[v]++ == 0) hold(Account::Buffer, 1);
}

std::uint32_t EdgeDispatcher::alloc_slot(VertexId online, VertexId offline) {
  std::uint32_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
    pool_[slot] = {online, offline};
  } else {
    slot = static_cast<std::uint32_t>(pool_.size());
    pool_.push_back({online, offline});
  }
  ++buffered_;
  hold(Account::Buffer, words_per_buffered_edge());
  return slot;
}

void EdgeDispatcher::free_slot(std::uint32_t slot) {
  pool_[slot] = {kFreeSlot, kFreeSlot};
  free_slots_.push_back(slot);
  --buffered_;
  drop(Account::Buffer, words_per_buffered_edge());
}

void EdgeDispatcher::feed_edge(VertexId online, VertexId offline, Assignments& out) {
  if (finalized_) fail(ErrorCode::InvalidArgument, "dispatcher already finalized");
  check_degree(online, offline);
  if (fallback_) {
    stored_.push_back({online, offline});
    hold(Account::Buffer, 2);
    return;
  }
  const std::uint32_t slot = alloc_slot(online, offline);
  auto& owner = vertices_[online];
  owner.slots.push_back(slot);
  if (config_.mode == DispatchMode::Sqrt) {
    if (owner.slots.size() >= k_) form_batch(online, out);
    return;
  }
  auto& other = vertices_[offline];
  other.slots.push_back(slot);
  if (owner.slots.size() >= k_) heavy_.insert(online);
  if (other.slots.size() >= k_) heavy_.insert(offline);
  if (buffered_ < cap_) return;
  drain_heavy(out);
  if (buffered_ < cap_) return;
  if (flushes_ >= max_flushes_)
    fail(ErrorCode::FlushBudgetExceeded,
         "more than " + std::to_string(max_flushes_) + " buffer flushes requested");
  flush_buffer(flush_base_ + static_cast<Color>(flushes_ * k_), k_, out);
  ++flushes_;
}

std::uint32_t EdgeDispatcher::next_batch_index(VertexId owner) {
  auto& vs = vertices_[owner];
  if (!vs.shift_drawn) {
    const std::uint32_t range = config_.mode == DispatchMode::Sqrt ? k_ : s_;
    vs.shift = static_cast<std::uint32_t>(rng_.below(range));
    vs.shift_drawn = true;
    hold(Account::DispatchShifts, 2);
  }
  return ++vs.batches;
}

void EdgeDispatcher::form_batch(VertexId owner, Assignments& out) {
  auto& vs = vertices_[owner];
  const bool general = config_.mode == DispatchMode::General;
  const bool owner_online = pool_[vs.slots.front()].u == owner;

  std::vector<VertexId> nbrs;
  nbrs.reserve(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    const std::uint32_t slot = vs.slots[i];
    const Edge e = pool_[slot];
    const VertexId partner = e.u == owner ? e.v : e.u;
    nbrs.push_back(partner);
    if (general) {
      auto& ps = vertices_[partner].slots;
      ps.erase(std::find(ps.begin(), ps.end(), slot));
      if (ps.size() < k_) heavy_.erase(partner);
    }
    free_slot(slot);
  }
  vs.slots.erase(vs.slots.begin(), vs.slots.begin() + k_);
  if (general && vs.slots.size() < k_) heavy_.erase(owner);

  const std::uint32_t batch = next_batch_index(owner);
  std::size_t target;
  if (!general) {
    target = sqrt_instance(batch, vs.shift, k_);
  } else {
    target = (owner_online ? 0 : s_) + group_instance(batch, vs.shift, group_width_, s_);
  }

  auto& inst = instances_[target];
  if (inst.would_exceed(nbrs)) {
    ++breaches_;
    if (config_.policy == BoundPolicy::Strict)
      fail(ErrorCode::BoundViolation,
           "sub-instance " + std::to_string(target) + " would exceed its degree bound " +
               std::to_string(inst.config().delta) + " on a batch of vertex " +
               std::to_string(owner));
    for (VertexId p : nbrs) overflow_.push_back(owner_online ? Edge{owner, p} : Edge{p, owner});
    hold(Account::Overflow, 2 * nbrs.size());
    return;
  }
  const Assignments res = general ? inst.on_batch(owner, nbrs) : inst.on_online_vertex(owner, nbrs);
  append_offset(out, res, instance_base_[target]);
}

void EdgeDispatcher::drain_heavy(Assignments& out) {
  while (!heavy_.empty()) form_batch(*heavy_.begin(), out);
}

void EdgeDispatcher::color_oriented(const std::vector<Edge>& edges, Color base,
                                    Assignments& out) {
  if (edges.empty()) return;
  const EdgeColors colors = color_bipartite_exact(OfflineGraph{edges, true}, meter_);
  out.reserve(out.size() + edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    out.push_back({edges[i].u, edges[i].v, base + colors[i]});
}

void EdgeDispatcher::flush_buffer(Color base, Color width, Assignments& out) {
  std::vector<Edge> edges;
  edges.reserve(buffered_);
  for (const Edge& e : pool_)
    if (e.u != kFreeSlot) edges.push_back(e);
  const std::size_t first = out.size();
  color_oriented(edges, base, out);
  for (std::size_t i = first; i < out.size(); ++i)
    if (out[i].color >= base + width)
      fail(ErrorCode::InvalidArgument, "buffer coloring exceeded its block");
  drop(Account::Buffer, words_per_buffered_edge() * buffered_);
  buffered_ = 0;
  pool_.clear();
  free_slots_.clear();
  heavy_.clear();
  for (auto& vs : vertices_) vs.slots.clear();
}

void EdgeDispatcher::finalize(Assignments& out) {
  if (finalized_) return;
  finalized_ = true;
  if (fallback_) {
    color_oriented(stored_, 0, out);
    drop(Account::Buffer, 2 * stored_.size());
    stored_.clear();
    return;
  }
  if (config_.mode == DispatchMode::General) drain_heavy(out);
  flush_buffer(leftover_base_, leftover_width_, out);
  color_oriented(overflow_, overflow_base_, out);
  drop(Account::Overflow, 2 * overflow_.size());
  overflow_.clear();
  for (std::size_t i = 0; i < instances_.size(); ++i)
    append_offset(out, instances_[i].finalize(), instance_base_[i]);
}

}  // namespace streamcolor
