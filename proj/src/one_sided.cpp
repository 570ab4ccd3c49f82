#include "streamcolor/one_sided.hpp"

#include <algorithm>

#include "streamcolor/error.hpp"
#include "streamcolor/matching.hpp"
#include "streamcolor/offline_color.hpp"

namespace streamcolor {

OneSidedInstance::OneSidedInstance(const OneSidedConfig& config, SpaceMeter& meter)
    : config_(config),
      params_(PaletteParams::for_degree(config.delta)),
      meter_(&meter),
      rng_(config.seed) {
  if (config_.batch_size > 0) {
    if (config_.batch_size > config_.delta)
      fail(ErrorCode::InvalidArgument, "batch size exceeds delta");
    max_batches_ = config_.max_batches > 0
                       ? config_.max_batches
                       : (config_.delta + config_.batch_size - 1) / config_.batch_size;
  }
}

OneSidedInstance::OneSidedInstance(OneSidedInstance&& o) noexcept
    : config_(o.config_),
      params_(o.params_),
      max_batches_(o.max_batches_),
      meter_(o.meter_),
      rng_(std::move(o.rng_)),
      states_(std::move(o.states_)),
      batches_seen_(std::move(o.batches_seen_)),
      spill_(std::move(o.spill_)),
      report_(o.report_),
      finalized_(o.finalized_) {
  o.meter_ = nullptr;
}

OneSidedInstance::~OneSidedInstance() {
  if (!meter_) return;
  meter_->release(Account::OfflineStates, kOfflineStateWords * states_.size());
  meter_->release(Account::BatchCounters, batches_seen_.size());
  meter_->release(Account::Spill, 2 * spill_.size());
}

Color OneSidedInstance::streaming_colors() const {
  // Δ = 1: every vertex has a single edge, color 0 suffices.
  if (config_.delta == 1) return batch_mode() ? max_batches_ : 1;
  return batch_mode() ? max_batches_ * params_.band_span() : params_.band_span();
}

OfflineState& OneSidedInstance::state_of(VertexId v) {
  auto it = states_.find(v);
  if (it != states_.end()) return it->second;
  meter_->charge(Account::OfflineStates, kOfflineStateWords);
  OfflineState s;
  if (config_.delta > 1) s = draw_offline_state(rng_, params_);
  return states_.emplace(v, s).first->second;
}

std::uint32_t OneSidedInstance::offline_degree(VertexId v) const {
  auto it = states_.find(v);
  return it == states_.end() ? 0 : it->second.deg;
}

void OneSidedInstance::preset_state(VertexId v, const OfflineState& state) {
  if (states_.count(v)) fail(ErrorCode::InvalidArgument, "offline vertex already has a state");
  const auto& r = state.shifts;
  if (r[0] == r[1] || r[0] == r[2] || r[1] == r[2] ||
      std::any_of(r.begin(), r.end(), [&](std::uint32_t x) { return x >= params_.period; }))
    fail(ErrorCode::InvalidArgument, "shifts must be distinct and below the period");
  if (state.deg > config_.delta) fail(ErrorCode::DegreeExceeded, "preset degree exceeds delta");
  meter_->charge(Account::OfflineStates, kOfflineStateWords);
  states_.emplace(v, state);
}

bool OneSidedInstance::would_exceed(std::span<const VertexId> offline) const {
  if (offline.size() > config_.delta) return true;
  return std::any_of(offline.begin(), offline.end(),
                     [&](VertexId v) { return offline_degree(v) >= config_.delta; });
}

void OneSidedInstance::check_degrees(std::span<const VertexId> neighbors) const {
  if (finalized_) fail(ErrorCode::InvalidArgument, "instance already finalized");
  if (neighbors.size() > config_.delta)
    fail(ErrorCode::DegreeExceeded, "online degree " + std::to_string(neighbors.size()) +
                                        " exceeds delta=" + std::to_string(config_.delta));
  for (VertexId v : neighbors)
    if (offline_degree(v) >= config_.delta)
      fail(ErrorCode::DegreeExceeded, "offline vertex " + std::to_string(v) +
                                          " exceeds delta=" + std::to_string(config_.delta));
}

Assignments OneSidedInstance::color_edges(VertexId u, std::span<const VertexId> neighbors,
                                          Color block_base) {
  Assignments out;
  if (neighbors.empty()) return out;

  if (config_.delta == 1) {
    // Single edge per vertex.
    for (VertexId v : neighbors) {
      ++state_of(v).deg;
      out.push_back({u, v, block_base});
    }
    return out;
  }

  std::vector<OfflineState> states;
  states.reserve(neighbors.size());
  for (VertexId v : neighbors) states.push_back(state_of(v));

  const ColorGraph graph = build_color_graph(states, params_);
  std::uint64_t distinct = 0;
  {
    std::vector<Color> cs;
    for (const auto& s : graph.slots) cs.insert(cs.end(), s.colors.begin(), s.colors.end());
    std::sort(cs.begin(), cs.end());
    distinct = std::unique(cs.begin(), cs.end()) - cs.begin();
  }
  // Adjacency (3/slot), slot mate, BFS layer, per-color mate; released when
  // this arrival is done.
  ScopedCharge transient(*meter_, Account::ColorGraph, 5 * graph.slots.size() + distinct);
  const MatchResult match = perfect_match(graph);

  if (match) {
    out.reserve(neighbors.size());
    for (std::size_t i = 0; i < neighbors.size(); ++i)
      out.push_back({u, neighbors[i], block_base + (*match)[i].flat(params_.period)});
  } else {
    meter_->charge(Account::Spill, 2 * neighbors.size());
    for (VertexId v : neighbors) spill_.push_back({u, v});
    ++report_.spilled_vertices;
    report_.spilled_edges += neighbors.size();
  }
  for (VertexId v : neighbors) ++states_.at(v).deg;
  return out;
}

Assignments OneSidedInstance::on_online_vertex(VertexId u, std::span<const VertexId> neighbors) {
  if (batch_mode()) fail(ErrorCode::ModeMismatch, "vertex arrival on a batch-mode instance");
  check_degrees(neighbors);
  return color_edges(u, neighbors, 0);
}

Assignments OneSidedInstance::on_batch(VertexId u, std::span<const VertexId> neighbors) {
  if (!batch_mode()) fail(ErrorCode::ModeMismatch, "batch arrival on a vertex-mode instance");
  if (neighbors.size() != config_.batch_size)
    fail(ErrorCode::BatchSizeMismatch, "batch of " + std::to_string(neighbors.size()) +
                                           " edges, expected " +
                                           std::to_string(config_.batch_size));
  auto it = batches_seen_.find(u);
  const std::uint32_t seen = it == batches_seen_.end() ? 0 : it->second;
  if (seen >= max_batches_)
    fail(ErrorCode::TooManyBatches, "vertex " + std::to_string(u) + " exceeds " +
                                        std::to_string(max_batches_) + " batches");
  check_degrees(neighbors);
  if (it == batches_seen_.end()) {
    meter_->charge(Account::BatchCounters, 1);
    it = batches_seen_.emplace(u, 0).first;
  }
  const std::uint32_t batch_index = it->second++;
  // Flat color = (batch, base) in mixed radix with widths (max_batches, 3P).
  const Color width = config_.delta == 1 ? 1 : params_.band_span();
  return color_edges(u, neighbors, batch_index * width);
}

Assignments OneSidedInstance::finalize() {
  Assignments out;
  if (finalized_) return out;
  finalized_ = true;
  meter_->release(Account::OfflineStates, kOfflineStateWords * states_.size());
  states_.clear();
  meter_->release(Account::BatchCounters, batches_seen_.size());
  batches_seen_.clear();
  if (spill_.empty()) return out;

  OfflineGraph g{spill_, true};
  const EdgeColors colors = color_bipartite_exact(g, meter_);
  const Color base = streaming_colors();
  out.reserve(spill_.size());
  for (std::size_t i = 0; i < spill_.size(); ++i)
    out.push_back({spill_[i].u, spill_[i].v, base + colors[i]});
  meter_->release(Account::Spill, 2 * spill_.size());
  spill_.clear();
  spill_.shrink_to_fit();
  return out;
}

}  // namespace streamcolor
