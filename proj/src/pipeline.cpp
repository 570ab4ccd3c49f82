#include "streamcolor/pipeline.hpp"

#include <istream>

#include "streamcolor/error.hpp"
#include "streamcolor/offline_color.hpp"
#include "streamcolor/reductions.hpp"

namespace streamcolor {

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::OneSided: return "one-sided";
    case Preset::VertexGeneral: return "vertex-general";
    case Preset::EdgeSqrt: return "edge-sqrt";
    case Preset::EdgeGeneral: return "edge-general";
    case Preset::OfflineExact: return "offline-exact";
    case Preset::OfflineGreedy: return "offline-greedy";
  }
  return "one-sided";
}

Preset parse_preset(std::string_view text) {
  for (Preset p : all_presets())
    if (to_string(p) == text) return p;
  fail(ErrorCode::InvalidArgument, "unknown preset '" + std::string(text) + "'");
}

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> presets = {Preset::OneSided,    Preset::VertexGeneral,
                                              Preset::EdgeSqrt,    Preset::EdgeGeneral,
                                              Preset::OfflineExact, Preset::OfflineGreedy};
  return presets;
}

ArrivalMode natural_mode(Preset preset) {
  switch (preset) {
    case Preset::OneSided: return ArrivalMode::VertexOneSided;
    case Preset::VertexGeneral: return ArrivalMode::VertexTwoSided;
    default: return ArrivalMode::Edge;
  }
}

bool preset_accepts(Preset preset, const StreamHeader& h) {
  switch (preset) {
    case Preset::OneSided:
      return h.bipartite() &&
             (h.mode == ArrivalMode::VertexOneSided || h.mode == ArrivalMode::Batch);
    case Preset::VertexGeneral:
      return h.mode == ArrivalMode::VertexTwoSided ||
             (h.bipartite() && h.mode == ArrivalMode::VertexOneSided);
    case Preset::EdgeSqrt:
    case Preset::EdgeGeneral:
      return h.mode == ArrivalMode::Edge;
    case Preset::OfflineExact:
    case Preset::OfflineGreedy:
      return true;
  }
  return false;
}

namespace {

[[noreturn]] void wrong_event(const char* preset, const StreamEvent& e) {
  const char* kind = e.kind == EventKind::Edge ? "edge" : e.kind == EventKind::Vertex ? "vertex"
                                                                                      : "batch";
  fail(ErrorCode::ModeMismatch,
       std::string(kind) + " event not accepted by preset " + preset);
}

class OneSidedPipeline final : public Pipeline {
 public:
  OneSidedPipeline(const StreamHeader& h, std::uint64_t seed, SpaceMeter& meter)
      : inst_(OneSidedConfig{h.delta, h.mode == ArrivalMode::Batch ? h.batch_size : 0, 0, seed},
              meter) {}

  void consume(const StreamEvent& e, Assignments& out) override {
    Assignments res;
    if (e.kind == EventKind::Vertex && !inst_.batch_mode())
      res = inst_.on_online_vertex(e.u, e.neighbors);
    else if (e.kind == EventKind::Batch && inst_.batch_mode())
      res = inst_.on_batch(e.u, e.neighbors);
    else
      wrong_event("one-sided", e);
    out.insert(out.end(), res.begin(), res.end());
  }
  void finish(Assignments& out) override { append_offset(out, inst_.finalize(), 0); }
  Color budget() const override { return inst_.budget(); }
  SpillReport spill_report() const override { return inst_.spill_report(); }

 private:
  OneSidedInstance inst_;
};

class SideSplitPipeline final : public Pipeline {
 public:
  SideSplitPipeline(const StreamHeader& h, std::uint64_t seed, SpaceMeter& meter)
      : header_(h), split_(h.delta, seed, meter) {}

  void consume(const StreamEvent& e, Assignments& out) override {
    if (e.kind != EventKind::Vertex) wrong_event("vertex-general", e);
    split_.on_arrival(header_.is_online(e.u) ? Side::V : Side::U, e.u, e.neighbors, out);
  }
  void finish(Assignments& out) override { split_.finalize(out); }
  Color budget() const override { return split_.budget(); }
  SpillReport spill_report() const override { return split_.spill_report(); }

 private:
  StreamHeader header_;
  SideSplit split_;
};

class VertexBipartizationPipeline final : public Pipeline {
 public:
  VertexBipartizationPipeline(const StreamHeader& h, std::uint64_t seed, BoundPolicy policy,
                              SpaceMeter& meter)
      : tree_(BipartizationConfig{h.delta, h.vertex_count(), split_seed(seed, 0), policy}, meter) {
    Color next = 0;
    for (std::uint32_t l = 0; l < tree_.levels(); ++l) {
      levels_.push_back(std::make_unique<SideSplit>(tree_.level_delta(l), split_seed(seed, 1 + l),
                                                    meter));
      bases_.push_back(next);
      next += levels_.back()->budget();
    }
    base_block_ = next;
    budget_ = next + tree_.base_width();
    groups_.resize(tree_.levels());
  }

  void consume(const StreamEvent& e, Assignments& out) override {
    if (e.kind != EventKind::Vertex) wrong_event("vertex-general", e);
    for (auto& g : groups_) g.clear();
    for (VertexId w : e.neighbors) {
      const std::uint32_t l = tree_.route(e.u, w);
      if (l != kBaseStore && tree_.admit(l, e.u, w))
        groups_[l].push_back(w);
      else
        tree_.store_base(e.u, w);
    }
    for (std::uint32_t l = 0; l < tree_.levels(); ++l) {
      if (groups_[l].empty()) continue;
      const std::size_t first = out.size();
      levels_[l]->on_arrival(tree_.bit(e.u, l) ? Side::U : Side::V, e.u, groups_[l], out);
      offset_colors(out, first, bases_[l]);
    }
  }
  void finish(Assignments& out) override {
    for (std::uint32_t l = 0; l < tree_.levels(); ++l) {
      const std::size_t first = out.size();
      levels_[l]->finalize(out);
      offset_colors(out, first, bases_[l]);
    }
    tree_.finalize_base(base_block_, out);
  }
  Color budget() const override { return budget_; }
  SpillReport spill_report() const override {
    SpillReport r;
    for (const auto& l : levels_) r += l->spill_report();
    return r;
  }
  std::uint64_t bound_breaches() const override { return tree_.breaches(); }
  std::vector<std::string> notes() const override {
    return {"bipartization levels: " + std::to_string(tree_.levels())};
  }

 private:
  BipartizationTree tree_;
  std::vector<std::unique_ptr<SideSplit>> levels_;
  std::vector<Color> bases_;
  std::vector<std::vector<VertexId>> groups_;
  Color base_block_ = 0;
  Color budget_ = 0;
};

DispatchConfig dispatch_config(const RunOptions& o, std::uint32_t delta, std::uint32_t n,
                               std::uint64_t seed) {
  DispatchConfig c;
  c.mode = o.preset == Preset::EdgeSqrt ? DispatchMode::Sqrt : DispatchMode::General;
  c.delta = delta;
  c.s = o.s;
  c.n_vertices = n;
  c.seed = seed;
  c.force_stream = o.force_stream;
  c.policy = o.policy;
  return c;
}

void dispatcher_notes(const EdgeDispatcher& d, const std::string& where,
                      std::vector<std::string>& notes) {
  if (d.s_clamped())
    notes.push_back("warning: " + where + "s=" + std::to_string(d.config().s) +
                    " clamped to " + std::to_string(d.s()));
  if (d.fallback())
    notes.push_back(where + "delta=" + std::to_string(d.config().delta) +
                    " is small against log^2 n; storing edges and coloring offline "
                    "(--force-stream disables this)");
}

class EdgeDirectPipeline final : public Pipeline {
 public:
  EdgeDirectPipeline(const StreamHeader& h, const RunOptions& o, std::uint64_t seed,
                     SpaceMeter& meter)
      : header_(h), dispatcher_(dispatch_config(o, h.delta, h.vertex_count(), seed), meter) {}

  void consume(const StreamEvent& e, Assignments& out) override {
    if (e.kind != EventKind::Edge) wrong_event("edge-*", e);
    const VertexId a = e.u, b = e.neighbors.front();
    if (header_.is_online(a))
      dispatcher_.feed_edge(a, b, out);
    else
      dispatcher_.feed_edge(b, a, out);
  }
  void finish(Assignments& out) override { dispatcher_.finalize(out); }
  Color budget() const override { return dispatcher_.budget(); }
  SpillReport spill_report() const override { return dispatcher_.spill_report(); }
  std::uint64_t bound_breaches() const override { return dispatcher_.bound_breaches(); }
  std::vector<std::string> notes() const override {
    std::vector<std::string> n;
    dispatcher_notes(dispatcher_, "", n);
    return n;
  }

 private:
  StreamHeader header_;
  EdgeDispatcher dispatcher_;
};

class EdgeBipartizationPipeline final : public Pipeline {
 public:
  EdgeBipartizationPipeline(const StreamHeader& h, const RunOptions& o, std::uint64_t seed,
                            SpaceMeter& meter)
      : tree_(BipartizationConfig{h.delta, h.vertex_count(), split_seed(seed, 0), o.policy},
              meter) {
    Color next = 0;
    for (std::uint32_t l = 0; l < tree_.levels(); ++l) {
      levels_.push_back(std::make_unique<EdgeDispatcher>(
          dispatch_config(o, tree_.level_delta(l), h.vertex_count(), split_seed(seed, 1 + l)),
          meter));
      bases_.push_back(next);
      next += levels_.back()->budget();
    }
    base_block_ = next;
    budget_ = next + tree_.base_width();
  }

  void consume(const StreamEvent& e, Assignments& out) override {
    if (e.kind != EventKind::Edge) wrong_event("edge-*", e);
    const VertexId a = e.u, b = e.neighbors.front();
    const std::uint32_t l = tree_.route(a, b);
    if (l == kBaseStore || !tree_.admit(l, a, b)) {
      tree_.store_base(a, b);
      return;
    }
    const std::size_t first = out.size();
    if (tree_.bit(a, l))
      levels_[l]->feed_edge(a, b, out);
    else
      levels_[l]->feed_edge(b, a, out);
    offset_colors(out, first, bases_[l]);
  }
  void finish(Assignments& out) override {
    for (std::uint32_t l = 0; l < tree_.levels(); ++l) {
      const std::size_t first = out.size();
      levels_[l]->finalize(out);
      offset_colors(out, first, bases_[l]);
    }
    tree_.finalize_base(base_block_, out);
  }
  Color budget() const override { return budget_; }
  SpillReport spill_report() const override {
    SpillReport r;
    for (const auto& l : levels_) r += l->spill_report();
    return r;
  }
  std::uint64_t bound_breaches() const override {
    std::uint64_t b = tree_.breaches();
    for (const auto& l : levels_) b += l->bound_breaches();
    return b;
  }
  std::vector<std::string> notes() const override {
    std::vector<std::string> n{"bipartization levels: " + std::to_string(tree_.levels())};
    for (std::uint32_t l = 0; l < tree_.levels(); ++l)
      dispatcher_notes(*levels_[l], "level " + std::to_string(l) + ": ", n);
    return n;
  }

 private:
  BipartizationTree tree_;
  std::vector<std::unique_ptr<EdgeDispatcher>> levels_;
  std::vector<Color> bases_;
  Color base_block_ = 0;
  Color budget_ = 0;
};

class OfflinePipeline final : public Pipeline {
 public:
  OfflinePipeline(const StreamHeader& h, bool greedy, SpaceMeter& meter)
      : header_(h), greedy_(greedy), meter_(&meter) {}
  ~OfflinePipeline() override {
    if (!edges_.empty()) meter_->release(Account::Buffer, 2 * edges_.size());
  }

  void consume(const StreamEvent& e, Assignments&) override {
    for (VertexId w : e.neighbors) {
      if (header_.bipartite() && !header_.is_online(e.u))
        edges_.push_back({w, e.u});
      else
        edges_.push_back({e.u, w});
    }
    meter_->charge(Account::Buffer, 2 * e.neighbors.size());
  }
  void finish(Assignments& out) override {
    const OfflineGraph g{edges_, header_.bipartite()};
    const EdgeColors colors = greedy_              ? color_greedy(g, meter_)
                              : header_.bipartite() ? color_bipartite_exact(g, meter_)
                                                    : color_general(g, meter_);
    out.reserve(out.size() + edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i)
      out.push_back({edges_[i].u, edges_[i].v, colors[i]});
    meter_->release(Account::Buffer, 2 * edges_.size());
    edges_.clear();
  }
  Color budget() const override {
    if (greedy_) return 2 * header_.delta - 1;
    return header_.bipartite() ? header_.delta : header_.delta + 1;
  }

 private:
  StreamHeader header_;
  bool greedy_;
  SpaceMeter* meter_;
  std::vector<Edge> edges_;
};

// Distinct colors seen so far (harness memory, not charged).
class ColorTally {
 public:
  void add(Color c) {
    if (c >= seen_.size()) seen_.resize(std::max<std::size_t>(c + 1, 2 * seen_.size()), false);
    if (!seen_[c]) {
      seen_[c] = true;
      ++distinct_;
    }
    if (!max_ || c > *max_) max_ = c;
  }
  std::uint64_t distinct() const { return distinct_; }
  std::optional<Color> max() const { return max_; }

 private:
  std::vector<bool> seen_;
  std::uint64_t distinct_ = 0;
  std::optional<Color> max_;
};

template <typename NextEvent, typename Emit>
RunSummary drive(const StreamHeader& header, const RunOptions& options, NextEvent next,
                 Emit emit, const std::function<void(const Pipeline&)>& on_start) {
  SpaceMeter meter;
  RunSummary summary;
  ColorTally tally;
  {
    auto pipeline = make_pipeline(header, options, meter);
    summary.budget = pipeline->budget();
    summary.notes = pipeline->notes();
    if (on_start) on_start(*pipeline);
    Assignments buf;
    auto flush = [&] {
      for (const auto& a : buf) {
        tally.add(a.color);
        emit(a);
      }
      summary.edges += buf.size();
      buf.clear();
    };
    while (const StreamEvent* ev = next()) {
      pipeline->consume(*ev, buf);
      flush();
      summary.meter_consistent = summary.meter_consistent && meter.consistent();
    }
    pipeline->finish(buf);
    flush();
    summary.spill = pipeline->spill_report();
    summary.bound_breaches = pipeline->bound_breaches();
  }
  summary.meter_consistent = summary.meter_consistent && meter.consistent() && meter.current() == 0;
  summary.colors_used = tally.distinct();
  summary.max_color = tally.max();
  summary.peak_words = meter.peak();
  return summary;
}

}  // namespace

std::unique_ptr<Pipeline> make_pipeline(const StreamHeader& h, const RunOptions& o,
                                        SpaceMeter& meter) {
  if (!preset_accepts(o.preset, h))
    fail(ErrorCode::ModeMismatch, "preset " + std::string(to_string(o.preset)) +
                                      " does not accept " + std::string(to_string(h.mode)) +
                                      (h.bipartite() ? " bipartite" : " general") + " streams");
  const std::uint64_t seed = o.seed.value_or(h.seed);
  switch (o.preset) {
    case Preset::OneSided:
      return std::make_unique<OneSidedPipeline>(h, seed, meter);
    case Preset::VertexGeneral:
      if (h.bipartite()) return std::make_unique<SideSplitPipeline>(h, seed, meter);
      return std::make_unique<VertexBipartizationPipeline>(h, seed, o.policy, meter);
    case Preset::EdgeSqrt:
    case Preset::EdgeGeneral:
      if (h.bipartite()) return std::make_unique<EdgeDirectPipeline>(h, o, seed, meter);
      return std::make_unique<EdgeBipartizationPipeline>(h, o, seed, meter);
    case Preset::OfflineExact:
      return std::make_unique<OfflinePipeline>(h, false, meter);
    case Preset::OfflineGreedy:
      return std::make_unique<OfflinePipeline>(h, true, meter);
  }
  fail(ErrorCode::InvalidArgument, "unknown preset");
}

RunSummary run_stream(std::istream& in, const RunOptions& options, AssignmentWriter& sink,
                      const std::function<void(const Pipeline&)>& on_start) {
  StreamReader reader(in);
  std::optional<StreamEvent> current;
  auto next = [&]() -> const StreamEvent* {
    current = reader.next();
    return current ? &*current : nullptr;
  };
  RunSummary summary = drive(
      reader.header(), options, next, [&](const ColorAssignment& a) { sink.emit(a); }, on_start);
  sink.write_trailer(summary.colors_used, summary.peak_words);
  return summary;
}

RunSummary run_events(const StreamFile& file, const RunOptions& options, Assignments* out) {
  std::size_t i = 0;
  auto next = [&]() -> const StreamEvent* {
    return i < file.events.size() ? &file.events[i++] : nullptr;
  };
  auto emit = [&](const ColorAssignment& a) {
    if (out) out->push_back(a);
  };
  return drive(file.header, options, next, emit, {});
}

}  // namespace streamcolor
