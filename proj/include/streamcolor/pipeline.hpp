#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamcolor/dispatch.hpp"
#include "streamcolor/one_sided.hpp"
#include "streamcolor/space_meter.hpp"
#include "streamcolor/stream_model.hpp"

namespace streamcolor {

enum class Preset {
  OneSided,       // vertex-one-sided or batch streams
  VertexGeneral,  // two-sided vertex arrivals, bipartite or general
  EdgeSqrt,       // edge arrivals, s = ceil(sqrt(delta))
  EdgeGeneral,    // edge arrivals, chosen s
  OfflineExact,   // store everything, optimal bipartite / Vizing coloring
  OfflineGreedy,  // store everything, greedy 2Δ-1 coloring
};

std::string_view to_string(Preset preset);
Preset parse_preset(std::string_view text);  // InvalidArgument on unknown names
const std::vector<Preset>& all_presets();

/// Arrival mode a generator should produce to feed this preset.
ArrivalMode natural_mode(Preset preset);
bool preset_accepts(Preset preset, const StreamHeader& header);

struct RunOptions {
  Preset preset = Preset::OneSided;
  std::uint32_t s = 1;
  bool force_stream = false;
  BoundPolicy policy = BoundPolicy::Strict;
  std::optional<std::uint64_t> seed;  // overrides the header seed
};

/// A composed streaming algorithm. consume() may emit colors immediately;
/// finish() emits whatever was held back.
class Pipeline {
 public:
  virtual ~Pipeline() = default;
  virtual void consume(const StreamEvent& event, Assignments& out) = 0;
  virtual void finish(Assignments& out) = 0;
  /// Declared palette size: every emitted color is below this.
  virtual Color budget() const = 0;
  virtual SpillReport spill_report() const { return {}; }
  virtual std::uint64_t bound_breaches() const { return 0; }
  /// Human-readable remarks (clamped parameters, fallback paths).
  virtual std::vector<std::string> notes() const { return {}; }
};

/// Throws ModeMismatch when the preset cannot consume this stream.
std::unique_ptr<Pipeline> make_pipeline(const StreamHeader& header, const RunOptions& options,
                                        SpaceMeter& meter);

struct RunSummary {
  std::uint64_t edges = 0;
  std::uint64_t colors_used = 0;  // distinct colors emitted
  std::optional<Color> max_color;
  Color budget = 0;
  std::uint64_t peak_words = 0;
  SpillReport spill;
  std::uint64_t bound_breaches = 0;
  bool meter_consistent = true;
  std::vector<std::string> notes;
};

/// Reads a stream, writes `c` lines as they are produced and the trailer.
/// `on_start` sees the pipeline before the first event (budget, notes).
RunSummary run_stream(std::istream& in, const RunOptions& options, AssignmentWriter& sink,
                      const std::function<void(const Pipeline&)>& on_start = {});

/// Runs an in-memory stream (assumed valid); assignments go to `out` if given.
RunSummary run_events(const StreamFile& file, const RunOptions& options,
                      Assignments* out = nullptr);

}  // namespace streamcolor
