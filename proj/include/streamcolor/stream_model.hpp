#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "streamcolor/error.hpp"
#include "streamcolor/types.hpp"

namespace streamcolor {

enum class ArrivalMode { Edge, VertexOneSided, VertexTwoSided, Batch };

std::string_view to_string(ArrivalMode mode);
ArrivalMode parse_mode(std::string_view text);

/// Declared stream parameters. Online ids are [0, n_online); offline ids are
/// [n_online, n_online + n_offline). n_offline == 0 means a general graph.
struct StreamHeader {
  std::uint32_t n_online = 0;
  std::uint32_t n_offline = 0;
  std::uint32_t delta = 1;
  ArrivalMode mode = ArrivalMode::Edge;
  std::uint32_t batch_size = 0;
  std::uint64_t seed = 0;

  std::uint32_t vertex_count() const { return n_online + n_offline; }
  bool bipartite() const { return n_offline > 0; }
  bool is_online(VertexId v) const { return v < n_online; }

  /// Throws MalformedLine when the invariants on delta/batch_size/sizes fail.
  void validate() const;

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

enum class EventKind { Edge, Vertex, Batch };

/// `e u v` is {Edge, u, {v}}; `V u ...` and `B u ...` carry the list.
struct StreamEvent {
  EventKind kind = EventKind::Edge;
  VertexId u = 0;
  std::vector<VertexId> neighbors;

  friend bool operator==(const StreamEvent&, const StreamEvent&) = default;
};

std::string format_header(const StreamHeader& header);
std::string format_event(const StreamEvent& event);

/// Single-pass reader over the line format. The header is consumed by the
/// constructor; events are produced lazily and validated against the header
/// as they are read, so a degree violation surfaces at the violating line.
class StreamReader {
 public:
  explicit StreamReader(std::istream& in);

  const StreamHeader& header() const { return header_; }

  /// Next event, or nullopt at end of input.
  std::optional<StreamEvent> next();

  std::size_t line_number() const { return line_no_; }

 private:
  void check_event(const StreamEvent& event);
  void add_edge(VertexId a, VertexId b);
  [[noreturn]] void error(ErrorCode code, const std::string& what) const;

  std::istream& in_;
  StreamHeader header_;
  std::size_t line_no_ = 0;
  std::vector<std::uint32_t> degree_;
  std::vector<bool> arrived_;
  std::unordered_set<std::uint64_t> edges_;
};

/// Reads a whole stream into memory (tests, verifier, offline baselines).
struct StreamFile {
  StreamHeader header;
  std::vector<StreamEvent> events;
};
StreamFile read_stream(std::istream& in);
std::string write_stream(const StreamFile& file);

/// Flattens events to their edges, in stream order.
std::vector<Edge> stream_edges(const StreamFile& file);

/// Writes `c u v color` lines. Each line is flushed as it is written so the
/// output is truly streamed; writing after close() is an IoFailure.
class AssignmentWriter {
 public:
  explicit AssignmentWriter(std::ostream& out, bool flush_each_line = true);

  void emit(const ColorAssignment& a);
  void emit(const Assignments& batch);
  void write_trailer(std::uint64_t colors_used, std::uint64_t peak_words);
  void close();
  bool closed() const { return closed_; }

 private:
  std::ostream* out_;
  bool flush_each_line_;
  bool closed_ = false;
};

/// Free-function form of AssignmentWriter::emit.
void emit_assignment(const ColorAssignment& a, AssignmentWriter& sink);

/// Parsed output file: assignment lines plus the optional trailer.
struct OutputFile {
  std::vector<ColorAssignment> assignments;
  std::optional<std::uint64_t> colors_used;
  std::optional<std::uint64_t> peak_words;
};
OutputFile read_output(std::istream& in);

}  // namespace streamcolor
