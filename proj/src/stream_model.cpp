#include "streamcolor/stream_model.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace streamcolor {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_uint(std::string_view tok, T& value) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

std::string_view to_string(ArrivalMode mode) {
  switch (mode) {
    case ArrivalMode::Edge: return "edge";
    case ArrivalMode::VertexOneSided: return "vertex-one-sided";
    case ArrivalMode::VertexTwoSided: return "vertex-two-sided";
    case ArrivalMode::Batch: return "batch";
  }
  return "edge";
}

ArrivalMode parse_mode(std::string_view text) {
  if (text == "edge") return ArrivalMode::Edge;
  if (text == "vertex-one-sided") return ArrivalMode::VertexOneSided;
  if (text == "vertex-two-sided") return ArrivalMode::VertexTwoSided;
  if (text == "batch") return ArrivalMode::Batch;
  fail(ErrorCode::MalformedLine, "unknown arrival mode '" + std::string(text) + "'");
}

void StreamHeader::validate() const {
  if (delta < 1) fail(ErrorCode::MalformedLine, "delta must be >= 1");
  if (mode == ArrivalMode::Batch) {
    if (batch_size < 1 || batch_size > delta)
      fail(ErrorCode::MalformedLine, "batch mode needs 1 <= batch_size <= delta");
  } else if (batch_size != 0) {
    fail(ErrorCode::MalformedLine, "batch_size must be 0 unless mode=batch");
  }
  if ((mode == ArrivalMode::VertexOneSided || mode == ArrivalMode::Batch) && n_offline == 0)
    fail(ErrorCode::MalformedLine, "one-sided modes need offline vertices");
  if (static_cast<std::uint64_t>(n_online) + n_offline > 0xffffffffULL)
    fail(ErrorCode::MalformedLine, "too many vertices");
}

std::string format_header(const StreamHeader& h) {
  std::ostringstream os;
  os << "H " << h.n_online << ' ' << h.n_offline << ' ' << h.delta << ' ' << to_string(h.mode)
     << ' ' << h.batch_size << ' ' << h.seed;
  return os.str();
}

std::string format_event(const StreamEvent& e) {
  std::string out;
  out.reserve(8 + 8 * e.neighbors.size());
  out += e.kind == EventKind::Edge ? 'e' : e.kind == EventKind::Vertex ? 'V' : 'B';
  out += ' ';
  out += std::to_string(e.u);
  for (VertexId v : e.neighbors) {
    out += ' ';
    out += std::to_string(v);
  }
  return out;
}

StreamReader::StreamReader(std::istream& in) : in_(in) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (blank(line)) continue;
    auto tok = split_ws(line);
    if (tok.size() != 7 || tok[0] != "H") error(ErrorCode::MalformedLine, "expected header line");
    if (!parse_uint(tok[1], header_.n_online) || !parse_uint(tok[2], header_.n_offline) ||
        !parse_uint(tok[3], header_.delta) || !parse_uint(tok[5], header_.batch_size) ||
        !parse_uint(tok[6], header_.seed))
      error(ErrorCode::MalformedLine, "bad number in header");
    try {
      header_.mode = parse_mode(tok[4]);
      header_.validate();
    } catch (const Error& e) {
      error(e.code(), e.detail());
    }
    degree_.assign(header_.vertex_count(), 0);
    if (header_.mode == ArrivalMode::VertexOneSided || header_.mode == ArrivalMode::VertexTwoSided)
      arrived_.assign(header_.vertex_count(), false);
    return;
  }
  error(ErrorCode::MalformedLine, "missing header");
}

void StreamReader::error(ErrorCode code, const std::string& what) const {
  fail(code, "line " + std::to_string(line_no_) + ": " + what);
}

std::optional<StreamEvent> StreamReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (blank(line)) continue;
    auto tok = split_ws(line);
    StreamEvent ev;
    if (tok[0] == "e") {
      ev.kind = EventKind::Edge;
      if (tok.size() != 3) error(ErrorCode::MalformedLine, "edge line needs 2 ids");
    } else if (tok[0] == "V") {
      ev.kind = EventKind::Vertex;
      if (tok.size() < 2) error(ErrorCode::MalformedLine, "vertex line needs an id");
    } else if (tok[0] == "B") {
      ev.kind = EventKind::Batch;
      if (tok.size() < 2) error(ErrorCode::MalformedLine, "batch line needs an id");
    } else {
      error(ErrorCode::MalformedLine, "unknown record '" + std::string(tok[0]) + "'");
    }
    if (!parse_uint(tok[1], ev.u)) error(ErrorCode::MalformedLine, "bad vertex id");
    ev.neighbors.resize(tok.size() - 2);
    for (std::size_t i = 2; i < tok.size(); ++i)
      if (!parse_uint(tok[i], ev.neighbors[i - 2])) error(ErrorCode::MalformedLine, "bad vertex id");
    check_event(ev);
    return ev;
  }
  return std::nullopt;
}

void StreamReader::check_event(const StreamEvent& ev) {
  const auto& h = header_;
  const bool kind_ok = (h.mode == ArrivalMode::Edge && ev.kind == EventKind::Edge) ||
                       (h.mode == ArrivalMode::Batch && ev.kind == EventKind::Batch) ||
                       ((h.mode == ArrivalMode::VertexOneSided ||
                         h.mode == ArrivalMode::VertexTwoSided) &&
                        ev.kind == EventKind::Vertex);
  if (!kind_ok)
    error(ErrorCode::ModeMismatch, "event kind illegal in " + std::string(to_string(h.mode)) +
                                       " stream");
  const std::uint32_t n = h.vertex_count();
  if (ev.u >= n) error(ErrorCode::MalformedLine, "vertex id out of range");
  for (VertexId v : ev.neighbors)
    if (v >= n) error(ErrorCode::MalformedLine, "vertex id out of range");

  if (ev.kind == EventKind::Batch && ev.neighbors.size() != h.batch_size)
    error(ErrorCode::BatchSizeMismatch, "batch must contain exactly " +
                                            std::to_string(h.batch_size) + " edges");

  if (h.mode == ArrivalMode::VertexOneSided || h.mode == ArrivalMode::Batch) {
    if (!h.is_online(ev.u)) error(ErrorCode::ModeMismatch, "arriving vertex must be online");
    for (VertexId v : ev.neighbors)
      if (h.is_online(v)) error(ErrorCode::ModeMismatch, "neighbor must be offline");
  }
  if (h.mode == ArrivalMode::VertexOneSided || h.mode == ArrivalMode::VertexTwoSided) {
    if (arrived_[ev.u]) error(ErrorCode::ModeMismatch, "vertex arrives twice");
    if (h.mode == ArrivalMode::VertexTwoSided)
      for (VertexId v : ev.neighbors)
        if (!arrived_[v] && v != ev.u)
          error(ErrorCode::ModeMismatch, "neighbor has not arrived yet");
  }

  for (std::size_t i = 0; i < ev.neighbors.size(); ++i) add_edge(ev.u, ev.neighbors[i]);
  if (!arrived_.empty()) arrived_[ev.u] = true;
}

void StreamReader::add_edge(VertexId a, VertexId b) {
  if (a == b) error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(a));
  if (header_.bipartite() && header_.is_online(a) == header_.is_online(b))
    error(ErrorCode::ModeMismatch, "edge does not cross the bipartition");
  if (!edges_.insert(edge_key(a, b)).second)
    error(ErrorCode::DuplicateEdge,
          "duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
  if (++degree_[a] > header_.delta || ++degree_[b] > header_.delta)
    error(ErrorCode::DegreeExceeded, "degree exceeds delta=" + std::to_string(header_.delta));
}

StreamFile read_stream(std::istream& in) {
  StreamReader reader(in);
  StreamFile file{reader.header(), {}};
  while (auto ev = reader.next()) file.events.push_back(std::move(*ev));
  return file;
}

std::string write_stream(const StreamFile& file) {
  std::string out = format_header(file.header);
  out += '\n';
  for (const auto& ev : file.events) {
    out += format_event(ev);
    out += '\n';
  }
  return out;
}

std::vector<Edge> stream_edges(const StreamFile& file) {
  std::vector<Edge> edges;
  for (const auto& ev : file.events)
    for (VertexId v : ev.neighbors) edges.push_back({ev.u, v});
  return edges;
}

AssignmentWriter::AssignmentWriter(std::ostream& out, bool flush_each_line)
    : out_(&out), flush_each_line_(flush_each_line) {}

void AssignmentWriter::emit(const ColorAssignment& a) {
  if (closed_) fail(ErrorCode::IoFailure, "emit on a closed sink");
  char buf[64];
  char* p = buf;
  *p++ = 'c';
  for (std::uint32_t x : {a.u, a.v, a.color}) {
    *p++ = ' ';
    p = std::to_chars(p, buf + sizeof buf, x).ptr;
  }
  *p++ = '\n';
  out_->write(buf, p - buf);
  if (flush_each_line_) out_->flush();
  if (!*out_) fail(ErrorCode::IoFailure, "write failed");
}

void AssignmentWriter::emit(const Assignments& batch) {
  for (const auto& a : batch) emit(a);
}

void AssignmentWriter::write_trailer(std::uint64_t colors_used, std::uint64_t peak_words) {
  if (closed_) fail(ErrorCode::IoFailure, "trailer on a closed sink");
  *out_ << "T " << colors_used << ' ' << peak_words << '\n';
  out_->flush();
  if (!*out_) fail(ErrorCode::IoFailure, "write failed");
}

void AssignmentWriter::close() {
  if (!closed_) out_->flush();
  closed_ = true;
}

void emit_assignment(const ColorAssignment& a, AssignmentWriter& sink) { sink.emit(a); }

OutputFile read_output(std::istream& in) {
  OutputFile out;
  std::string line;
  std::size_t line_no = 0;
  auto bad = [&](const std::string& what) {
    fail(ErrorCode::ParseError, "output line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto tok = split_ws(line);
    if (tok[0] == "c") {
      if (tok.size() != 4) bad("assignment needs 3 numbers");
      ColorAssignment a;
      if (!parse_uint(tok[1], a.u) || !parse_uint(tok[2], a.v) || !parse_uint(tok[3], a.color))
        bad("bad number");
      if (out.colors_used) bad("assignment after trailer");
      out.assignments.push_back(a);
    } else if (tok[0] == "T") {
      std::uint64_t used = 0, peak = 0;
      if (tok.size() != 3 || !parse_uint(tok[1], used) || !parse_uint(tok[2], peak))
        bad("bad trailer");
      out.colors_used = used;
      out.peak_words = peak;
    } else {
      bad("unknown record");
    }
  }
  return out;
}

}  // namespace streamcolor
