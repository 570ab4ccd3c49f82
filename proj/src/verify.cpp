#include "streamcolor/verify.hpp"

#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace streamcolor {

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace

VerifyReport verify(std::span<const Edge> stream_edges,
                    std::span<const ColorAssignment> assignments, std::optional<Color> budget) {
  VerifyReport r;
  r.edges = stream_edges.size();
  r.assignments = assignments.size();
  r.budget = budget;

  // Stream edge -> times colored.
  std::unordered_map<std::uint64_t, std::uint32_t> hits;
  hits.reserve(stream_edges.size() * 2);
  for (const Edge& e : stream_edges) hits.emplace(edge_key(e.u, e.v), 0);

  std::unordered_map<std::uint64_t, std::size_t> owner;  // (vertex, color) -> assignment
  owner.reserve(assignments.size() * 4);
  std::unordered_set<Color> colors;

  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const ColorAssignment& a = assignments[i];
    colors.insert(a.color);
    if (!r.max_color || a.color > *r.max_color) r.max_color = a.color;

    auto it = hits.find(edge_key(a.u, a.v));
    if (it == hits.end()) {
      r.extraneous.push_back({a.u, a.v});
      continue;
    }
    if (++it->second > 1) {
      r.duplicates.push_back({a.u, a.v});
      continue;
    }
    for (VertexId x : {a.u, a.v}) {
      const std::uint64_t slot = (std::uint64_t{x} << 32) | a.color;
      auto [pos, fresh] = owner.emplace(slot, i);
      if (!fresh) r.conflicts.emplace_back(assignments[pos->second], a);
    }
  }
  for (const Edge& e : stream_edges)
    if (hits.at(edge_key(e.u, e.v)) == 0) r.missing.push_back(e);

  r.colors_used = colors.size();
  r.proper = r.conflicts.empty();
  r.complete = r.missing.empty() && r.duplicates.empty() && r.extraneous.empty();
  if (budget && r.max_color) r.within_budget = *r.max_color < *budget;
  return r;
}

VerifyReport verify(const StreamFile& stream, const OutputFile& output,
                    std::optional<Color> budget) {
  const auto edges = stream_edges(stream);
  return verify(edges, output.assignments, budget);
}

std::string format_report(const VerifyReport& r, std::size_t max_items) {
  std::ostringstream os;
  os << "proper " << (r.proper ? "true" : "false") << '\n'
     << "complete " << (r.complete ? "true" : "false") << '\n'
     << "edges " << r.edges << '\n'
     << "assignments " << r.assignments << '\n'
     << "colors_used " << r.colors_used << '\n';
  if (r.max_color) os << "max_color " << *r.max_color << '\n';
  if (r.budget)
    os << "budget " << *r.budget << (r.within_budget ? " ok" : " exceeded") << '\n';

  auto list = [&](const char* label, const std::vector<Edge>& items) {
    if (items.empty()) return;
    os << label << ' ' << items.size() << '\n';
    for (std::size_t i = 0; i < items.size() && i < max_items; ++i)
      os << "  " << items[i].u << ' ' << items[i].v << '\n';
  };
  list("missing", r.missing);
  list("duplicate", r.duplicates);
  list("extraneous", r.extraneous);
  if (!r.conflicts.empty()) {
    os << "conflicts " << r.conflicts.size() << '\n';
    for (std::size_t i = 0; i < r.conflicts.size() && i < max_items; ++i) {
      const auto& [a, b] = r.conflicts[i];
      os << "  (" << a.u << ' ' << a.v << ") and (" << b.u << ' ' << b.v << ") share color "
         << a.color << '\n';
    }
  }
  return os.str();
}

}  // namespace streamcolor
