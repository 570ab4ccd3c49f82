#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "streamcolor/stream_model.hpp"

namespace streamcolor {

enum class Family {
  RegularBipartite,      // union of delta disjoint perfect matchings
  RandomBipartite,       // delta random attempts per online vertex
  RegularGeneral,        // relabeled circulant, exactly delta-regular
  AdversarialFrontload,  // regular bipartite, each offline vertex's edges bunched early
};

std::string_view to_string(Family family);
Family parse_family(std::string_view text);  // InvalidArgument on unknown names
const std::vector<Family>& all_families();
bool family_bipartite(Family family);

struct GenSpec {
  Family family = Family::RegularBipartite;
  std::uint32_t n = 0;      // vertices per side (bipartite) or in total (general)
  std::uint32_t delta = 1;
  ArrivalMode mode = ArrivalMode::Edge;
  std::uint32_t batch_size = 0;  // batch mode only
  std::uint64_t seed = 0;
};

/// Builds a stream. Deterministic in the spec. Throws InfeasibleSpec when the
/// family cannot be realized (delta = 0, delta > n, one-sided general graph...).
StreamFile generate(const GenSpec& spec);

/// The undirected edge set of the family, before any arrival ordering.
/// Bipartite families return (online, offline) pairs.
std::vector<Edge> generate_edges(const GenSpec& spec);

}  // namespace streamcolor
