#include "streamcolor/generate.hpp"

#include <algorithm>
#include <numeric>

#include "streamcolor/error.hpp"
#include "streamcolor/rng.hpp"

namespace streamcolor {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::RegularBipartite: return "regular-bipartite";
    case Family::RandomBipartite: return "random-bipartite";
    case Family::RegularGeneral: return "regular-general";
    case Family::AdversarialFrontload: return "adversarial-frontload";
  }
  return "regular-bipartite";
}

Family parse_family(std::string_view text) {
  for (Family f : all_families())
    if (to_string(f) == text) return f;
  fail(ErrorCode::InvalidArgument, "unknown family '" + std::string(text) + "'");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> families = {Family::RegularBipartite, Family::RandomBipartite,
                                               Family::RegularGeneral,
                                               Family::AdversarialFrontload};
  return families;
}

bool family_bipartite(Family family) { return family != Family::RegularGeneral; }

namespace {

std::vector<VertexId> permutation(std::uint32_t n, Rng& rng) {
  std::vector<VertexId> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(std::span<VertexId>(p));
  return p;
}

void check_spec(const GenSpec& spec) {
  if (spec.delta == 0) fail(ErrorCode::InfeasibleSpec, "delta must be at least 1");
  if (spec.n == 0) fail(ErrorCode::InfeasibleSpec, "n must be at least 1");
  const bool bip = family_bipartite(spec.family);
  if (bip && spec.delta > spec.n)
    fail(ErrorCode::InfeasibleSpec, "delta exceeds the side size n");
  if (!bip) {
    if (spec.n < 3 || spec.delta > spec.n - 1)
      fail(ErrorCode::InfeasibleSpec, "regular-general needs n >= 3 and delta <= n - 1");
    if (spec.n % 2 == 1 && spec.delta % 2 == 1)
      fail(ErrorCode::InfeasibleSpec, "no delta-regular graph with n and delta both odd");
    if (spec.mode != ArrivalMode::Edge && spec.mode != ArrivalMode::VertexTwoSided)
      fail(ErrorCode::InfeasibleSpec, "general graphs need edge or vertex-two-sided arrivals");
  }
  if (spec.mode == ArrivalMode::Batch) {
    if (spec.batch_size == 0 || spec.batch_size > spec.delta)
      fail(ErrorCode::InfeasibleSpec, "batch mode needs 1 <= batch <= delta");
  } else if (spec.batch_size != 0) {
    fail(ErrorCode::InfeasibleSpec, "batch size given for a non-batch mode");
  }
}

// Circulant matchings between random relabelings of the two sides.
std::vector<Edge> regular_bipartite(const GenSpec& spec, Rng& rng) {
  const std::uint32_t n = spec.n;
  const auto left = permutation(n, rng);
  const auto right = permutation(n, rng);
  auto offsets = permutation(n, rng);
  offsets.resize(spec.delta);
  std::vector<Edge> edges;
  edges.reserve(std::size_t{n} * spec.delta);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t o : offsets) edges.push_back({left[i], n + right[(i + o) % n]});
  return edges;
}

std::vector<Edge> random_bipartite(const GenSpec& spec, Rng& rng) {
  const std::uint32_t n = spec.n;
  std::vector<std::uint32_t> off_deg(n, 0);
  std::vector<Edge> edges;
  std::vector<VertexId> mine;
  for (VertexId u = 0; u < n; ++u) {
    mine.clear();
    for (std::uint32_t t = 0; t < spec.delta; ++t) {
      const auto v = static_cast<VertexId>(rng.below(n));
      if (off_deg[v] >= spec.delta) continue;
      if (std::find(mine.begin(), mine.end(), v) != mine.end()) continue;
      mine.push_back(v);
      ++off_deg[v];
      edges.push_back({u, n + v});
    }
  }
  return edges;
}

// Circulant graph on a random relabeling: ceil(delta/2) distinct offsets from
// [1, (n-1)/2], plus offset n/2 (a perfect matching) when delta is odd.
std::vector<Edge> regular_general(const GenSpec& spec, Rng& rng) {
  const std::uint32_t n = spec.n;
  const auto label = permutation(n, rng);
  auto offsets = permutation((n - 1) / 2, rng);
  offsets.resize(spec.delta / 2);
  std::vector<Edge> edges;
  edges.reserve(std::size_t{n} * spec.delta / 2);
  for (std::uint32_t o : offsets)
    for (std::uint32_t i = 0; i < n; ++i) edges.push_back({label[i], label[(i + o + 1) % n]});
  if (spec.delta % 2 == 1)
    for (std::uint32_t i = 0; i < n / 2; ++i) edges.push_back({label[i], label[i + n / 2]});
  rng.shuffle(std::span<Edge>(edges));
  return edges;
}

StreamEvent make_event(EventKind kind, VertexId u, std::vector<VertexId> nbrs) {
  return StreamEvent{kind, u, std::move(nbrs)};
}

// Adjacency lists in edge order; bipartite edges are (online, offline).
std::vector<std::vector<VertexId>> adjacency(const std::vector<Edge>& edges, std::uint32_t count) {
  std::vector<std::vector<VertexId>> adj(count);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

}  // namespace

std::vector<Edge> generate_edges(const GenSpec& spec) {
  check_spec(spec);
  Rng rng(split_seed(spec.seed, 1));
  switch (spec.family) {
    case Family::RegularBipartite:
    case Family::AdversarialFrontload:
      return regular_bipartite(spec, rng);
    case Family::RandomBipartite:
      return random_bipartite(spec, rng);
    case Family::RegularGeneral:
      return regular_general(spec, rng);
  }
  return {};
}

StreamFile generate(const GenSpec& spec) {
  std::vector<Edge> edges = generate_edges(spec);
  const bool bip = family_bipartite(spec.family);
  const bool adversarial = spec.family == Family::AdversarialFrontload;
  const std::uint32_t n = spec.n;
  const std::uint32_t count = bip ? 2 * n : n;
  Rng rng(split_seed(spec.seed, 2));

  StreamFile file;
  file.header = StreamHeader{n, bip ? n : 0, spec.delta, spec.mode, spec.batch_size, spec.seed};
  auto& events = file.events;

  // Within each list, neighbors appear in random order.
  auto adj = adjacency(edges, count);
  for (auto& list : adj) rng.shuffle(std::span<VertexId>(list));

  switch (spec.mode) {
    case ArrivalMode::Edge: {
      if (adversarial) {
        // Offline vertices in id order, each with all of its edges at once.
        for (VertexId v = n; v < 2 * n; ++v)
          for (VertexId u : adj[v]) events.push_back(make_event(EventKind::Edge, u, {v}));
      } else {
        rng.shuffle(std::span<Edge>(edges));
        for (const Edge& e : edges) events.push_back(make_event(EventKind::Edge, e.u, {e.v}));
      }
      break;
    }
    case ArrivalMode::VertexOneSided: {
      auto order = permutation(n, rng);
      if (adversarial) {
        // Online vertices sorted by their smallest offline neighbor.
        std::vector<VertexId> key_of(n, 2 * n);
        for (VertexId u = 0; u < n; ++u)
          for (VertexId v : adj[u]) key_of[u] = std::min(key_of[u], v);
        std::stable_sort(order.begin(), order.end(),
                         [&](VertexId a, VertexId b) { return key_of[a] < key_of[b]; });
      }
      for (VertexId u : order) events.push_back(make_event(EventKind::Vertex, u, adj[u]));
      break;
    }
    case ArrivalMode::VertexTwoSided: {
      std::vector<VertexId> order;
      if (adversarial) {
        // Offline v, then every neighbor of v that has not arrived yet.
        std::vector<bool> placed(count, false);
        for (VertexId v = n; v < 2 * n; ++v) {
          if (!placed[v]) {
            placed[v] = true;
            order.push_back(v);
          }
          for (VertexId u : adj[v])
            if (!placed[u]) {
              placed[u] = true;
              order.push_back(u);
            }
        }
        for (VertexId u = 0; u < count; ++u)
          if (!placed[u]) order.push_back(u);
      } else {
        order = permutation(count, rng);
      }
      std::vector<bool> arrived(count, false);
      for (VertexId u : order) {
        std::vector<VertexId> earlier;
        for (VertexId w : adj[u])
          if (arrived[w]) earlier.push_back(w);
        arrived[u] = true;
        events.push_back(make_event(EventKind::Vertex, u, std::move(earlier)));
      }
      break;
    }
    case ArrivalMode::Batch: {
      const std::uint32_t k = spec.batch_size;
      std::vector<StreamEvent> batches;
      for (VertexId u = 0; u < n; ++u) {
        const auto& list = adj[u];
        // A trailing partial batch is dropped: batches hold exactly k edges.
        for (std::size_t i = 0; i + k <= list.size(); i += k)
          batches.push_back(make_event(EventKind::Batch, u, {list.begin() + i, list.begin() + i + k}));
      }
      if (adversarial) {
        auto min_of = [](const StreamEvent& e) {
          return *std::min_element(e.neighbors.begin(), e.neighbors.end());
        };
        std::stable_sort(batches.begin(), batches.end(),
                         [&](const StreamEvent& a, const StreamEvent& b) {
                           return min_of(a) < min_of(b);
                         });
      } else {
        rng.shuffle(std::span<StreamEvent>(batches));
      }
      events = std::move(batches);
      break;
    }
  }
  return file;
}

}  // namespace streamcolor
