#include "streamcolor/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "streamcolor/error.hpp"

namespace streamcolor {

namespace {

constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

class HopcroftKarp {
 public:
  // adj holds dense right ids in [0, right_count), sorted ascending per left.
  HopcroftKarp(std::span<const std::vector<std::uint32_t>> adj, std::uint32_t right_count)
      : adj_(adj),
        mate_left_(adj.size(), kNil),
        mate_right_(right_count, kNil),
        dist_(adj.size()),
        cursor_(adj.size()) {}

  std::size_t run() {
    std::size_t matched = 0;
    while (layer()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      for (std::uint32_t u = 0; u < adj_.size(); ++u)
        if (mate_left_[u] == kNil && augment(u)) ++matched;
    }
    return matched;
  }

  const std::vector<std::uint32_t>& mate_left() const { return mate_left_; }

 private:
  bool layer() {
    std::vector<std::uint32_t> queue;
    queue.reserve(adj_.size());
    for (std::uint32_t u = 0; u < adj_.size(); ++u) {
      if (mate_left_[u] == kNil) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kNil;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t u = queue[head];
      for (std::uint32_t r : adj_[u]) {
        const std::uint32_t w = mate_right_[r];
        if (w == kNil) {
          found = true;
        } else if (dist_[w] == kNil) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool augment(std::uint32_t u) {
    const auto& nbrs = adj_[u];
    for (std::uint32_t& i = cursor_[u]; i < nbrs.size(); ++i) {
      const std::uint32_t r = nbrs[i];
      const std::uint32_t w = mate_right_[r];
      if (w == kNil || (dist_[w] == dist_[u] + 1 && augment(w))) {
        mate_left_[u] = r;
        mate_right_[r] = u;
        ++i;
        return true;
      }
    }
    dist_[u] = kNil;
    return false;
  }

  std::span<const std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> mate_left_;
  std::vector<std::uint32_t> mate_right_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::uint32_t> cursor_;
};

}  // namespace

ColorGraph build_color_graph(std::span<const OfflineState> states, const PaletteParams& params) {
  if (states.size() > params.delta)
    fail(ErrorCode::TooManySlots, std::to_string(states.size()) + " slots exceed delta=" +
                                      std::to_string(params.delta));
  ColorGraph g;
  g.period = params.period;
  g.slots.reserve(states.size());
  for (const auto& s : states) {
    std::array<std::pair<Color, std::uint8_t>, 3> c{};
    for (std::uint8_t j = 0; j < 3; ++j)
      c[j] = {static_cast<Color>((static_cast<std::uint64_t>(s.shifts[j]) + s.deg) % params.period),
              j};
    std::sort(c.begin(), c.end());
    ColorSlot slot;
    for (int j = 0; j < 3; ++j) {
      slot.colors[j] = c[j].first;
      slot.bands[j] = c[j].second;
    }
    g.slots.push_back(slot);
  }
  return g;
}

std::optional<std::vector<std::uint32_t>> left_perfect_matching(
    std::span<const std::vector<std::uint32_t>> adj) {
  if (adj.empty()) return std::vector<std::uint32_t>{};
  std::vector<std::uint32_t> rights;
  for (const auto& nbrs : adj) rights.insert(rights.end(), nbrs.begin(), nbrs.end());
  std::sort(rights.begin(), rights.end());
  rights.erase(std::unique(rights.begin(), rights.end()), rights.end());
  if (rights.size() < adj.size()) return std::nullopt;

  std::vector<std::vector<std::uint32_t>> dense(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) {
    dense[i].reserve(adj[i].size());
    for (std::uint32_t r : adj[i])
      dense[i].push_back(static_cast<std::uint32_t>(
          std::lower_bound(rights.begin(), rights.end(), r) - rights.begin()));
    std::sort(dense[i].begin(), dense[i].end());
    dense[i].erase(std::unique(dense[i].begin(), dense[i].end()), dense[i].end());
  }
  HopcroftKarp hk(dense, static_cast<std::uint32_t>(rights.size()));
  if (hk.run() != adj.size()) return std::nullopt;
  std::vector<std::uint32_t> out(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) out[i] = rights[hk.mate_left()[i]];
  return out;
}

MatchResult perfect_match(const ColorGraph& graph) {
  std::vector<std::vector<std::uint32_t>> adj(graph.slots.size());
  for (std::size_t i = 0; i < graph.slots.size(); ++i)
    adj[i].assign(graph.slots[i].colors.begin(), graph.slots[i].colors.end());
  auto mates = left_perfect_matching(adj);
  if (!mates) return std::nullopt;
  std::vector<SlotChoice> choice(graph.slots.size());
  for (std::size_t i = 0; i < choice.size(); ++i) {
    const auto& slot = graph.slots[i];
    const auto j = std::find(slot.colors.begin(), slot.colors.end(), (*mates)[i]) -
                   slot.colors.begin();
    choice[i] = {slot.colors[j], slot.bands[j]};
  }
  return choice;
}

MatchResult brute_force_match(const ColorGraph& graph) {
  const std::size_t n = graph.slots.size();
  if (n > 12) fail(ErrorCode::InstanceTooLarge, std::to_string(n) + " slots > 12");
  std::vector<SlotChoice> choice(n);
  std::vector<Color> used;
  // Depth-first over slots, each trying its colors in ascending order.
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    const auto& slot = graph.slots[i];
    for (int j = 0; j < 3; ++j) {
      const Color c = slot.colors[j];
      if (std::find(used.begin(), used.end(), c) != used.end()) continue;
      used.push_back(c);
      choice[i] = {c, slot.bands[j]};
      if (self(self, i + 1)) return true;
      used.pop_back();
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return choice;
}

std::vector<std::uint32_t> sample_k_subset(Rng& rng, std::uint32_t range, std::uint32_t k) {
  if (k > range) fail(ErrorCode::InvalidArgument, "k-subset larger than range");
  // Sparse view of the identity permutation: only swapped positions stored.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> swapped;
  auto value_at = [&](std::uint32_t pos) {
    for (const auto& [p, v] : swapped)
      if (p == pos) return v;
    return pos;
  };
  auto set_at = [&](std::uint32_t pos, std::uint32_t val) {
    for (auto& [p, v] : swapped)
      if (p == pos) {
        v = val;
        return;
      }
    swapped.emplace_back(pos, val);
  };
  std::vector<std::uint32_t> out(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::uint32_t>(i + rng.below(range - i));
    const std::uint32_t vj = value_at(j);
    set_at(j, value_at(i));
    out[i] = vj;
  }
  return out;
}

bool kout_trial(std::uint32_t n, std::uint32_t u_size, std::uint32_t k, Rng& rng) {
  if (k < 1 || u_size < k) fail(ErrorCode::InvalidArgument, "kout needs u_size >= k >= 1");
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (auto& nbrs : adj) nbrs = sample_k_subset(rng, u_size, k);
  return left_perfect_matching(adj).has_value();
}

bool is_valid_matching(const ColorGraph& graph, const std::vector<SlotChoice>& choice) {
  if (choice.size() != graph.slots.size()) return false;
  std::vector<Color> seen;
  for (std::size_t i = 0; i < choice.size(); ++i) {
    const auto& slot = graph.slots[i];
    bool ok = false;
    for (int j = 0; j < 3; ++j)
      ok |= slot.colors[j] == choice[i].base && slot.bands[j] == choice[i].band;
    if (!ok) return false;
    seen.push_back(choice[i].base);
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

}  // namespace streamcolor
