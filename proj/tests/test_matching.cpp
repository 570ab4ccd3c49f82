#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "streamcolor/error.hpp"
#include "streamcolor/matching.hpp"

using namespace streamcolor;

namespace {

ColorGraph same_slots(std::size_t count, std::array<std::uint32_t, 3> shifts) {
  const auto params = PaletteParams::for_degree(10);
  std::vector<OfflineState> states(count, OfflineState{shifts, 0});
  return build_color_graph(states, params);
}

// Random graph: each slot takes a random 3-subset of a small color range.
ColorGraph random_graph(Rng& rng, std::size_t slots, std::uint32_t range) {
  ColorGraph g;
  g.period = range;
  for (std::size_t i = 0; i < slots; ++i) {
    auto pick = sample_k_subset(rng, range, 3);
    std::array<std::pair<Color, std::uint8_t>, 3> c{};
    for (std::uint8_t j = 0; j < 3; ++j) c[j] = {pick[j], j};
    std::sort(c.begin(), c.end());
    ColorSlot s;
    for (int j = 0; j < 3; ++j) {
      s.colors[j] = c[j].first;
      s.bands[j] = c[j].second;
    }
    g.slots.push_back(s);
  }
  return g;
}

}  // namespace

TEST_SUITE("matching") {
  TEST_CASE("color graph drops the band offsets") {
    const auto params = PaletteParams::for_degree(10);
    const std::vector<OfflineState> one{{{5, 11, 20}, 3}};
    const auto g = build_color_graph(one, params);
    REQUIRE(g.slots.size() == 1);
    CHECK(g.slots[0].colors == std::array<Color, 3>{8, 14, 23});
    CHECK(g.slots[0].bands == std::array<std::uint8_t, 3>{0, 1, 2});
    CHECK(build_color_graph({}, params).slots.empty());

    const auto three = same_slots(3, {3, 7, 9});
    for (const auto& s : three.slots) CHECK(s.colors == std::array<Color, 3>{3, 7, 9});
  }

  TEST_CASE("bands stay attached to their colors after sorting") {
    const auto params = PaletteParams::for_degree(10);
    const std::vector<OfflineState> one{{{20, 5, 11}, 0}};
    const auto g = build_color_graph(one, params);
    CHECK(g.slots[0].colors == std::array<Color, 3>{5, 11, 20});
    CHECK(g.slots[0].bands == std::array<std::uint8_t, 3>{1, 2, 0});
  }

  TEST_CASE("more slots than delta") {
    const auto params = PaletteParams::for_degree(2);
    std::vector<OfflineState> states(3, OfflineState{{0, 1, 2}, 0});
    try {
      build_color_graph(states, params);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooManySlots);
    }
  }

  TEST_CASE("three identical slots over three colors") {
    const auto g = same_slots(3, {3, 7, 9});
    const auto m = perfect_match(g);
    REQUIRE(m);
    CHECK(is_valid_matching(g, *m));
    std::vector<Color> bases;
    for (const auto& c : *m) bases.push_back(c.base);
    std::sort(bases.begin(), bases.end());
    CHECK(bases == std::vector<Color>{3, 7, 9});
    const auto b = brute_force_match(g);
    REQUIRE(b);
    CHECK(is_valid_matching(g, *b));
  }

  TEST_CASE("four slots on three colors violate Hall") {
    const auto g = same_slots(4, {3, 7, 9});
    CHECK_FALSE(perfect_match(g));
    CHECK_FALSE(brute_force_match(g));
  }

  TEST_CASE("trivial instances") {
    const ColorGraph empty{28, {}};
    const auto m = perfect_match(empty);
    REQUIRE(m);
    CHECK(m->empty());

    const auto one = same_slots(1, {0, 1, 2});
    const auto single = perfect_match(one);
    REQUIRE(single);
    CHECK((*single)[0].base == 0);
    CHECK((*single)[0].band == 0);
    CHECK((*brute_force_match(one))[0].base == 0);
  }

  TEST_CASE("brute force refuses large instances") {
    Rng rng(3);
    const auto g = random_graph(rng, 13, 40);
    try {
      brute_force_match(g);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InstanceTooLarge);
    }
  }

  TEST_CASE("Hopcroft-Karp agrees with exhaustive search") {
    Rng rng(77);
    int feasible = 0, infeasible = 0;
    for (int t = 0; t < 3000; ++t) {
      const std::size_t slots = 1 + rng.below(10);
      const auto range = static_cast<std::uint32_t>(3 + rng.below(12));
      const auto g = random_graph(rng, slots, range);
      const auto fast = perfect_match(g);
      const auto slow = brute_force_match(g);
      REQUIRE(fast.has_value() == slow.has_value());
      if (fast) {
        REQUIRE(is_valid_matching(g, *fast));
        ++feasible;
      } else {
        ++infeasible;
      }
    }
    // Both outcomes must actually be exercised.
    CHECK(feasible > 100);
    CHECK(infeasible > 100);
  }

  TEST_CASE("matching is deterministic") {
    Rng a(9), b(9);
    for (int t = 0; t < 200; ++t) {
      const auto ga = random_graph(a, 8, 20);
      const auto gb = random_graph(b, 8, 20);
      CHECK(perfect_match(ga) == perfect_match(gb));
    }
  }

  TEST_CASE("up to three slots always match") {
    Rng rng(10);
    for (int t = 0; t < 2000; ++t) {
      const auto g = random_graph(rng, 1 + rng.below(3), 3 + static_cast<std::uint32_t>(rng.below(5)));
      CHECK(perfect_match(g));
    }
  }

  TEST_CASE("adding a neighbor never breaks a perfect matching") {
    Rng rng(12);
    for (int t = 0; t < 2000; ++t) {
      const std::size_t n = 1 + rng.below(8);
      const auto range = static_cast<std::uint32_t>(3 + rng.below(8));
      std::vector<std::vector<std::uint32_t>> adj(n);
      for (auto& a : adj) a = sample_k_subset(rng, range, 1 + static_cast<std::uint32_t>(rng.below(3)));
      const bool before = left_perfect_matching(adj).has_value();
      adj[rng.below(n)].push_back(static_cast<std::uint32_t>(rng.below(range)));
      const bool after = left_perfect_matching(adj).has_value();
      if (before) CHECK(after);
    }
  }

  TEST_CASE("k-subsets are distinct and in range") {
    Rng rng(4);
    for (int t = 0; t < 500; ++t) {
      auto s = sample_k_subset(rng, 10, 3);
      REQUIRE(s.size() == 3);
      for (auto x : s) CHECK(x < 10);
      std::sort(s.begin(), s.end());
      CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    }
    CHECK(sample_k_subset(rng, 5, 5).size() == 5);
    CHECK_THROWS_AS(sample_k_subset(rng, 2, 3), Error);
  }

  TEST_CASE("k-subset marginals are uniform") {
    Rng rng(8);
    const int trials = 60000;
    std::array<int, 6> counts{};
    for (int t = 0; t < trials; ++t)
      for (auto x : sample_k_subset(rng, 6, 3)) ++counts[x];
    // Each element is in the subset with probability 1/2.
    const double mean = trials * 0.5;
    const double sigma = std::sqrt(trials * 0.25);
    for (int c : counts) CHECK(std::abs(c - mean) <= 4 * sigma);
  }

  TEST_CASE("k-out trials forced by Hall") {
    Rng rng(21);
    for (int t = 0; t < 1000; ++t) {
      CHECK(kout_trial(1, 3, 3, rng));
      CHECK(kout_trial(2, 6, 3, rng));
      CHECK(kout_trial(3, 3, 3, rng));
    }
    CHECK_FALSE(kout_trial(4, 3, 3, rng));
  }
}
