// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every threshold below is fixed; nothing is tuned to the observed outcome.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "streamcolor/dispatch.hpp"
#include "streamcolor/experiments.hpp"
#include "streamcolor/generate.hpp"
#include "streamcolor/matching.hpp"
#include "streamcolor/offline_color.hpp"
#include "streamcolor/pipeline.hpp"
#include "streamcolor/verify.hpp"

using namespace streamcolor;

namespace {

constexpr std::uint64_t kMasterSeed = 20240601;
constexpr std::uint32_t kSeeds = 20;

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail, double secs) {
  std::printf("%s criterion %d: %s [%s; %.1fs]\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint32_t palette_period(std::uint32_t delta) { return (272 * delta + 99) / 100; }

std::string describe(const RunRecord& r) {
  std::ostringstream os;
  os << to_string(r.spec.preset) << '/' << to_string(r.spec.gen.family) << " n=" << r.spec.gen.n
     << " delta=" << r.spec.gen.delta << " s=" << r.s_column << " seed=" << r.spec.gen.seed;
  if (r.error) os << " error=" << r.error_text;
  return os.str();
}

// Vertex count of a generated stream: both sides for bipartite families.
std::uint64_t vertex_count(const GenSpec& g) {
  return family_bipartite(g.family) ? 2ull * g.n : g.n;
}

std::vector<RunRecord> run_grid(const std::vector<Preset>& presets, const std::vector<Family>& families,
                                const std::vector<std::uint32_t>& ns,
                                const std::vector<std::uint32_t>& deltas,
                                const std::vector<std::string>& s_values, std::uint32_t seeds) {
  BenchConfig cfg;
  cfg.presets = presets;
  cfg.families = families;
  cfg.ns = ns;
  cfg.deltas = deltas;
  cfg.s_values = s_values;
  cfg.seeds = seeds;
  cfg.master_seed = kMasterSeed;
  // Streaming path everywhere; breaches are counted rather than aborting runs.
  cfg.force_stream = true;
  cfg.policy = BoundPolicy::Divert;
  return run_suite(expand_grid(cfg), jobs(), false);
}

// Smallest number of colors admitting a proper edge coloring.
std::uint32_t chromatic_index(const std::vector<Edge>& edges) {
  if (edges.empty()) return 0;
  std::vector<Color> col(edges.size());
  for (Color k = 1;; ++k) {
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
      if (i == edges.size()) return true;
      for (Color c = 0; c < k; ++c) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
          const bool adj = edges[j].u == edges[i].u || edges[j].u == edges[i].v ||
                           edges[j].v == edges[i].u || edges[j].v == edges[i].v;
          ok = !(adj && col[j] == c);
        }
        if (!ok) continue;
        col[i] = c;
        if (go(i + 1)) return true;
      }
      return false;
    };
    if (go(0)) return k;
  }
}

}  // namespace

int main() {
  const auto all_start = std::chrono::steady_clock::now();
  std::printf("acceptance: %u worker thread(s)\n", jobs());

  // Criterion 1 grid, also the data for criteria 2, 3 and 5.
  auto t0 = std::chrono::steady_clock::now();
  const auto grid = run_grid(all_presets(), all_families(), {256, 1024}, {8, 32, 128}, {"2"}, kSeeds);
  const double grid_secs = seconds_since(t0);
  {
    std::size_t bad = 0;
    std::string first;
    for (const auto& r : grid)
      if (!r.proper) {
        if (!bad) first = describe(r);
        ++bad;
      }
    std::ostringstream d;
    d << grid.size() << " runs, " << bad << " not proper";
    if (bad) d << ", first: " << first;
    report(1, bad == 0 && grid_secs < 300, "every preset proper and complete on the full grid",
           d.str() + ", limit 300s", grid_secs);
  }

  // Criterion 2.
  {
    std::size_t runs = 0, over = 0;
    std::uint64_t worst_margin = 0;
    for (const auto& r : grid) {
      if (r.spec.preset != Preset::OneSided) continue;
      ++runs;
      const std::uint64_t bound = 3ull * palette_period(r.spec.gen.delta) + r.spec.gen.delta;
      if (r.error || r.colors_used > bound) ++over;
      worst_margin = std::max(worst_margin, r.colors_used * 1000 / bound);
    }
    std::ostringstream d;
    d << runs << " one-sided runs, " << over << " above 3*ceil(2.72*delta)+delta, max used/bound "
      << worst_margin / 1000.0;
    report(2, runs > 0 && over == 0, "one-sided colors within 3P + delta", d.str(), 0.0);
  }

  // Criterion 3.
  {
    std::size_t runs = 0, over = 0, breach_runs = 0, breach_pool = 0;
    double worst = 0;
    for (const auto& r : grid) {
      if (r.spec.preset != Preset::EdgeSqrt || r.spec.gen.delta < 64) continue;
      ++runs;
      const double ratio = static_cast<double>(r.colors_used) / r.spec.gen.delta;
      worst = std::max(worst, ratio);
      if (r.error || r.colors_used > 20ull * r.spec.gen.delta) ++over;
      // Breach frequency over the bipartite-family runs (3 families x 2 n x 20 seeds = 120).
      if (family_bipartite(r.spec.gen.family)) {
        ++breach_pool;
        if (r.breaches > 0) ++breach_runs;
      }
    }
    std::ostringstream d;
    d << runs << " edge-sqrt runs with delta>=64, " << over << " above 20*delta (max colors/delta "
      << worst << "); " << breach_runs << " of " << breach_pool
      << " bipartite runs had a sub-instance degree breach, limit 1";
    report(3, runs > 0 && over == 0 && breach_runs <= 1,
           "edge-sqrt colors within 20*delta and breaches in at most 1 run", d.str(), 0.0);
  }

  // Criterion 4.
  t0 = std::chrono::steady_clock::now();
  const auto c4 = run_grid({Preset::EdgeGeneral}, all_families(), {512}, {64, 256},
                           {"1", "2", "quarter", "sqrt"}, 3);
  {
    std::size_t over = 0, broken = 0;
    double worst = 0;
    std::string first;
    for (const auto& r : c4) {
      const double bound = 60.0 * std::pow(r.spec.gen.delta, 1.5) / r.s_column;
      worst = std::max(worst, static_cast<double>(r.colors_used) / bound);
      if (!r.proper) ++broken;
      if (r.error || static_cast<double>(r.colors_used) > bound) {
        if (!over) first = describe(r);
        ++over;
      }
    }
    std::ostringstream d;
    d << c4.size() << " edge-general runs (n=512, delta 64/256, s 1/2/quarter/sqrt, 3 seeds), "
      << over << " above 60*delta^1.5/s, " << broken << " not proper, max used/bound " << worst;
    if (over) d << ", first: " << first;
    report(4, over == 0 && broken == 0, "edge-general colors within 60*delta^1.5/s", d.str(),
           seconds_since(t0));
  }

  // Criterion 5.
  {
    std::size_t p1_runs = 0, p1_over = 0, eg_runs = 0, eg_over = 0;
    std::set<std::string> eg_over_families;
    double eg_worst = 0;
    for (const auto& r : grid) {
      if (r.spec.preset != Preset::OneSided) continue;
      ++p1_runs;
      const std::uint64_t n = vertex_count(r.spec.gen);
      if (r.peak_words > 5 * n + 2 * r.spill.spilled_edges + 8ull * r.spec.gen.delta) ++p1_over;
    }
    auto check_general = [&](const RunRecord& r) {
      if (r.spec.preset != Preset::EdgeGeneral) return;
      ++eg_runs;
      const std::uint64_t limit = 50 * vertex_count(r.spec.gen) * r.s_column;
      eg_worst = std::max(eg_worst, static_cast<double>(r.peak_words) / static_cast<double>(limit));
      if (r.peak_words > limit) {
        ++eg_over;
        eg_over_families.insert(std::string(to_string(r.spec.gen.family)));
      }
    };
    for (const auto& r : grid) check_general(r);
    for (const auto& r : c4) check_general(r);
    std::ostringstream d;
    d << p1_runs << " one-sided runs, " << p1_over << " above 5n+2|S|+8*delta; " << eg_runs
      << " edge-general runs, " << eg_over << " above 50*n*s (max peak/limit " << eg_worst << ")";
    if (!eg_over_families.empty()) {
      d << " in families:";
      for (const auto& f : eg_over_families) d << ' ' << f;
    }
    report(5, p1_over == 0 && eg_over == 0, "instrumented peak words within the space bounds",
           d.str(), 0.0);
  }

  // Criterion 6.
  t0 = std::chrono::steady_clock::now();
  {
    const auto recs = run_grid({Preset::OneSided}, {Family::RegularBipartite}, {10000}, {16}, {"1"},
                               kSeeds);
    std::uint64_t spilled = 0, arrivals = 0, broken = 0;
    for (const auto& r : recs) {
      spilled += r.spill.spilled_vertices;
      arrivals += r.arrivals;
      if (!r.proper) ++broken;
    }
    const double frac = arrivals ? static_cast<double>(spilled) / static_cast<double>(arrivals) : 1.0;
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << spilled << " of " << arrivals << " arrivals spilled (fraction " << frac
      << ", limit 0.01), " << broken << " not proper, limit 120s";
    report(6, frac <= 1e-2 && broken == 0 && secs < 120, "spills are rare at delta=16, n=10^4",
           d.str(), secs);
  }

  // Criterion 7.
  t0 = std::chrono::steady_clock::now();
  {
    const Rational c = parse_decimal("2.72");
    const auto big = run_kout_experiment(50, c, 3, 10000, kMasterSeed, jobs());
    const auto one = run_kout_experiment(1, c, 3, 10000, kMasterSeed, jobs());
    const auto two = run_kout_experiment(2, c, 3, 10000, kMasterSeed, jobs());
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "n=50 |U|=" << big.u_size << ": " << big.failures << "/10000 failures (rate " << big.rate
      << ", limit 0.001); n=1: " << one.failures << "; n=2: " << two.failures << "; limit 60s";
    report(7, big.u_size == 136 && big.rate <= 1e-3 && one.failures == 0 && two.failures == 0 &&
                  secs < 60,
           "k-out perfect matchings", d.str(), secs);
  }

  // Criterion 8.
  t0 = std::chrono::steady_clock::now();
  {
    Rng rng(split_seed(kMasterSeed, 8));
    std::size_t disagree = 0, invalid = 0, feasible = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      ColorGraph g;
      if (t % 2 == 0) {
        // Real proposals: random states and degrees at a random small delta.
        const auto delta = static_cast<std::uint32_t>(2 + rng.below(9));
        const auto params = PaletteParams::for_degree(delta);
        const std::size_t slots = 1 + rng.below(std::min<std::uint32_t>(delta, 10));
        std::vector<OfflineState> states;
        for (std::size_t i = 0; i < slots; ++i) {
          auto s = draw_offline_state(rng, params);
          s.deg = static_cast<std::uint32_t>(rng.below(delta));
          states.push_back(s);
        }
        g = build_color_graph(states, params);
      } else {
        // Crowded proposals: 3-subsets of a small color range, so Hall often fails.
        g.period = static_cast<std::uint32_t>(3 + rng.below(10));
        const std::size_t slots = 1 + rng.below(10);
        for (std::size_t i = 0; i < slots; ++i) {
          auto pick = sample_k_subset(rng, g.period, 3);
          std::sort(pick.begin(), pick.end());
          ColorSlot s;
          for (int j = 0; j < 3; ++j) {
            s.colors[j] = pick[j];
            s.bands[j] = static_cast<std::uint8_t>(j);
          }
          g.slots.push_back(s);
        }
      }
      const auto fast = perfect_match(g);
      const auto slow = brute_force_match(g);
      if (fast.has_value() != slow.has_value()) ++disagree;
      if (fast) {
        ++feasible;
        if (!is_valid_matching(g, *fast)) ++invalid;
      }
    }
    std::ostringstream d;
    d << trials << " graphs (" << feasible << " with a perfect matching), " << disagree
      << " disagreements, " << invalid << " invalid matchings";
    report(8, disagree == 0 && invalid == 0, "Hopcroft-Karp agrees with exhaustive search",
           d.str(), seconds_since(t0));
  }

  // Criterion 9.
  t0 = std::chrono::steady_clock::now();
  {
    Rng rng(split_seed(kMasterSeed, 9));
    std::size_t bip_bad = 0, gen_bad = 0;
    const int bip_trials = 2000, gen_trials = 10000;
    for (int t = 0; t < bip_trials; ++t) {
      const auto left = static_cast<std::uint32_t>(1 + rng.below(6));
      const auto right = static_cast<std::uint32_t>(1 + rng.below(6));
      const std::size_t target = 1 + rng.below(12);
      std::set<std::pair<VertexId, VertexId>> seen;
      std::vector<Edge> edges;
      for (int tries = 0; edges.size() < target && tries < 200; ++tries) {
        const auto u = static_cast<VertexId>(rng.below(left));
        const auto v = static_cast<VertexId>(100 + rng.below(right));
        if (seen.insert({u, v}).second) edges.push_back({u, v});
      }
      const auto c = color_bipartite_exact(OfflineGraph{edges, true});
      if (!is_proper_coloring(edges, c) || distinct_colors(c) != chromatic_index(edges) ||
          distinct_colors(c) != max_degree(edges))
        ++bip_bad;
    }
    for (int t = 0; t < gen_trials; ++t) {
      const auto n = static_cast<std::uint32_t>(3 + rng.below(48));
      const auto p_milli = 20 + rng.below(900);
      std::vector<Edge> edges;
      for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
          if (rng.below(1000) < p_milli) edges.push_back(rng.coin() ? Edge{a, b} : Edge{b, a});
      if (edges.empty()) continue;
      const auto c = color_general(OfflineGraph{edges, false});
      if (!is_proper_coloring(edges, c) ||
          *std::max_element(c.begin(), c.end()) + 1 > max_degree(edges) + 1)
        ++gen_bad;
    }
    std::ostringstream d;
    d << bip_bad << " of " << bip_trials << " bipartite graphs (<=12 edges) off the brute-force "
      << "minimum; " << gen_bad << " of " << gen_trials << " general graphs (n<=50) above delta+1";
    report(9, bip_bad == 0 && gen_bad == 0, "offline colorers are optimal / within delta+1",
           d.str(), seconds_since(t0));
  }

  // Criterion 10.
  t0 = std::chrono::steady_clock::now();
  {
    std::size_t mismatches = 0, checks = 0;
    for (Preset p : all_presets()) {
      for (Family f : {Family::RandomBipartite, Family::RegularGeneral}) {
        if (p == Preset::OneSided && f == Family::RegularGeneral) continue;
        const GenSpec gs{f, 200, 32, natural_mode(p), 0, 77};
        const std::string s1 = write_stream(generate(gs));
        const std::string s2 = write_stream(generate(gs));
        auto colored = [&](const std::string& text) {
          std::istringstream in(text);
          std::ostringstream out;
          AssignmentWriter w(out, false);
          RunOptions opts;
          opts.preset = p;
          opts.s = 2;
          opts.force_stream = true;
          opts.policy = BoundPolicy::Divert;
          run_stream(in, opts, w);
          return out.str();
        };
        RunSpec spec;
        spec.preset = p;
        spec.gen = gs;
        spec.s = 2;
        spec.force_stream = true;
        spec.policy = BoundPolicy::Divert;
        const std::string row1 = csv_row(execute_run(spec, false));
        const std::string row2 = csv_row(execute_run(spec, false));
        checks += 3;
        mismatches += (s1 != s2) + (colored(s1) != colored(s2)) + (row1 != row2);
      }
    }
    std::ostringstream d;
    d << checks << " comparisons of streams, outputs and CSV rows, " << mismatches << " differ";
    report(10, mismatches == 0, "identical seeds reproduce identical bytes", d.str(),
           seconds_since(t0));
  }

  std::printf("acceptance: %d criterion(s) failed, %.1fs total\n", failures,
              seconds_since(all_start));
  return failures == 0 ? 0 : 1;
}
