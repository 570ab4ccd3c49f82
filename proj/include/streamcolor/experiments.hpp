#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamcolor/error.hpp"
#include "streamcolor/generate.hpp"
#include "streamcolor/pipeline.hpp"

namespace streamcolor {

struct Rational {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
};

/// Exact decimal parse: "2.72" -> 272/100, "3" -> 3/1.
Rational parse_decimal(std::string_view text);

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 gives 95%).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

struct KoutResult {
  std::uint32_t n = 0;
  std::uint32_t u_size = 0;
  std::uint32_t k = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double rate = 0.0;
  Interval ci;
};

/// Fraction of random k-out graphs (n left vertices, ceil(c·n) right) with no
/// left-perfect matching. Trial t draws from split_seed(seed, t), so the result
/// does not depend on `jobs`.
KoutResult run_kout_experiment(std::uint32_t n, Rational c, std::uint32_t k, std::uint64_t trials,
                               std::uint64_t seed, unsigned jobs = 1);

std::string kout_csv_header();
std::string kout_csv_row(const KoutResult& r);

/// One cell of an experiment grid.
struct RunSpec {
  Preset preset = Preset::OneSided;
  GenSpec gen;
  std::uint32_t s = 1;  // edge-general only
  bool force_stream = false;
  BoundPolicy policy = BoundPolicy::Strict;
};

struct RunRecord {
  RunSpec spec;
  std::uint32_t s_column = 0;  // s actually used (k for edge-sqrt, 0 for vertex presets)
  bool proper = false;         // proper and every edge colored exactly once
  std::uint64_t colors_used = 0;
  Color budget = 0;
  std::uint64_t peak_words = 0;
  SpillReport spill;
  double millis = 0.0;
  std::uint64_t breaches = 0;
  std::uint64_t arrivals = 0;  // stream events
  std::uint64_t edges = 0;
  std::optional<ErrorCode> error;
  std::string error_text;
};

/// Generates, runs and verifies one cell in memory.
RunRecord execute_run(const RunSpec& spec, bool timing = true);

struct BenchConfig {
  std::vector<Preset> presets;
  std::vector<Family> families;
  std::vector<std::uint32_t> ns;
  std::vector<std::uint32_t> deltas;
  std::vector<std::string> s_values{"1"};  // integers, "quarter" = ceil(Δ^¼), "sqrt" = ceil(√Δ)
  std::uint32_t seeds = 1;
  std::uint64_t master_seed = 0;
  bool force_stream = false;
  BoundPolicy policy = BoundPolicy::Strict;
};

/// `key = v1, v2, ...` lines, `#` comments. Throws ParseError.
BenchConfig parse_bench_config(std::istream& in);

std::uint32_t resolve_s(std::string_view token, std::uint32_t delta);

/// Cartesian product in config order; one-sided is skipped on general families
/// and duplicate resolved s values are dropped. Run i of a cell uses
/// seed split_seed(master_seed, i).
std::vector<RunSpec> expand_grid(const BenchConfig& config);

std::vector<RunRecord> run_suite(const std::vector<RunSpec>& specs, unsigned jobs, bool timing);

std::string csv_header();
std::string csv_row(const RunRecord& r);

/// Mean/max per (preset, family, n, delta, s) cell.
std::string aggregate_csv(const std::vector<RunRecord>& records);

}  // namespace streamcolor
