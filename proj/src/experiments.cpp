#include "streamcolor/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "streamcolor/matching.hpp"
#include "streamcolor/rng.hpp"
#include "streamcolor/verify.hpp"

namespace streamcolor {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, const std::string& what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorCode::ParseError, what + ": bad number '" + std::string(text) + "'");
  return value;
}

bool parse_bool(std::string_view text, const std::string& what) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  fail(ErrorCode::ParseError, what + ": expected true or false");
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  text = trim(text);
  const auto dot = text.find('.');
  std::string digits(text.substr(0, dot));
  std::uint64_t den = 1;
  if (dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 12) fail(ErrorCode::InvalidArgument, "too many decimals in '" + std::string(text) + "'");
    digits += frac;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::InvalidArgument, "not a decimal number: '" + std::string(text) + "'");
  Rational r{std::stoull(digits), den};
  const std::uint64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (unsigned j = 0; j < jobs; ++j) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

KoutResult run_kout_experiment(std::uint32_t n, Rational c, std::uint32_t k, std::uint64_t trials,
                               std::uint64_t seed, unsigned jobs) {
  if (c.den == 0) fail(ErrorCode::InvalidArgument, "c has a zero denominator");
  KoutResult r;
  r.n = n;
  r.k = k;
  r.trials = trials;
  r.u_size = static_cast<std::uint32_t>(ceil_scaled(n, c.num, c.den));
  if (k == 0 || r.u_size < k)
    fail(ErrorCode::InvalidArgument, "need 1 <= k <= ceil(c*n)");
  std::vector<char> failed(trials, 0);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng(split_seed(seed, t));
    failed[t] = kout_trial(n, r.u_size, k, rng) ? 0 : 1;
  });
  r.failures = static_cast<std::uint64_t>(std::count(failed.begin(), failed.end(), 1));
  r.rate = trials ? static_cast<double>(r.failures) / static_cast<double>(trials) : 0.0;
  r.ci = wilson_interval(r.failures, trials);
  return r;
}

std::string kout_csv_header() { return "n,u_size,k,trials,failures,rate,ci_low,ci_high"; }

std::string kout_csv_row(const KoutResult& r) {
  std::ostringstream os;
  os << r.n << ',' << r.u_size << ',' << r.k << ',' << r.trials << ',' << r.failures << ','
     << sci(r.rate) << ',' << sci(r.ci.low) << ',' << sci(r.ci.high);
  return os.str();
}

RunRecord execute_run(const RunSpec& spec, bool timing) {
  RunRecord rec;
  rec.spec = spec;
  const auto start = std::chrono::steady_clock::now();
  try {
    const StreamFile stream = generate(spec.gen);
    rec.arrivals = stream.events.size();
    RunOptions opts;
    opts.preset = spec.preset;
    opts.s = spec.s;
    opts.force_stream = spec.force_stream;
    opts.policy = spec.policy;
    Assignments out;
    const RunSummary summary = run_events(stream, opts, &out);
    const auto edges = stream_edges(stream);
    const VerifyReport report = verify(edges, out, summary.budget);
    rec.proper = report.proper && report.complete;
    rec.colors_used = summary.colors_used;
    rec.budget = summary.budget;
    rec.peak_words = summary.peak_words;
    rec.spill = summary.spill;
    rec.breaches = summary.bound_breaches;
    rec.edges = edges.size();
    if (!report.within_budget || !summary.meter_consistent) rec.proper = false;
  } catch (const Error& e) {
    rec.error = e.code();
    rec.error_text = e.what();
    rec.proper = false;
  }
  if (spec.preset == Preset::EdgeGeneral) {
    rec.s_column = std::min(spec.s, ceil_sqrt(spec.gen.delta));
  } else if (spec.preset == Preset::EdgeSqrt) {
    rec.s_column = ceil_sqrt(spec.gen.delta);
  }
  if (timing)
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                     .count();
  return rec;
}

BenchConfig parse_bench_config(std::istream& in) {
  BenchConfig cfg;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string_view::npos) fail(ErrorCode::ParseError, where + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const auto values = split_list(line.substr(eq + 1));
    if (values.empty()) fail(ErrorCode::ParseError, where + ": no value for " + key);
    try {
      if (key == "presets" || key == "preset") {
        for (const auto& v : values) cfg.presets.push_back(parse_preset(v));
      } else if (key == "families" || key == "family") {
        for (const auto& v : values) cfg.families.push_back(parse_family(v));
      } else if (key == "n") {
        for (const auto& v : values) cfg.ns.push_back(parse_number<std::uint32_t>(v, where));
      } else if (key == "delta") {
        for (const auto& v : values) cfg.deltas.push_back(parse_number<std::uint32_t>(v, where));
      } else if (key == "s") {
        for (const auto& v : values) resolve_s(v, 1);  // validate the token
        cfg.s_values = values;
      } else if (key == "seeds") {
        cfg.seeds = parse_number<std::uint32_t>(values.front(), where);
      } else if (key == "master_seed" || key == "seed") {
        cfg.master_seed = parse_number<std::uint64_t>(values.front(), where);
      } else if (key == "force_stream") {
        cfg.force_stream = parse_bool(values.front(), where);
      } else if (key == "policy") {
        if (values.front() == "strict")
          cfg.policy = BoundPolicy::Strict;
        else if (values.front() == "divert")
          cfg.policy = BoundPolicy::Divert;
        else
          fail(ErrorCode::ParseError, where + ": policy is strict or divert");
      } else {
        fail(ErrorCode::ParseError, where + ": unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      fail(ErrorCode::ParseError, where + ": " + e.detail());
    }
  }
  return cfg;
}

std::uint32_t resolve_s(std::string_view token, std::uint32_t delta) {
  if (token == "sqrt") return ceil_sqrt(delta);
  if (token == "quarter") {
    std::uint64_t r = 1;
    while (r * r * r * r < delta) ++r;
    return static_cast<std::uint32_t>(r);
  }
  const auto s = parse_number<std::uint32_t>(token, "s");
  if (s == 0) fail(ErrorCode::ParseError, "s must be at least 1");
  return s;
}

std::vector<RunSpec> expand_grid(const BenchConfig& cfg) {
  std::vector<RunSpec> specs;
  for (Preset preset : cfg.presets)
    for (Family family : cfg.families) {
      if (preset == Preset::OneSided && !family_bipartite(family)) continue;
      for (std::uint32_t n : cfg.ns)
        for (std::uint32_t delta : cfg.deltas) {
          std::vector<std::uint32_t> svals{1};
          if (preset == Preset::EdgeGeneral) {
            svals.clear();
            for (const auto& tok : cfg.s_values) {
              const std::uint32_t s = resolve_s(tok, delta);
              if (std::find(svals.begin(), svals.end(), s) == svals.end()) svals.push_back(s);
            }
          }
          for (std::uint32_t s : svals)
            for (std::uint32_t i = 0; i < cfg.seeds; ++i) {
              RunSpec r;
              r.preset = preset;
              r.gen = GenSpec{family, n, delta, natural_mode(preset), 0,
                              split_seed(cfg.master_seed, i)};
              r.s = s;
              r.force_stream = cfg.force_stream;
              r.policy = cfg.policy;
              specs.push_back(r);
            }
        }
    }
  return specs;
}

std::vector<RunRecord> run_suite(const std::vector<RunSpec>& specs, unsigned jobs, bool timing) {
  std::vector<RunRecord> records(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t i) { records[i] = execute_run(specs[i], timing); });
  return records;
}

std::string csv_header() {
  return "preset,family,n,delta,s,seed,proper,colors_used,budget,peak_words,spilled_vertices,"
         "spilled_edges,millis";
}

std::string csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << to_string(r.spec.preset) << ',' << to_string(r.spec.gen.family) << ',' << r.spec.gen.n
     << ',' << r.spec.gen.delta << ',' << r.s_column << ',' << r.spec.gen.seed << ','
     << (r.proper ? "true" : "false") << ',' << r.colors_used << ',' << r.budget << ','
     << r.peak_words << ',' << r.spill.spilled_vertices << ',' << r.spill.spilled_edges << ','
     << fixed(r.millis, 3);
  return os.str();
}

std::string aggregate_csv(const std::vector<RunRecord>& records) {
  struct Cell {
    std::uint64_t runs = 0, proper = 0, errors = 0, breaches = 0;
    double colors_sum = 0, peak_sum = 0, millis_sum = 0;
    std::uint64_t colors_max = 0, peak_max = 0, spilled = 0, arrivals = 0;
  };
  using Key = std::tuple<std::size_t, std::string, std::string, std::uint32_t, std::uint32_t,
                         std::uint32_t>;
  std::map<Key, Cell> cells;
  std::size_t order = 0;
  std::map<std::tuple<std::string, std::string, std::uint32_t, std::uint32_t, std::uint32_t>,
           std::size_t>
      first_seen;
  for (const auto& r : records) {
    const auto id = std::make_tuple(std::string(to_string(r.spec.preset)),
                                    std::string(to_string(r.spec.gen.family)), r.spec.gen.n,
                                    r.spec.gen.delta, r.s_column);
    auto [it, fresh] = first_seen.emplace(id, order);
    if (fresh) ++order;
    Cell& c = cells[std::tuple_cat(std::make_tuple(it->second), id)];
    ++c.runs;
    c.proper += r.proper;
    c.errors += r.error.has_value();
    c.breaches += r.breaches;
    c.colors_sum += static_cast<double>(r.colors_used);
    c.peak_sum += static_cast<double>(r.peak_words);
    c.millis_sum += r.millis;
    c.colors_max = std::max(c.colors_max, r.colors_used);
    c.peak_max = std::max(c.peak_max, r.peak_words);
    c.spilled += r.spill.spilled_vertices;
    c.arrivals += r.arrivals;
  }
  std::ostringstream os;
  os << "preset,family,n,delta,s,runs,proper_runs,errors,breaches,mean_colors,max_colors,"
        "mean_peak_words,max_peak_words,spill_fraction,mean_millis\n";
  for (const auto& [key, c] : cells) {
    const auto& [ord, preset, family, n, delta, s] = key;
    const double runs = static_cast<double>(c.runs);
    os << preset << ',' << family << ',' << n << ',' << delta << ',' << s << ',' << c.runs << ','
       << c.proper << ',' << c.errors << ',' << c.breaches << ',' << fixed(c.colors_sum / runs, 1)
       << ',' << c.colors_max << ',' << fixed(c.peak_sum / runs, 1) << ',' << c.peak_max << ','
       << sci(c.arrivals ? static_cast<double>(c.spilled) / static_cast<double>(c.arrivals) : 0.0)
       << ',' << fixed(c.millis_sum / runs, 3) << '\n';
  }
  return os.str();
}

}  // namespace streamcolor
