#include "streamcolor/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "streamcolor/experiments.hpp"
#include "streamcolor/generate.hpp"
#include "streamcolor/pipeline.hpp"
#include "streamcolor/stream_model.hpp"
#include "streamcolor/verify.hpp"

namespace streamcolor {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleSpec:
      return exit_code::kInfeasible;
    case ErrorCode::ModeMismatch:
    case ErrorCode::DegreeExceeded:
    case ErrorCode::DuplicateEdge:
    case ErrorCode::SelfLoop:
    case ErrorCode::BatchSizeMismatch:
    case ErrorCode::TooManyBatches:
    case ErrorCode::NotBipartite:
      return exit_code::kBadStream;
    case ErrorCode::BoundViolation:
    case ErrorCode::FlushBudgetExceeded:
      return exit_code::kBoundViolation;
    case ErrorCode::MalformedLine:
    case ErrorCode::ParseError:
      return exit_code::kParseError;
    default:
      return exit_code::kFailed;
  }
}

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("STREAMCOLOR_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    return std::stoull(s);
  } catch (...) {
    fail(ErrorCode::InvalidArgument, "STREAMCOLOR_SEED is not an unsigned integer");
  }
}

// "-" means stdout; otherwise a file that must open.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) fail(ErrorCode::IoFailure, "cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoFailure, "cannot read " + path);
  return in;
}

struct GenArgs {
  std::string family = "regular-bipartite";
  std::uint32_t n = 0;
  std::uint32_t delta = 0;
  std::string mode = "edge";
  std::uint32_t batch = 0;
  std::uint64_t seed = 0;
  std::string output = "-";
};

struct RunArgs {
  std::string input;
  std::string alg = "one-sided";
  std::uint32_t s = 1;
  bool force_stream = false;
  std::string policy = "strict";
  std::optional<std::uint64_t> seed;
  std::string output = "-";
};

struct VerifyArgs {
  std::string stream;
  std::string output;
  std::optional<std::uint32_t> budget;
};

struct KoutArgs {
  std::uint32_t n = 50;
  std::string c = "2.72";
  std::uint32_t k = 3;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct BenchArgs {
  std::string config;
  unsigned jobs = 1;
  bool no_timing = false;
  bool force_stream = false;
  std::optional<std::uint64_t> seed;
  std::string output = "-";
  std::string aggregate;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  GenSpec spec;
  spec.family = parse_family(a.family);
  spec.n = a.n;
  spec.delta = a.delta;
  spec.mode = parse_mode(a.mode);
  spec.batch_size = a.batch;
  spec.seed = env_seed().value_or(a.seed);
  const std::string text = write_stream(generate(spec));
  OutputTarget target(a.output, out);
  target.get() << text;
  target.get().flush();
  if (!target.get()) fail(ErrorCode::IoFailure, "write failed");
  return exit_code::kOk;
}

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  RunOptions opts;
  opts.preset = parse_preset(a.alg);
  opts.s = a.s;
  opts.force_stream = a.force_stream;
  if (a.policy == "strict")
    opts.policy = BoundPolicy::Strict;
  else if (a.policy == "divert")
    opts.policy = BoundPolicy::Divert;
  else
    fail(ErrorCode::InvalidArgument, "policy must be strict or divert");
  opts.seed = a.seed;
  if (auto s = env_seed()) opts.seed = s;

  std::ifstream file;
  std::istream* in = &std::cin;
  if (a.input != "-") {
    file = open_input(a.input);
    in = &file;
  }
  OutputTarget target(a.output, out);
  AssignmentWriter sink(target.get());
  const RunSummary summary = run_stream(*in, opts, sink, [&](const Pipeline& p) {
    err << "budget " << p.budget() << '\n';
    for (const auto& note : p.notes()) err << "# " << note << '\n';
  });
  sink.close();
  err << "edges " << summary.edges << '\n'
      << "colors_used " << summary.colors_used << '\n'
      << "peak_words " << summary.peak_words << '\n'
      << "spilled_vertices " << summary.spill.spilled_vertices << '\n'
      << "spilled_edges " << summary.spill.spilled_edges << '\n'
      << "bound_breaches " << summary.bound_breaches << '\n';
  return exit_code::kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  std::ifstream sin = open_input(a.stream);
  std::ifstream oin = open_input(a.output);
  StreamFile stream;
  OutputFile output;
  try {
    stream = read_stream(sin);
    output = read_output(oin);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoFailure) throw;
    fail(ErrorCode::ParseError, e.detail());
  }
  const VerifyReport report =
      verify(stream, output, a.budget ? std::optional<Color>(*a.budget) : std::nullopt);
  out << format_report(report);
  return report.ok() ? exit_code::kOk : exit_code::kFailed;
}

int cmd_kout(const KoutArgs& a, std::ostream& out) {
  const auto seed = env_seed().value_or(a.seed);
  const KoutResult r = run_kout_experiment(a.n, parse_decimal(a.c), a.k, a.trials, seed, a.jobs);
  out << kout_csv_header() << '\n' << kout_csv_row(r) << '\n';
  return exit_code::kOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in = open_input(a.config);
  BenchConfig cfg = parse_bench_config(in);
  if (a.seed) cfg.master_seed = *a.seed;
  if (auto s = env_seed()) cfg.master_seed = *s;
  if (a.force_stream) cfg.force_stream = true;
  const auto specs = expand_grid(cfg);
  const auto records = run_suite(specs, a.jobs, !a.no_timing);

  OutputTarget target(a.output, out);
  std::ostream& os = target.get();
  if (cfg.force_stream) os << "# force_stream=true\n";
  if (cfg.policy == BoundPolicy::Divert) os << "# policy=divert\n";
  os << csv_header() << '\n';
  for (const auto& r : records) {
    os << csv_row(r) << '\n';
    if (r.error) err << "run failed: " << csv_row(r) << ": " << r.error_text << '\n';
  }
  if (!a.aggregate.empty()) {
    OutputTarget agg(a.aggregate, out);
    agg.get() << aggregate_csv(records);
  }
  return exit_code::kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Streaming edge coloring toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a stream file");
  g->add_option("--family", gen.family, "regular-bipartite | random-bipartite | regular-general | adversarial-frontload");
  g->add_option("--n", gen.n, "Vertices per side (bipartite) or total (general)")->required();
  g->add_option("--delta", gen.delta, "Maximum degree")->required();
  g->add_option("--mode", gen.mode, "edge | vertex-one-sided | vertex-two-sided | batch");
  g->add_option("--batch", gen.batch, "Batch size k (batch mode)");
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("-o,--output", gen.output, "Output path, - for stdout");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Color a stream");
  r->add_option("input", run.input, "Stream file, - for stdin")->required();
  r->add_option("--alg", run.alg, "one-sided | vertex-general | edge-sqrt | edge-general | offline-exact | offline-greedy");
  r->add_option("--s", run.s, "Space parameter for edge-general")->check(CLI::PositiveNumber);
  r->add_flag("--force-stream", run.force_stream, "Skip the small-delta offline fallback");
  r->add_option("--policy", run.policy, "strict | divert (bound violations)");
  r->add_option("--seed", run.seed, "Override the header seed");
  r->add_option("-o,--output", run.output, "Output path, - for stdout");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check an output against its stream");
  v->add_option("stream", ver.stream, "Stream file")->required();
  v->add_option("output", ver.output, "Output file")->required();
  v->add_option("--budget", ver.budget, "Declared palette size");

  KoutArgs kout;
  auto* k = app.add_subcommand("kout", "Monte Carlo for random k-out perfect matchings");
  k->add_option("--n", kout.n, "Left side size");
  k->add_option("--c", kout.c, "Right side factor, |U| = ceil(c n)");
  k->add_option("--k", kout.k, "Out-degree");
  k->add_option("--trials", kout.trials, "Trials");
  k->add_option("--seed", kout.seed, "Seed");
  k->add_option("--jobs", kout.jobs, "Worker threads")->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run an experiment grid, CSV to stdout");
  b->add_option("--config", bench.config, "Grid file")->required();
  b->add_option("--jobs", bench.jobs, "Worker threads")->check(CLI::PositiveNumber);
  b->add_flag("--no-timing", bench.no_timing, "Write millis as 0 (byte-stable output)");
  b->add_flag("--force-stream", bench.force_stream, "Force the streaming path in every run");
  b->add_option("--seed", bench.seed, "Override master_seed");
  b->add_option("-o,--output", bench.output, "CSV path, - for stdout");
  b->add_option("--aggregate", bench.aggregate, "Also write per-cell means/maxima here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? exit_code::kOk : exit_code::kFailed;
  }

  try {
    if (*g) return cmd_gen(gen, out);
    if (*r) return cmd_run(run, out, err);
    if (*v) return cmd_verify(ver, out);
    if (*k) return cmd_kout(kout, out);
    if (*b) return cmd_bench(bench, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kFailed;
  }
  return exit_code::kFailed;
}

}  // namespace streamcolor
