#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "streamcolor/error.hpp"
#include "streamcolor/experiments.hpp"
#include "streamcolor/generate.hpp"
#include "streamcolor/offline_color.hpp"
#include "streamcolor/palette.hpp"
#include "streamcolor/pipeline.hpp"
#include "streamcolor/verify.hpp"

namespace py = pybind11;
using namespace streamcolor;

namespace {

using Triple = std::tuple<VertexId, VertexId, Color>;

StreamFile parse_stream(const std::string& text) {
  std::istringstream in(text);
  return read_stream(in);
}

BoundPolicy parse_policy(const std::string& p) {
  if (p == "strict") return BoundPolicy::Strict;
  if (p == "divert") return BoundPolicy::Divert;
  fail(ErrorCode::InvalidArgument, "policy is strict or divert");
}

py::dict report_dict(const VerifyReport& r) {
  py::dict d;
  d["ok"] = r.ok();
  d["proper"] = r.proper;
  d["complete"] = r.complete;
  d["within_budget"] = r.within_budget;
  d["edges"] = r.edges;
  d["assignments"] = r.assignments;
  d["colors_used"] = r.colors_used;
  d["max_color"] = r.max_color ? py::object(py::int_(*r.max_color)) : py::object(py::none());
  d["missing"] = r.missing.size();
  d["duplicates"] = r.duplicates.size();
  d["extraneous"] = r.extraneous.size();
  d["conflicts"] = r.conflicts.size();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Streaming edge coloring: generators, algorithms, verifier and experiments.";

  auto err = py::register_exception<Error>(m, "StreamColorError", PyExc_RuntimeError);
  (void)err;

  m.def("palette_period", [](std::uint32_t delta) { return PaletteParams::for_degree(delta).period; },
        py::arg("delta"), "P = ceil(2.72 * delta).");

  m.def(
      "generate",
      [](const std::string& family, std::uint32_t n, std::uint32_t delta, const std::string& mode,
         std::uint32_t batch_size, std::uint64_t seed) {
        return write_stream(
            generate({parse_family(family), n, delta, parse_mode(mode), batch_size, seed}));
      },
      py::arg("family"), py::arg("n"), py::arg("delta"), py::arg("mode") = "edge",
      py::arg("batch_size") = 0, py::arg("seed") = 0, "Stream file text for a generator spec.");

  m.def(
      "stream_edges",
      [](const std::string& stream) {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (const auto& e : stream_edges(parse_stream(stream))) out.emplace_back(e.u, e.v);
        return out;
      },
      py::arg("stream"));

  m.def(
      "run",
      [](const std::string& stream, const std::string& alg, std::uint32_t s, bool force_stream,
         const std::string& policy, std::optional<std::uint64_t> seed) {
        const StreamFile file = parse_stream(stream);
        RunOptions opts;
        opts.preset = parse_preset(alg);
        opts.s = s;
        opts.force_stream = force_stream;
        opts.policy = parse_policy(policy);
        opts.seed = seed;
        Assignments out;
        RunSummary sum;
        {
          py::gil_scoped_release release;
          sum = run_events(file, opts, &out);
        }
        std::vector<Triple> colors;
        colors.reserve(out.size());
        for (const auto& a : out) colors.emplace_back(a.u, a.v, a.color);
        py::dict d;
        d["assignments"] = colors;
        d["edges"] = sum.edges;
        d["colors_used"] = sum.colors_used;
        d["budget"] = sum.budget;
        d["peak_words"] = sum.peak_words;
        d["spilled_vertices"] = sum.spill.spilled_vertices;
        d["spilled_edges"] = sum.spill.spilled_edges;
        d["bound_breaches"] = sum.bound_breaches;
        d["notes"] = sum.notes;
        return d;
      },
      py::arg("stream"), py::arg("alg"), py::arg("s") = 1, py::arg("force_stream") = false,
      py::arg("policy") = "strict", py::arg("seed") = py::none(),
      "Colors a stream; returns the assignments and the run summary.");

  m.def(
      "verify",
      [](const std::string& stream, const std::vector<Triple>& assignments,
         std::optional<Color> budget) {
        Assignments as;
        as.reserve(assignments.size());
        for (const auto& [u, v, c] : assignments) as.push_back({u, v, c});
        return report_dict(verify(stream_edges(parse_stream(stream)), as, budget));
      },
      py::arg("stream"), py::arg("assignments"), py::arg("budget") = py::none());

  m.def(
      "color_offline",
      [](const std::vector<std::pair<VertexId, VertexId>>& edges, const std::string& method) {
        OfflineGraph g;
        for (const auto& [u, v] : edges) g.edges.push_back({u, v});
        if (method == "bipartite") {
          g.oriented = true;
          return color_bipartite_exact(g);
        }
        if (method == "general") return color_general(g);
        if (method == "greedy") return color_greedy(g);
        fail(ErrorCode::InvalidArgument, "method is bipartite, general or greedy");
      },
      py::arg("edges"), py::arg("method") = "general",
      "Per-edge colors; 'bipartite' reads each pair as (left, right).");

  m.def(
      "kout",
      [](std::uint32_t n, const std::string& c, std::uint32_t k, std::uint64_t trials,
         std::uint64_t seed, unsigned jobs) {
        KoutResult r;
        {
          py::gil_scoped_release release;
          r = run_kout_experiment(n, parse_decimal(c), k, trials, seed, jobs);
        }
        py::dict d;
        d["n"] = r.n;
        d["u_size"] = r.u_size;
        d["k"] = r.k;
        d["trials"] = r.trials;
        d["failures"] = r.failures;
        d["rate"] = r.rate;
        d["ci"] = py::make_tuple(r.ci.low, r.ci.high);
        return d;
      },
      py::arg("n"), py::arg("c") = "2.72", py::arg("k") = 3, py::arg("trials") = 10000,
      py::arg("seed") = 0, py::arg("jobs") = 1);

  m.def(
      "bench",
      [](const std::string& config, unsigned jobs, bool timing) {
        std::istringstream in(config);
        const BenchConfig cfg = parse_bench_config(in);
        std::vector<RunRecord> records;
        {
          py::gil_scoped_release release;
          records = run_suite(expand_grid(cfg), jobs, timing);
        }
        std::string csv = csv_header() + "\n";
        for (const auto& r : records) csv += csv_row(r) + "\n";
        return csv;
      },
      py::arg("config"), py::arg("jobs") = 1, py::arg("timing") = false,
      "Runs a bench grid given as config text; returns the CSV table.");
}
