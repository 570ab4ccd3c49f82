#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "streamcolor/cli.hpp"
#include "streamcolor/error.hpp"

using namespace streamcolor;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "streamcolor");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("streamcolor_cli_" + std::to_string(std::hash<std::string>{}(
                                     std::to_string(reinterpret_cast<std::uintptr_t>(this)) +
                                     std::to_string(std::rand()))));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exit code table") {
    CHECK(exit_code_for(ErrorCode::InfeasibleSpec) == 2);
    CHECK(exit_code_for(ErrorCode::ModeMismatch) == 3);
    CHECK(exit_code_for(ErrorCode::DegreeExceeded) == 3);
    CHECK(exit_code_for(ErrorCode::BoundViolation) == 4);
    CHECK(exit_code_for(ErrorCode::FlushBudgetExceeded) == 4);
    CHECK(exit_code_for(ErrorCode::MalformedLine) == 5);
    CHECK(exit_code_for(ErrorCode::ParseError) == 5);
    CHECK(exit_code_for(ErrorCode::InvalidArgument) == 1);
  }

  TEST_CASE("gen, run and verify round trip") {
    TempDir dir;
    const auto stream = dir.file("s.txt"), colored = dir.file("c.txt");
    REQUIRE(cli({"gen", "--family", "regular-bipartite", "--n", "40", "--delta", "9", "--mode",
                 "vertex-one-sided", "--seed", "3", "-o", stream})
                .code == 0);
    const auto run = cli({"run", stream, "--alg", "one-sided", "-o", colored});
    CHECK(run.code == 0);
    CHECK(run.err.find("budget") != std::string::npos);
    const auto ver = cli({"verify", stream, colored});
    CHECK(ver.code == 0);

    // Gen to stdout matches the file.
    const auto again = cli({"gen", "--family", "regular-bipartite", "--n", "40", "--delta", "9",
                            "--mode", "vertex-one-sided", "--seed", "3"});
    CHECK(again.out == slurp(stream));
  }

  TEST_CASE("every edge preset runs on an edge stream") {
    TempDir dir;
    const auto stream = dir.file("s.txt");
    REQUIRE(cli({"gen", "--family", "regular-general", "--n", "60", "--delta", "16", "--seed", "2",
                 "-o", stream})
                .code == 0);
    for (const char* alg : {"edge-sqrt", "edge-general", "offline-exact", "offline-greedy"}) {
      const auto out = dir.file(std::string(alg) + ".txt");
      const auto r = cli({"run", stream, "--alg", alg, "--s", "2", "--force-stream", "--policy",
                          "divert", "-o", out});
      CHECK_MESSAGE(r.code == 0, alg, r.err);
      CHECK(cli({"verify", stream, out}).code == 0);
    }
  }

  TEST_CASE("infeasible generation") {
    const auto r = cli({"gen", "--family", "regular-general", "--n", "5", "--delta", "5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("InfeasibleSpec") != std::string::npos);
    CHECK(cli({"gen", "--n", "5", "--delta", "0"}).code == 2);
  }

  TEST_CASE("mode mismatch and bad streams") {
    TempDir dir;
    const auto stream = dir.file("s.txt");
    REQUIRE(cli({"gen", "--n", "20", "--delta", "4", "-o", stream}).code == 0);
    const auto r = cli({"run", stream, "--alg", "one-sided"});
    CHECK(r.code == 3);
    // Single prefix in the message.
    CHECK(r.err.find("ModeMismatch: ModeMismatch") == std::string::npos);

    const auto bad = dir.file("bad.txt");
    write(bad, "H 2 2 1 edge 0 0\ne 0 2\ne 0 3\n");
    CHECK(cli({"run", bad, "--alg", "offline-greedy"}).code == 3);
    write(bad, "this is not a stream\n");
    CHECK(cli({"run", bad, "--alg", "offline-greedy"}).code == 5);
  }

  TEST_CASE("verify failures") {
    TempDir dir;
    const auto stream = dir.file("s.txt"), colored = dir.file("c.txt");
    write(stream, "H 2 2 2 edge 0 0\ne 0 2\ne 0 3\n");
    write(colored, "c 0 2 0\nc 0 3 1\n");
    CHECK(cli({"verify", stream, colored}).code == 0);
    CHECK(cli({"verify", stream, colored, "--budget", "1"}).code == 1);
    write(colored, "c 0 2 0\nc 0 3 0\n");
    CHECK(cli({"verify", stream, colored}).code == 1);
    write(colored, "c 0 2 0\n");
    const auto trunc = cli({"verify", stream, colored});
    CHECK(trunc.code == 1);
    write(colored, "c 0 two 0\n");
    CHECK(cli({"verify", stream, colored}).code == 5);
    // An unreadable file is an I/O failure, not a parse error.
    CHECK(cli({"verify", stream, dir.file("missing.txt")}).code == 1);
  }

  TEST_CASE("kout") {
    const auto r = cli({"kout", "--n", "1", "--c", "3", "--trials", "50"});
    CHECK(r.code == 0);
    CHECK(r.out.find("n,u_size,k,trials,failures,rate,ci_low,ci_high") == 0);
    CHECK(r.out.find("\n1,3,3,50,0,0,") != std::string::npos);
  }

  TEST_CASE("bench output is byte-stable without timing") {
    TempDir dir;
    const auto cfg = dir.file("grid.cfg");
    write(cfg,
          "presets = one-sided, edge-sqrt, edge-general\n"
          "families = regular-bipartite\n"
          "n = 48\n"
          "delta = 16\n"
          "s = 1, sqrt\n"
          "seeds = 2\n"
          "master_seed = 4\n"
          "policy = divert\n");
    const auto a = cli({"bench", "--config", cfg, "--no-timing", "--force-stream"});
    const auto b = cli({"bench", "--config", cfg, "--no-timing", "--force-stream", "--jobs", "2"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# force_stream=true") != std::string::npos);
    CHECK(a.out.find("preset,family,n,delta,s,seed,proper") != std::string::npos);
    // 2 one-sided + 2 edge-sqrt + 2x2 edge-general rows.
    std::size_t rows = 0;
    std::istringstream in(a.out);
    for (std::string line; std::getline(in, line);)
      if (line.rfind("one-sided,", 0) == 0 || line.rfind("edge-", 0) == 0) ++rows;
    CHECK(rows == 8);

    const auto c = cli({"bench", "--config", cfg, "--no-timing", "--force-stream", "--seed", "5"});
    CHECK(c.out != a.out);
  }

  TEST_CASE("seed from the environment") {
    const auto base = cli({"gen", "--n", "30", "--delta", "5", "--seed", "8"});
    ::setenv("STREAMCOLOR_SEED", "8", 1);
    const auto env = cli({"gen", "--n", "30", "--delta", "5", "--seed", "1"});
    ::unsetenv("STREAMCOLOR_SEED");
    CHECK(base.out == env.out);
  }

  TEST_CASE("usage errors") {
    CHECK(cli({}).code != 0);
    CHECK(cli({"gen", "--n", "x", "--delta", "3"}).code != 0);
    CHECK(cli({"run", "nonexistent-file", "--alg", "edge-sqrt"}).code != 0);
  }
}
