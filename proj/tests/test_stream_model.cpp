#include <doctest.h>

#include <sstream>

#include "streamcolor/stream_model.hpp"

using namespace streamcolor;

namespace {

ErrorCode error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    StreamReader reader(in);
    while (reader.next()) {
    }
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("stream_model") {
  TEST_CASE("vertex arrival line maps to its neighbor list") {
    std::istringstream in("H 2 3 2 vertex-one-sided 0 42\nV 0 2 3\n");
    StreamReader reader(in);
    CHECK(reader.header().seed == 42);
    CHECK(reader.header().n_offline == 3);
    auto ev = reader.next();
    REQUIRE(ev);
    CHECK(ev->kind == EventKind::Vertex);
    CHECK(ev->u == 0);
    CHECK(ev->neighbors == std::vector<VertexId>{2, 3});
    CHECK_FALSE(reader.next());
  }

  TEST_CASE("empty vertex arrival is legal") {
    std::istringstream in("H 1 1 1 vertex-one-sided 0 0\nV 0\n");
    StreamReader reader(in);
    auto ev = reader.next();
    REQUIRE(ev);
    CHECK(ev->neighbors.empty());
  }

  TEST_CASE("reader errors") {
    CHECK(error_of("H 3 0 2 edge 0 1\ne 0 0\n") == ErrorCode::SelfLoop);
    CHECK(error_of("H 4 0 2 edge 0 1\ne 0 1\ne 0 2\ne 0 3\n") == ErrorCode::DegreeExceeded);
    CHECK(error_of("H 4 0 2 edge 0 1\ne 0 1\ne 1 0\n") == ErrorCode::DuplicateEdge);
    CHECK(error_of("H 2 2 2 vertex-one-sided 0 1\ne 0 2\n") == ErrorCode::ModeMismatch);
    CHECK(error_of("H 2 2 2 batch 2 1\nB 0 2\n") == ErrorCode::BatchSizeMismatch);
    CHECK(error_of("H 2 2 2 edge 0 1\ne 0 1\n") == ErrorCode::ModeMismatch);  // same side
    CHECK(error_of("H 2 2 2 edge 0 1\nx 0 1\n") == ErrorCode::MalformedLine);
    CHECK(error_of("e 0 1\n") == ErrorCode::MalformedLine);
    CHECK(error_of("H 2 2 0 edge 0 1\n") == ErrorCode::MalformedLine);
  }

  TEST_CASE("degree violation is reported at the violating line") {
    std::istringstream in("H 4 0 2 edge 0 1\ne 0 1\ne 0 2\ne 0 3\n");
    StreamReader reader(in);
    CHECK(reader.next());
    CHECK(reader.next());
    try {
      reader.next();
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegreeExceeded);
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
  }

  TEST_CASE("two-sided arrivals list only earlier vertices") {
    CHECK(error_of("H 3 0 2 vertex-two-sided 0 1\nV 0 1\n") == ErrorCode::ModeMismatch);
    std::istringstream ok("H 3 0 2 vertex-two-sided 0 1\nV 0\nV 1 0\nV 2 0 1\n");
    CHECK(read_stream(ok).events.size() == 3);
  }

  TEST_CASE("serialize after parse reproduces the text") {
    const std::string text =
        "H 2 2 2 batch 1 7\nB 0 2\nB 1 3\nB 0 3\n";
    std::istringstream in(text);
    CHECK(write_stream(read_stream(in)) == text);

    const std::string edges = "H 3 0 2 edge 0 9\ne 0 1\ne 1 2\ne 2 0\n";
    std::istringstream in2(edges);
    CHECK(write_stream(read_stream(in2)) == edges);
  }

  TEST_CASE("assignment lines and trailer") {
    std::ostringstream os;
    AssignmentWriter w(os);
    emit_assignment({0, 5, 17}, w);
    emit_assignment({1, 2, 0}, w);
    w.write_trailer(2, 9);
    CHECK(os.str() == "c 0 5 17\nc 1 2 0\nT 2 9\n");
    w.close();
    CHECK_THROWS_AS(w.emit({0, 1, 0}), Error);
    try {
      w.emit({0, 1, 0});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IoFailure);
    }

    std::istringstream back(os.str());
    const OutputFile out = read_output(back);
    CHECK(out.assignments.size() == 2);
    CHECK(out.assignments[0] == ColorAssignment{0, 5, 17});
    CHECK(out.colors_used == 2);
    CHECK(out.peak_words == 9);
  }

  TEST_CASE("output parse errors") {
    std::istringstream bad("c 0 1\n");
    CHECK_THROWS_AS(read_output(bad), Error);
    std::istringstream late("T 1 1\nc 0 1 0\n");
    CHECK_THROWS_AS(read_output(late), Error);
  }
}
