#include <catch2/catch_amalgamated.hpp>

#include "linerec/embedding.hpp"

using namespace linerec;

namespace {
const char* kSample =
    "# a commented instance\n"
    "3 2\n"
    "0 0\n"
    "2 6/2   # trailing comment\n"
    "1 1\n"
    "\n"
    "0 1\n"
    "1 2\n";
}

TEST_CASE("embedded graph validates positions") {
    Graph g(2, {{0, 1}});
    CHECK_THROWS_AS(EmbeddedGraph(g, {Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(EmbeddedGraph(g, {Rational(1), Rational(1)}), std::invalid_argument);
    CHECK_NOTHROW(EmbeddedGraph(g, {Rational(1), Rational(2)}));
}

TEST_CASE("distance map") {
    EmbeddedGraph eg(Graph(3, {{0, 1}, {1, 2}}),
                     {Rational(0), rat_parse("5/2"), Rational(1)});
    EdgeLengthMap m = distance_map(eg);
    CHECK(m.lengths.at(Edge(0, 1)) == rat_parse("5/2"));
    CHECK(m.lengths.at(Edge(1, 2)) == rat_parse("3/2"));
}

TEST_CASE("instance parsing strips comments and normalizes rationals") {
    EmbeddedGraph eg = read_instance(std::string(kSample));
    CHECK(eg.graph.vertex_count() == 3);
    CHECK(eg.graph.edge_count() == 2);
    CHECK(eg.positions[0] == Rational(0));
    CHECK(eg.positions[1] == Rational(1));
    CHECK(eg.positions[2] == Rational(3));
}

TEST_CASE("round-trip is byte-identical after one normalization") {
    std::string once = write_instance(read_instance(std::string(kSample)));
    std::string twice = write_instance(read_instance(once));
    CHECK(once == twice);
    CHECK(once == "3 2\n0 0\n1 1\n2 3\n0 1\n1 2\n");
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_error = [](const std::string& text, int line) {
        try {
            read_instance(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_error("", 0);                               // missing header
    expect_error("x y\n", 1);                          // bad header
    expect_error("2 0\n0 0\n", 2);                     // missing position line
    expect_error("2 0\n0 0\n5 1\n", 3);                // vertex out of range
    expect_error("2 0\n0 0\n0 1\n", 3);                // duplicate position
    expect_error("2 0\n0 0\n1 1/0\n", 3);              // zero denominator
    expect_error("2 1\n0 0\n1 1\n0 2\n", 4);           // edge endpoint out of range
    expect_error("2 1\n0 0\n1 1\n1 1\n", 4);           // self-loop
    expect_error("2 2\n0 0\n1 1\n0 1\n1 0\n", 5);      // duplicate edge
    expect_error("2 0\n0 3\n1 3\n", 3);                // coincident positions
}

TEST_CASE("writer emits the documented layout") {
    EmbeddedGraph eg(Graph(2, {{0, 1}}), {rat_parse("-1/2"), Rational(4)});
    CHECK(write_instance(eg) == "2 1\n0 -1/2\n1 4\n0 1\n");
}
