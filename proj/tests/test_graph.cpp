#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "linerec/graph.hpp"

using namespace linerec;

namespace {
Graph cycle(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
}

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0, 1);
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (unit(rng) < p) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}
}  // namespace

TEST_CASE("graph construction validates input") {
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{-1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(-1, {}), std::invalid_argument);
    CHECK_NOTHROW(Graph(0, {}));
}

TEST_CASE("edges are sorted and queries agree") {
    Graph g(4, {{3, 2}, {1, 0}, {0, 2}});
    CHECK(g.edge(0) == Edge(0, 1));
    CHECK(g.edge(1) == Edge(0, 2));
    CHECK(g.edge(2) == Edge(2, 3));
    CHECK(g.has_edge(2, 3));
    CHECK(g.has_edge(3, 2));
    CHECK_FALSE(g.has_edge(1, 3));
    CHECK(g.edge_index(0, 2) == 1);
    CHECK(g.edge_index(1, 3) == -1);
    CHECK(g.degree(0) == 2);
    CHECK(g.degree(3) == 1);
}

TEST_CASE("multigraph loops contribute two to the degree") {
    MultiGraph mg(2, {{0, 0}, {0, 1}, {1, 0}});
    CHECK(mg.degree(0) == 4);
    CHECK(mg.degree(1) == 2);
    CHECK_THROWS_AS(MultiGraph(1, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("components") {
    Graph g(5, {{0, 1}, {2, 3}});
    auto ids = component_ids(g);
    CHECK(ids == std::vector<int>{0, 0, 1, 1, 2});
    CHECK(component_count(g) == 3);
    CHECK_FALSE(is_connected(g));
    CHECK(is_connected(cycle(4)));
    CHECK(connected_components(g) ==
          std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4}});
}

TEST_CASE("spanning forest covers every component") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        Graph g = random_graph(1 + int(rng() % 10), 0.3, rng);
        SpanningForest f = spanning_forest(g);
        CHECK(static_cast<int>(f.order.size()) == g.vertex_count());
        CHECK(static_cast<int>(f.tree_edges.size()) ==
              g.vertex_count() - component_count(g));
        for (int v = 0; v < g.vertex_count(); ++v)
            if (f.parent[v] >= 0) CHECK(g.edge(f.parent_edge[v]).other(v) == f.parent[v]);
    }
}

TEST_CASE("cycle basis has size |E| - |V| + components and consists of cycles") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 1000; ++t) {
        int n = 1 + int(rng() % 12);
        Graph g = random_graph(n, 0.35, rng);
        auto basis = cycle_basis(g);
        CHECK(static_cast<int>(basis.size()) ==
              g.edge_count() - g.vertex_count() + component_count(g));
        for (const auto& cyc : basis) {
            REQUIRE(cyc.size() >= 3);
            std::set<int> distinct(cyc.begin(), cyc.end());
            CHECK(distinct.size() == cyc.size());
            for (std::size_t i = 0; i < cyc.size(); ++i)
                CHECK(g.has_edge(cyc[i], cyc[(i + 1) % cyc.size()]));
        }
    }
}

TEST_CASE("induced subgraph relabels edges") {
    Graph g = cycle(5);
    std::vector<int> map;
    Graph sub = induced_subgraph(g, {1, 2, 4}, &map);
    CHECK(sub.vertex_count() == 3);
    CHECK(sub.edge_count() == 1);
    CHECK(sub.has_edge(0, 1));  // the old edge {1,2}
    CHECK(map[1] == 0);
    CHECK(map[2] == 1);
    CHECK(map[4] == 2);
    CHECK(map[0] == -1);
}

TEST_CASE("biconnected components of known graphs") {
    SECTION("a path splits into bridge blocks") {
        Graph p(4, {{0, 1}, {1, 2}, {2, 3}});
        BlockDecomposition bd = biconnected_components(p);
        REQUIRE(bd.block_vertices.size() == 3);
        std::set<std::vector<int>> blocks(bd.block_vertices.begin(), bd.block_vertices.end());
        CHECK(blocks == std::set<std::vector<int>>{{0, 1}, {1, 2}, {2, 3}});
        CHECK(bd.is_cut == std::vector<char>{0, 1, 1, 0});
    }
    SECTION("a cycle is one block") {
        BlockDecomposition bd = biconnected_components(cycle(5));
        REQUIRE(bd.block_vertices.size() == 1);
        CHECK(bd.block_vertices[0] == std::vector<int>{0, 1, 2, 3, 4});
        CHECK(bd.block_edges[0].size() == 5);
        for (char c : bd.is_cut) CHECK(c == 0);
    }
    SECTION("two triangles sharing a vertex") {
        Graph bowtie(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
        BlockDecomposition bd = biconnected_components(bowtie);
        REQUIRE(bd.block_vertices.size() == 2);
        std::set<std::vector<int>> blocks(bd.block_vertices.begin(), bd.block_vertices.end());
        CHECK(blocks == std::set<std::vector<int>>{{0, 1, 2}, {2, 3, 4}});
        CHECK(bd.is_cut == std::vector<char>{0, 0, 1, 0, 0});
    }
}

TEST_CASE("biconnected components partition the edge set") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 300; ++t) {
        Graph g = random_graph(2 + int(rng() % 10), 0.3, rng);
        BlockDecomposition bd = biconnected_components(g);
        std::vector<int> seen(g.edge_count(), 0);
        for (std::size_t b = 0; b < bd.block_edges.size(); ++b) {
            for (int ei : bd.block_edges[b]) ++seen[ei];
            // each block is connected and spans exactly its vertex list
            std::set<int> vs;
            for (int ei : bd.block_edges[b]) {
                vs.insert(g.edge(ei).u);
                vs.insert(g.edge(ei).v);
            }
            CHECK(std::vector<int>(vs.begin(), vs.end()) == bd.block_vertices[b]);
        }
        for (int c : seen) CHECK(c == 1);
    }
}

TEST_CASE("girth") {
    CHECK(girth(cycle(3)) == 3);
    CHECK(girth(cycle(5)) == 5);
    CHECK(girth(Graph(4, {{0, 1}, {1, 2}, {2, 3}})) == -1);
    // C5 plus a chord creates a triangle or a C3/C4 pair
    Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}});
    CHECK(girth(g) == 3);
    // Petersen graph
    std::vector<Edge> pe;
    for (int i = 0; i < 5; ++i) {
        pe.emplace_back(i, (i + 1) % 5);
        pe.emplace_back(i, i + 5);
        pe.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    CHECK(girth(Graph(10, std::move(pe))) == 5);
}

TEST_CASE("degree extremes") {
    Graph g(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(min_degree(g) == 1);
    CHECK(max_degree(g) == 3);
    CHECK(min_degree(Graph(0, {})) == 0);
}
