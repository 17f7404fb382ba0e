#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "linerec/decompose.hpp"
#include "linerec/random_models.hpp"

using namespace linerec;

namespace {
Graph c4g() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
Graph k4g() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// two degree-3 vertices joined by three internally disjoint paths of
// lengths 1, 2 and 2
Graph theta() { return Graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}}); }

Graph petersen() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return Graph(10, std::move(e));
}

std::multiset<int> sorted_multiset(const std::vector<int>& v) {
    return std::multiset<int>(v.begin(), v.end());
}
}  // namespace

TEST_CASE("two-core peels trees and is idempotent") {
    // triangle with a pendant path
    Graph g(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
    std::vector<int> vmap;
    Graph core = two_core(g, &vmap);
    CHECK(vmap == std::vector<int>{0, 1, 2});
    CHECK(core.edge_count() == 3);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        Graph r = sample_gnp(1 + int(rng() % 12), 0.3, rng());
        Graph c1 = two_core(r);
        Graph c2 = two_core(c1);
        CHECK(c1.vertex_count() == c2.vertex_count());
        CHECK(c1.edges() == c2.edges());
        if (c1.vertex_count() > 0) CHECK(min_degree(c1) >= 2);
    }
    CHECK(two_core(Graph(4, {{0, 1}, {1, 2}})).vertex_count() == 0);
}

TEST_CASE("kernel of the theta graph") {
    KernelDecomposition kd = kernelize(theta());
    CHECK(kd.two_core.vertex_count() == 4);
    CHECK(kd.kernel.vertex_count() == 2);
    CHECK(kd.kernel.edge_count() == 3);
    CHECK(sorted_multiset(kd.edge_path_lengths) == std::multiset<int>{1, 2, 2});
    CHECK(kd.cycle_components.empty());
    // every bare path starts and ends at a kernel vertex
    std::set<int> kset(kd.kernel_vertex_map.begin(), kd.kernel_vertex_map.end());
    for (const auto& p : kd.bare_paths) {
        CHECK(kset.count(p.front()) == 1);
        CHECK(kset.count(p.back()) == 1);
    }
}

TEST_CASE("kernelize is stable under pre-coring and finds pure cycles") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 120; ++t) {
        Graph g = sample_gnp(2 + int(rng() % 11), 0.35, rng());
        KernelDecomposition a = kernelize(g);
        KernelDecomposition b = kernelize(two_core(g));
        CHECK(a.kernel.vertex_count() == b.kernel.vertex_count());
        CHECK(a.kernel.edge_count() == b.kernel.edge_count());
        CHECK(sorted_multiset(a.edge_path_lengths) == sorted_multiset(b.edge_path_lengths));
        // path lengths plus cycle lengths account for every core edge
        long long total = 0;
        for (int l : a.edge_path_lengths) total += l;
        for (const auto& c : a.cycle_components) total += static_cast<long long>(c.size());
        CHECK(total == a.two_core.edge_count());
        for (int v = 0; v < a.kernel.vertex_count(); ++v) CHECK(a.kernel.degree(v) >= 3);
    }
    KernelDecomposition cyc = kernelize(c4g());
    CHECK(cyc.kernel.vertex_count() == 0);
    REQUIRE(cyc.cycle_components.size() == 1);
    CHECK(cyc.cycle_components[0].size() == 4);
}

TEST_CASE("bare path lengths cover every edge") {
    CHECK(sorted_multiset(bare_path_lengths(theta())) == std::multiset<int>{1, 2, 2});
    CHECK(sorted_multiset(bare_path_lengths(c4g())) == std::multiset<int>{4});
    std::mt19937_64 rng(11);
    for (int t = 0; t < 150; ++t) {
        Graph g = sample_gnp(1 + int(rng() % 11), 0.35, rng());
        std::vector<int> lens = bare_path_lengths(g);
        CHECK(std::accumulate(lens.begin(), lens.end(), 0) == g.edge_count());
    }
}

TEST_CASE("exact expansion of named graphs") {
    CHECK(expansion_exact(k4g()).phi == rat_parse("2/3"));
    CHECK(expansion_exact(c4g()).phi == rat_parse("1/2"));
    ExpansionReport iso = expansion_exact(Graph(3, {}));
    CHECK(iso.phi == Rational(0));
}

TEST_CASE("exact expansion matches an independent brute force") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + int(rng() % 8);
        Graph g = sample_gnp(n, 0.45, rng());
        ExpansionReport rep = expansion_exact(g);
        bool have = false;
        Rational best;
        for (int mask = 1; mask < (1 << n); ++mask) {
            if (2 * __builtin_popcount(mask) > n) continue;
            long long cut = 0, d = 0;
            for (const Edge& e : g.edges())
                if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) ++cut;
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1) d += g.degree(v);
            Rational phi = d == 0 ? Rational(0) : Rational(cut, d);
            if (!have || phi < best) {
                have = true;
                best = phi;
            }
        }
        CHECK(rep.phi == best);
        // the witness set attains the reported value
        std::vector<char> in_s(n, 0);
        for (int v : rep.witness_set) in_s[v] = 1;
        CHECK(detail::phi_of(g, in_s) == rep.phi);
    }
    CHECK_THROWS_AS(expansion_exact(sample_gnp(25, 0.2, 1)), std::invalid_argument);
}

TEST_CASE("sampled expansion upper-bounds the exact value") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        Graph g = sample_gnp(2 + int(rng() % 8), 0.5, rng());
        ExpansionReport ex = expansion_exact(g);
        ExpansionReport sm = expansion_sampled(g, rng());
        CHECK_FALSE(sm.exact);
        if (!sm.witness_set.empty()) CHECK(sm.phi >= ex.phi);
    }
}

TEST_CASE("prune ledger obeys the per-step rules") {
    std::mt19937_64 rng(19);
    int runs = 0;
    while (runs < 60) {
        int n = 6 + int(rng() % 8);
        Graph g = sample_gnp(n, 0.7, rng());
        if (min_degree(g) < 3) continue;
        // the rule-2 inequality presumes G is a c-expander, so cap c by the
        // true expansion constant
        Rational phi = expansion_exact(g).phi;
        if (!(phi > 0)) continue;
        std::vector<Edge> removed;
        for (const Edge& e : g.edges())
            if (rng() % 10 == 0) removed.push_back(e);
        Rational c = std::min(std::min(phi, Rational(1)), Rational(1 + int(rng() % 10), 10));
        PruneResult res = prune(g, removed, c);
        for (const PruneStep& step : res.log) {
            if (step.rule == 1) {
                CHECK(step.weight_after <= step.weight_before);
            } else {
                // weight drops by at least 4c|S|/5
                CHECK(Rational(step.weight_before - step.weight_after) >=
                      4 * c * static_cast<long long>(step.removed.size()) / 5);
            }
            CHECK(step.weight_after >= 0);
        }
        if (res.result.vertex_count() > 0) CHECK(min_degree(res.result) >= 2);
        ++runs;
    }
}

TEST_CASE("prune keeps a good expander intact") {
    PruneResult res = prune(petersen(), {}, Rational(1));
    CHECK(res.precondition);
    CHECK(res.kept_vertices.size() == 10);
    CHECK(res.size_ok);
    CHECK(res.min_deg_ok);
    CHECK(res.deg3_ok);
    CHECK(res.expander_ok);
    CHECK(res.expander_exact);
    CHECK_THROWS_AS(prune(c4g(), {}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(prune(petersen(), {}, Rational(2)), std::invalid_argument);
    CHECK_THROWS_AS(prune(petersen(), {Edge(0, 7)}, Rational(1)), std::invalid_argument);
}

TEST_CASE("ln bracket contains the logarithm") {
    for (double x : {0.5, 1.0, 2.0, 10.0, 12345.678}) {
        auto [lo, hi] = ln_bounds(x);
        CHECK(rat_to_double(lo) <= std::log(x));
        CHECK(rat_to_double(hi) >= std::log(x));
    }
    CHECK_THROWS_AS(ln_bounds(0.0), std::invalid_argument);
}

TEST_CASE("good graph check on the Petersen graph") {
    GoodGraphReport rep = good_graph_check(petersen(), 1000000, rat_parse("3/10"),
                                           rat_parse("1/10"));
    CHECK(rep.expander_ok);
    CHECK(rep.degree_ok);
    CHECK(rep.edge_cut_ok);
    CHECK(rep.neighborhood_ok);
    CHECK(rep.bare_path_ok);
    CHECK(rep.exhaustive);
    // girth 5 fails against ln(1e6)/(2 eps) = 23
    CHECK_FALSE(rep.girth_ok);
    CHECK_FALSE(rep.overall);
    CHECK_FALSE(rep.edge_cut_vacuous_reading);
    // a bridge breaks 2-edge-connectivity
    GoodGraphReport bridged = good_graph_check(Graph(3, {{0, 1}, {1, 2}}), 100,
                                               rat_parse("3/10"), rat_parse("1/10"));
    CHECK_FALSE(bridged.edge_cut_ok);
}

TEST_CASE("partition statistics of 4-cycle blocks") {
    // blocks {0}, {1}, {2,3}: cross edges (0,1), (1,2), (0,3) form one
    // component touching all four vertices; {0} and {1} share a cross edge
    PartitionStats st = partition_stats(c4g(), {{0}, {1}, {2, 3}});
    CHECK(st.v_prime == 4);
    CHECK(st.c1 == 2);
    CHECK(st.c2 == 1);
    CHECK(st.super_blocks == 1);
    // the disconnected block {1,3} is rejected
    CHECK_THROWS_AS(partition_stats(c4g(), {{0}, {2}, {1, 3}}), std::invalid_argument);
    // v' = 0 iff a single block
    PartitionStats whole = partition_stats(c4g(), {{0, 1, 2, 3}});
    CHECK(whole.v_prime == 0);
    CHECK(whole.c1 == 0);
    CHECK_THROWS_AS(partition_stats(c4g(), {{0, 2}, {1, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(partition_stats(c4g(), {{0, 1}}), std::invalid_argument);
}

TEST_CASE("partition statistics invariants on random partitions") {
    std::mt19937_64 rng(23);
    int done = 0;
    while (done < 100) {
        int n = 3 + int(rng() % 7);
        Graph g = sample_gnp(n, 0.6, rng());
        if (!is_connected(g)) continue;
        int k = 1 + int(rng() % 3);
        std::vector<std::vector<int>> blocks(k);
        for (int v = 0; v < n; ++v) blocks[rng() % k].push_back(v);
        bool valid = true;
        for (const auto& b : blocks)
            valid = valid && !b.empty() && is_connected(induced_subgraph(g, b));
        if (!valid) continue;
        PartitionStats st = partition_stats(g, blocks);
        CHECK(st.v_prime >= 2 * st.c2);
        CHECK(st.v_prime - st.c2 - st.c1 >= 0);  // the witness exponent
        CHECK((st.v_prime == 0) == (k == 1));
        ++done;
    }
}

TEST_CASE("connected partition counts on small graphs") {
    Graph path3(3, {{0, 1}, {1, 2}});
    CHECK(count_partitions_f(path3, {1}) == 2);
    Graph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(count_partitions_f(tri, {1}) == 3);
    // sizes exhausting the graph leave no S_k
    CHECK(count_partitions_f(tri, {1, 1, 1}) == 0);
    CHECK(count_partitions_f(tri, {2, 1}) == 0);
    CHECK_THROWS_AS(count_partitions_f(tri, {0}), std::invalid_argument);
    CHECK_THROWS_AS(count_partitions_f(sample_gnp(13, 0.5, 1), {1}), std::invalid_argument);
}
