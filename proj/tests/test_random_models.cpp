#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "linerec/embedding.hpp"
#include "linerec/random_models.hpp"

using namespace linerec;

TEST_CASE("split_seed is deterministic and spreads streams") {
    CHECK(split_seed(1, 0) == split_seed(1, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(split_seed(42, s));
    CHECK(seen.size() == 1000);
    CHECK(split_seed(1, 7) != split_seed(2, 7));
}

TEST_CASE("conjugate solves the defining equation") {
    // independent oracle: Newton iteration on h(mu) = mu e^-mu - lambda e^-lambda
    auto newton = [](double lambda) {
        double target = lambda * std::exp(-lambda);
        double mu = 0.5;
        for (int i = 0; i < 100; ++i) {
            double f = mu * std::exp(-mu) - target;
            double df = (1 - mu) * std::exp(-mu);
            mu -= f / df;
            if (mu <= 0) mu = 1e-12;
            if (mu >= 1) mu = 1 - 1e-12;
        }
        return mu;
    };
    double prev = 1.0;
    for (double lambda = 1.01; lambda <= 5.0; lambda += 0.037) {
        double mu = conjugate(lambda);
        CHECK(mu > 0.0);
        CHECK(mu < 1.0);
        CHECK(std::abs(mu * std::exp(-mu) - lambda * std::exp(-lambda)) <= 1e-12);
        CHECK(mu == Catch::Approx(newton(lambda)).margin(1e-9));
        CHECK(mu < prev);  // strictly decreasing in lambda
        prev = mu;
    }
    CHECK_THROWS_AS(conjugate(1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_dlp_params(1.3, 0), std::invalid_argument);
}

TEST_CASE("gnp sampling") {
    CHECK(sample_gnp(6, 0.0, 1).edge_count() == 0);
    CHECK(sample_gnp(6, 1.0, 1).edge_count() == 15);
    CHECK_THROWS_AS(sample_gnp(6, 1.5, 1), std::invalid_argument);

    // determinism
    Graph a = sample_gnp(40, 0.2, 99), b = sample_gnp(40, 0.2, 99);
    CHECK(a.edges() == b.edges());
    CHECK(sample_gnp(40, 0.2, 100).edges() != a.edges());

    // edge count within 5 sigma of the binomial mean
    const int n = 200;
    const double p = 0.05;
    double total = double(n) * (n - 1) / 2;
    double mean = total * p, sigma = std::sqrt(total * p * (1 - p));
    long long edges = 0;
    const int reps = 20;
    for (int s = 0; s < reps; ++s) edges += sample_gnp(n, p, split_seed(5, s)).edge_count();
    CHECK(std::abs(edges / double(reps) - mean) <= 5 * sigma / std::sqrt(double(reps)));
}

TEST_CASE("dlp sampling produces a simple graph with the documented kernel") {
    DlpParams params = make_dlp_params(1.3, 20000);
    DlpSample s = sample_dlp(params, 7);
    REQUIRE_FALSE(s.degenerate);
    // Graph's constructor enforces simplicity; structure checks:
    for (int v = 0; v < s.kernel.vertex_count(); ++v) CHECK(s.kernel.degree(v) >= 3);
    CHECK(s.kd.kernel.vertex_count() == s.kernel.vertex_count());
    CHECK(s.kd.kernel.edge_count() == s.kernel.edge_count());
    long long mass = 0;
    for (long long d : s.degrees)
        if (d >= 3) mass += d;
    CHECK(mass % 2 == 0);
    CHECK(min_degree(s.graph) >= 2);

    // determinism
    DlpSample s2 = sample_dlp(params, 7);
    CHECK(s2.graph.edges() == s.graph.edges());
    CHECK(sample_dlp(params, 8).graph.edges() != s.graph.edges());
}

TEST_CASE("dlp degree and subdivision length statistics") {
    DlpParams params = make_dlp_params(1.3, 100000);
    // degrees are Poisson(lambda_value): empirical mean within 5 sigma
    DlpSample s = sample_dlp(params, 11);
    double sum = 0;
    for (long long d : s.degrees) sum += double(d);
    double mean = sum / double(params.n);
    double sigma = std::sqrt(s.lambda_value / double(params.n));
    CHECK(std::abs(mean - s.lambda_value) <= 5 * sigma);

    // subdivision lengths are 1 + Geometric(1 - mu); pool across seeds until
    // 1e5 draws, allowing an explicit slack for the simplicity resampling
    std::vector<double> lens;
    long long resampled = 0;
    for (std::uint64_t seed = 0; lens.size() < 100000; ++seed) {
        DlpSample t = sample_dlp(params, split_seed(13, seed));
        for (int l : t.kd.edge_path_lengths) lens.push_back(double(l));
        resampled += t.resampled_lengths;
    }
    double lsum = 0, lsq = 0;
    for (double l : lens) {
        lsum += l;
        lsq += l * l;
    }
    double lmean = lsum / double(lens.size());
    double lsd = std::sqrt(lsq / double(lens.size()) - lmean * lmean);
    double expected = 1.0 / (1.0 - params.mu);
    double tol = 5 * lsd / std::sqrt(double(lens.size())) +
                 3.0 * double(resampled) / double(lens.size());
    CHECK(std::abs(lmean - expected) <= tol);
}

TEST_CASE("embedding styles") {
    Graph g = sample_gnp(12, 0.3, 3);

    SECTION("generic positions have pairwise distinct distances") {
        EmbeddedGraph eg = random_embedding(g, EmbeddingStyle::kGeneric, 5);
        std::set<Rational> diffs;
        for (int a = 0; a < 12; ++a)
            for (int b = a + 1; b < 12; ++b)
                CHECK(diffs.insert(rat_abs(eg.positions[a] - eg.positions[b])).second);
    }
    SECTION("integer-range positions stay in the window") {
        EmbeddedGraph eg = random_embedding(g, EmbeddingStyle::kIntegerRange, 5, -4, 30);
        for (const Rational& x : eg.positions) {
            CHECK(rat_den(x) == 1);
            CHECK(x >= -4);
            CHECK(x <= 30);
        }
        CHECK_THROWS_AS(random_embedding(g, EmbeddingStyle::kIntegerRange, 5, 0, 5),
                        std::invalid_argument);
    }
    SECTION("arithmetic progression") {
        EmbeddedGraph eg = random_embedding(g, EmbeddingStyle::kArithmeticProgression, 5);
        std::vector<Rational> sorted = eg.positions;
        std::sort(sorted.begin(), sorted.end());
        Rational step = sorted[1] - sorted[0];
        for (std::size_t i = 1; i < sorted.size(); ++i)
            CHECK(sorted[i] - sorted[i - 1] == step);
    }
    SECTION("determinism is byte-identical") {
        EmbeddedGraph a = random_embedding(g, EmbeddingStyle::kGeneric, 77);
        EmbeddedGraph b = random_embedding(g, EmbeddingStyle::kGeneric, 77);
        CHECK(write_instance(a) == write_instance(b));
    }
    SECTION("style names parse") {
        CHECK(embedding_style_from_string("generic") == EmbeddingStyle::kGeneric);
        CHECK(embedding_style_from_string("integer-range") == EmbeddingStyle::kIntegerRange);
        CHECK(embedding_style_from_string("arithmetic-progression") ==
              EmbeddingStyle::kArithmeticProgression);
        CHECK_THROWS_AS(embedding_style_from_string("fancy"), std::invalid_argument);
    }
}
