#include <doctest.h>

#include "igk/error.hpp"
#include "igk/evaluation.hpp"
#include "test_support.hpp"

using namespace igk;

namespace {

Centroids centers(const oracle::Rows& rows) { return Centroids(PointMatrix::from_rows(rows)); }
GroundTruth truth_of(const oracle::Rows& rows) { return GroundTruth{PointMatrix::from_rows(rows)}; }

}  // namespace

TEST_CASE("centroid matching examples") {
    const auto m = match_centroids(centers({{1, 0}, {0, 0}}), truth_of({{0, 0}, {1, 1}}));
    CHECK(m.pairing == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
    CHECK(m.total_sq_dist == 1.0);
    CHECK(centroid_mse(centers({{1, 0}, {0, 0}}), truth_of({{0, 0}, {1, 1}})) == 0.5);

    const auto e = match_centroids(centers({{0, 0}, {10, 0}}), truth_of({{1, 0}, {10, 0}}));
    CHECK(e.total_sq_dist == 1.0);
    CHECK(centroid_mse(centers({{0, 0}, {10, 0}}), truth_of({{1, 0}, {10, 0}})) == 0.5);

    const auto swapped = match_centroids(centers({{0, 0}, {10, 0}}), truth_of({{10, 0}, {0, 1}}));
    CHECK(swapped.pairing == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
    CHECK(swapped.total_sq_dist == 1.0);

    SUBCASE("rectangular matching leaves the far center out") {
        const auto r = match_centroids(centers({{0, 0}, {50, 50}, {10, 0}}), truth_of({{10, 0}, {0, 0}}));
        CHECK(r.pairing == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 0}});
        CHECK(r.unmatched_estimated == std::vector<std::size_t>{1});
        CHECK(r.unmatched_true.empty());
        CHECK(r.total_sq_dist == 0.0);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(match_centroids(centers({{0, 0}}), truth_of({{0, 0, 0}})), DimensionMismatch);
    }
}

TEST_CASE("matching cost equals exhaustive permutation search") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> size(1, 7);
    for (int trial = 0; trial < 150; ++trial) {
        const auto est = testing::random_rows(rng, size(rng), 2);
        const auto tru = testing::random_rows(rng, size(rng), 2);
        const auto m = match_centroids(centers(est), truth_of(tru));
        CHECK(m.total_sq_dist == doctest::Approx(oracle::best_matching_cost(est, tru)).epsilon(1e-12));
        CHECK(m.pairing.size() == std::min(est.size(), tru.size()));
        CHECK(m.pairing.size() + m.unmatched_estimated.size() == est.size());
        CHECK(m.pairing.size() + m.unmatched_true.size() == tru.size());
    }
}

TEST_CASE("MSE is invariant to center order and common translation") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        auto est = testing::random_rows(rng, 5, 3);
        auto tru = testing::random_rows(rng, 5, 3);
        const double base = centroid_mse(centers(est), truth_of(tru));
        auto shuffled = est;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(centroid_mse(centers(shuffled), truth_of(tru)) == doctest::Approx(base).epsilon(1e-12));
        for (auto& r : est) r[0] += 3.25;
        for (auto& r : tru) r[0] += 3.25;
        CHECK(centroid_mse(centers(est), truth_of(tru)) == doctest::Approx(base).epsilon(1e-9));
        CHECK(centroid_mse(centers(tru), truth_of(tru)) == 0.0);
    }
}

TEST_CASE("median") {
    CHECK(median({3.0}) == 3.0);
    CHECK(median({5.0, 1.0, 3.0}) == 3.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK_THROWS_AS(median({}), InvalidArgument);
}

TEST_CASE("method names round-trip") {
    for (auto m : {Method::kmeans, Method::igk, Method::odin, Method::orc, Method::proposed}) {
        CHECK(parse_method(method_name(m)) == m);
    }
    CHECK_FALSE(parse_method("dbscan").has_value());
}

TEST_CASE("run_method") {
    GenSpec spec;
    spec.num_clusters = 3;
    spec.points_per_cluster = 40;
    spec.seed = 6;
    const auto od = testing::blobs_with_outliers(spec, 4, 6.0, 10.0);
    MethodConfig cfg;
    cfg.k = 3;
    cfg.igk.ga.generations = 15;

    for (auto m : {Method::kmeans, Method::igk, Method::odin, Method::orc, Method::proposed}) {
        CAPTURE(method_name(m));
        cfg.method = m;
        const auto a = run_method(od.data, cfg, 11);
        const auto b = run_method(od.data, cfg, 11);
        CHECK(a.final_clustering.centroids.count() == 3);
        CHECK(a.final_clustering.centroids == b.final_clustering.centroids);
        CHECK(a.surviving == b.surviving);
        if (m == Method::kmeans || m == Method::igk) CHECK(a.all_removed.empty());
        const auto met = summarize(a, &od.truth, 11);
        REQUIRE(met.mse.has_value());
        CHECK(*met.mse == doctest::Approx(centroid_mse(a.final_clustering.centroids, od.truth)));
        CHECK(met.removed_count + met.surviving_n == od.data.size());
        CHECK(met.seed == 11);
    }
    CHECK_FALSE(summarize(run_method(od.data, cfg, 1), nullptr, 1).mse.has_value());
}

TEST_CASE("threshold sweep") {
    GenSpec spec;
    spec.num_clusters = 3;
    spec.points_per_cluster = 40;
    spec.seed = 21;
    const auto od = testing::blobs_with_outliers(spec, 4, 6.0, 10.0);
    MethodConfig cfg;
    cfg.method = Method::orc;
    cfg.k = 3;
    cfg.removal.iterations = 3;
    const std::vector<double> ts{0.5, 0.7, 0.9, 1.0};
    const std::vector<std::uint64_t> seeds{1, 2, 3};
    const auto rows = threshold_sweep(od.data, od.truth, cfg, ts, seeds);
    REQUIRE(rows.size() == ts.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].threshold == ts[i]);
        CHECK(rows[i].mse.size() == seeds.size());
        CHECK(rows[i].median_mse == median(rows[i].mse));
    }
    CHECK(rows.back().median_removed == 0.0);
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].first_iteration_removed[s] <= rows[i - 1].first_iteration_removed[s]);
        }
    }
    CHECK_THROWS_AS(threshold_sweep(od.data, od.truth, cfg, {0.0}, seeds), InvalidArgument);
    CHECK_THROWS_AS(threshold_sweep(od.data, od.truth, cfg, ts, {}), InvalidArgument);
}
