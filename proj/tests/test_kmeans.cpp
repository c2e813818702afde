#include <doctest.h>

#include "igk/error.hpp"
#include "igk/kmeans.hpp"
#include "test_support.hpp"

using namespace igk;

namespace {

Centroids centers(const oracle::Rows& rows) { return Centroids(PointMatrix::from_rows(rows)); }

void check_partition(const Partition& p, std::size_t n, std::size_t k) {
    REQUIRE(p.labels.size() == n);
    REQUIRE(p.k() == k);
    std::vector<std::size_t> counted(k, 0);
    for (auto l : p.labels) {
        REQUIRE(l < k);
        ++counted[l];
    }
    CHECK(counted == p.sizes);
}

}  // namespace

TEST_CASE("assign picks the nearest center, lowest index on ties") {
    const auto two = DataSet::from_rows({{0, 0}, {10, 10}});
    CHECK(assign(two, centers({{0, 0}, {10, 10}})).labels == std::vector<std::size_t>{0, 1});

    const auto mid = DataSet::from_rows({{5, 5}});
    CHECK(assign(mid, centers({{0, 0}, {10, 10}})).labels == std::vector<std::size_t>{0});

    const auto three = DataSet::from_rows({{1, 0}, {2, 0}, {9, 0}});
    const auto p = assign(three, centers({{0, 0}, {10, 0}}));
    CHECK(p.labels == std::vector<std::size_t>{0, 0, 1});
    CHECK(p.sizes == std::vector<std::size_t>{2, 1});

    CHECK_THROWS_AS(assign(three, centers({{0, 0, 0}})), DimensionMismatch);
    CHECK_THROWS_AS(assign(three, Centroids{}), InvalidArgument);
}

TEST_CASE("update_centroids takes means and reseeds empty clusters") {
    auto data = DataSet::from_rows({{0, 0}, {2, 0}});
    auto p = Partition::from_labels({0, 0}, 1);
    CHECK(update_centroids(data, p, 1) == centers({{1, 0}}));

    p = Partition::from_labels({0, 1}, 2);
    CHECK(update_centroids(data, p, 2) == centers({{0, 0}, {2, 0}}));

    data = DataSet::from_rows({{0, 0}, {0, 0}, {9, 9}});
    p = Partition::from_labels({0, 0, 0}, 2);
    const auto c = update_centroids(data, p, 2);
    CHECK(c == centers({{0, 0}, {9, 9}}));
    CHECK(p.labels == std::vector<std::size_t>{0, 0, 1});
    CHECK(p.sizes == std::vector<std::size_t>{2, 1});
}

TEST_CASE("update_centroids fills several empty clusters without emptying others") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto data = DataSet::from_rows(testing::random_rows(rng, 12, 2));
        auto p = Partition::from_labels(std::vector<std::size_t>(12, 0), 6);
        const auto c = update_centroids(data, p, 6);
        check_partition(p, 12, 6);
        for (auto s : p.sizes) CHECK(s >= 1);
        // every center is the mean of its members
        for (std::size_t j = 0; j < 6; ++j) {
            double sx = 0, sy = 0;
            for (std::size_t i = 0; i < 12; ++i) {
                if (p.labels[i] == j) {
                    sx += data.point(i)[0];
                    sy += data.point(i)[1];
                }
            }
            CHECK(c.row(j)[0] == doctest::Approx(sx / p.sizes[j]));
            CHECK(c.row(j)[1] == doctest::Approx(sy / p.sizes[j]));
        }
    }
}

TEST_CASE("squared_error examples and the naive double-loop oracle") {
    const auto data = DataSet::from_rows({{0, 0}, {2, 0}, {10, 0}, {12, 0}});
    const auto c = centers({{1, 0}, {11, 0}});
    CHECK(squared_error(data, c, assign(data, c)) == 4.0);

    const auto same = DataSet::from_rows({{1, 1}, {3, 3}});
    CHECK(nearest_squared_error(same, centers({{1, 1}, {3, 3}})) == 0.0);

    std::mt19937_64 rng(20);
    const auto rows = testing::random_rows(rng, 20, 3);
    const auto crow = testing::random_rows(rng, 4, 3);
    const auto d = DataSet::from_rows(rows);
    CHECK(nearest_squared_error(d, centers(crow)) ==
          doctest::Approx(oracle::nearest_squared_error(rows, crow)).epsilon(1e-12));
}

TEST_CASE("lloyd examples") {
    SUBCASE("starting at the cluster means converges in one iteration") {
        const auto data = DataSet::from_rows({{0, 0}, {2, 0}, {10, 0}, {12, 0}});
        const auto init = centers({{1, 0}, {11, 0}});
        const auto r = lloyd(data, init);
        CHECK(r.iterations_run == 1);
        CHECK(r.converged);
        CHECK(r.centroids == init);
        CHECK(r.jc == 4.0);
    }
    SUBCASE("single cluster moves to the mean") {
        const auto data = DataSet::from_rows({{0, 0}, {2, 0}});
        const auto r = lloyd(data, centers({{0, 0}}));
        CHECK(r.centroids == centers({{1, 0}}));
        CHECK(r.jc == 2.0);
    }
    SUBCASE("errors") {
        const auto data = DataSet::from_rows({{0, 0}});
        CHECK_THROWS_AS(lloyd(data, centers({{0.0}})), DimensionMismatch);
        CHECK_THROWS_AS(lloyd(DataSet{}, centers({{0.0}})), InvalidArgument);
    }
}

TEST_CASE("lloyd results satisfy the clustering invariants") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const auto rows = testing::random_rows(rng, 60, 2);
        const auto data = DataSet::from_rows(rows);
        Rng init_rng(trial);
        const auto r = lloyd(data, random_init(data, 5, init_rng));
        check_partition(r.partition, 60, 5);
        CHECK(r.partition.labels == assign(data, r.centroids).labels);
        CHECK(r.jc == doctest::Approx(oracle::labelled_squared_error(rows, testing::rows_of(r.centroids),
                                                                     r.partition.labels))
                          .epsilon(1e-9));
        if (r.converged) {
            // One more step must not move any label.
            const auto next = lloyd_step(data, r.centroids);
            CHECK(assign(data, next).labels == r.partition.labels);
        }
    }
}

TEST_CASE("multistart") {
    std::mt19937_64 rng(4);
    const auto data = DataSet::from_rows(testing::random_rows(rng, 80, 2));

    SUBCASE("one restart equals one seeded lloyd run") {
        Rng r0 = make_rng(17, 0);
        const auto single = lloyd(data, random_init(data, 4, r0));
        const auto ms = kmeans_multistart(data, 4, 1, 17);
        CHECK(ms.centroids == single.centroids);
        CHECK(ms.jc == single.jc);
    }
    SUBCASE("more restarts never hurt on the same seed stream") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            CHECK(kmeans_multistart(data, 4, 10, seed).jc <= kmeans_multistart(data, 4, 1, seed).jc);
        }
    }
    SUBCASE("k = N puts every point on its own center") {
        const auto small = DataSet::from_rows({{0, 0}, {1, 5}, {3, 2}});
        CHECK(kmeans_multistart(small, 3, 2, 1).jc == 0.0);
        CHECK_THROWS_AS(kmeans_multistart(small, 4, 2, 1), InvalidArgument);
        CHECK_THROWS_AS(kmeans_multistart(small, 2, 0, 1), InvalidArgument);
    }
    SUBCASE("deterministic per seed") {
        const auto a = kmeans_multistart(data, 5, 3, 99);
        const auto b = kmeans_multistart(data, 5, 3, 99);
        CHECK(a.centroids == b.centroids);
        CHECK(a.partition.labels == b.partition.labels);
        CHECK(a.jc == b.jc);
    }
}
