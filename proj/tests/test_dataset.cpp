#include <doctest.h>

#include <cmath>
#include <limits>

#include "igk/dataset.hpp"
#include "igk/error.hpp"
#include "test_support.hpp"

using namespace igk;

TEST_CASE("load_dataset parses whitespace separated rows") {
    const auto dir = testing::temp_dir("load");
    const auto data = load_dataset(testing::write_file(dir / "two.txt", "0 0\n10 10\n"));
    CHECK(data.size() == 2);
    CHECK(data.dim() == 2);
    CHECK(data.point(1)[0] == 10.0);
    CHECK(data.ids() == std::vector<PointId>{0, 1});

    SUBCASE("blank lines, tabs and leading spaces are tolerated") {
        const auto d = load_dataset(testing::write_file(dir / "b.txt", "\n    1\t2\r\n\n  3 4.5e1\n\n"));
        CHECK(d.size() == 2);
        CHECK(d.point(1)[1] == 45.0);
    }
}

TEST_CASE("load_dataset reports malformed input with line numbers") {
    const auto dir = testing::temp_dir("bad");
    SUBCASE("ragged row") {
        try {
            load_dataset(testing::write_file(dir / "r.txt", "1 2\n3\n"));
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("non-numeric token") {
        try {
            load_dataset(testing::write_file(dir / "n.txt", "1 2\n3 x4\n"));
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("non-finite values are rejected") {
        CHECK_THROWS_AS(load_dataset(testing::write_file(dir / "nan.txt", "1 nan\n")), ParseError);
        CHECK_THROWS_AS(load_dataset(testing::write_file(dir / "inf.txt", "inf 1\n")), ParseError);
    }
    SUBCASE("empty file") {
        CHECK_THROWS_AS(load_dataset(testing::write_file(dir / "e.txt", "\n \n")), ParseError);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(load_dataset(dir / "nope.txt"), ParseError); }
}

TEST_CASE("load_ground_truth checks the expected dimension") {
    const auto dir = testing::temp_dir("truth");
    const auto path = testing::write_file(dir / "c.txt", "5 5\n");
    CHECK(load_ground_truth(path, 2).count() == 1);
    CHECK_THROWS_AS(load_ground_truth(path, 3), DimensionMismatch);
}

TEST_CASE("save then load reproduces coordinates bit for bit") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    const auto dir = testing::temp_dir("roundtrip");
    for (int trial = 0; trial < 20; ++trial) {
        oracle::Rows rows(25, std::vector<double>(3));
        for (auto& r : rows) {
            for (auto& x : r) x = std::ldexp(mant(rng), expo(rng) / 10);
        }
        rows[0][0] = 0.1;
        rows[0][1] = -0.0;
        rows[0][2] = std::numeric_limits<double>::denorm_min();
        const auto data = DataSet::from_rows(rows);
        save_dataset(dir / "rt.txt", data);
        CHECK(load_dataset(dir / "rt.txt") == data);
    }
}

TEST_CASE("writer format is one point per line, single spaces") {
    const auto dir = testing::temp_dir("fmt");
    save_dataset(dir / "f.txt", DataSet::from_rows({{1.5, -2.0}, {0.1, 3e20}}));
    CHECK(testing::read_file(dir / "f.txt") == "1.5 -2\n0.1 3e+20\n");
}

TEST_CASE("generate is deterministic and counts points") {
    GenSpec spec;
    spec.seed = 42;
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(a.first == b.first);
    CHECK(a.second.centroids == b.second.centroids);

    spec.num_clusters = 3;
    spec.points_per_cluster = 10;
    spec.outlier_fraction = 0.0;
    CHECK(generate(spec).first.size() == 30);

    spec.num_clusters = 10;
    spec.points_per_cluster = 10;
    spec.outlier_fraction = 0.1;
    const auto [data, truth] = generate(spec);
    CHECK(data.size() == 110);
    CHECK(truth.count() == 10);
    CHECK(data.ids().back() == 109);

    spec.outlier_fraction = 0.29;  // 0.29 * 100 is 28.999999999999996 in floating point
    CHECK(generate(spec).first.size() == 129);
}

TEST_CASE("generate rejects invalid specs") {
    GenSpec spec;
    spec.spread = 0.0;
    CHECK_THROWS_AS(generate(spec), InvalidArgument);
    spec = GenSpec{};
    spec.outlier_fraction = 1.0;
    CHECK_THROWS_AS(generate(spec), InvalidArgument);
    spec = GenSpec{};
    spec.num_clusters = 0;
    CHECK_THROWS_AS(generate(spec), InvalidArgument);
}

TEST_CASE("tight generated blobs are recovered exactly by nearest true centroid") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenSpec spec;
        spec.num_clusters = 5;
        spec.points_per_cluster = 40;
        spec.seed = seed;
        spec.spread = 1.0;  // placeholder; rescaled below
        const double sep = testing::min_separation(generate(spec).second.centroids);
        spec.spread = 0.01 * sep;
        const auto [data, truth] = generate(spec);
        REQUIRE(testing::min_separation(truth.centroids) == doctest::Approx(sep));
        for (std::size_t pos = 0; pos < data.size(); ++pos) {
            std::size_t best = 0;
            for (std::size_t j = 1; j < truth.count(); ++j) {
                if (squared_distance(data.point(pos), truth.centroids.row(j)) <
                    squared_distance(data.point(pos), truth.centroids.row(best))) {
                    best = j;
                }
            }
            CHECK(best == pos / spec.points_per_cluster);
        }
    }
}

TEST_CASE("subsample sizes, determinism and uniqueness") {
    std::mt19937_64 rng(3);
    const auto data = DataSet::from_rows(testing::random_rows(rng, 100, 2));

    const auto subs = subsample(data, 5, 0.1, 9);
    REQUIRE(subs.size() == 5);
    for (const auto& s : subs) {
        CHECK(s.size() == 10);
        std::set<PointId> unique(s.ids().begin(), s.ids().end());
        CHECK(unique.size() == s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(std::equal(s.point(i).begin(), s.point(i).end(), data.point(s.id(i)).begin()));
        }
    }
    CHECK(subs[0].ids() != subs[1].ids());

    const auto again = subsample(data, 5, 0.1, 9);
    for (std::size_t i = 0; i < 5; ++i) CHECK(again[i].ids() == subs[i].ids());

    for (const auto& s : subsample(data, 2, 1.0, 1)) CHECK(s.ids() == data.ids());

    CHECK(subsample_size(100, 0.07) == 7);
    CHECK(subsample_size(3000, 0.1) == 300);
    CHECK(subsample_size(5, 0.01) == 1);
    CHECK_THROWS_AS(subsample(data, 1, 0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(subsample(data, 1, 1.5, 1), InvalidArgument);
}

TEST_CASE("remove_points keeps ids and order of survivors") {
    const auto data = DataSet::from_rows({{0.0}, {1.0}, {2.0}});
    CHECK(remove_points(data, {}) == data);
    CHECK(remove_points(data, {0, 1, 2}).empty());
    CHECK(remove_points(data, {0, 1, 2}).dim() == 1);
    const auto rest = remove_points(data, {1});
    CHECK(rest.ids() == std::vector<PointId>{0, 2});
    CHECK(rest.point(1)[0] == 2.0);
    CHECK_THROWS_AS(remove_points(data, {7}), InvalidArgument);
    CHECK_THROWS_AS(remove_points(rest, {1}), InvalidArgument);
}

TEST_CASE("removing a union equals removing the parts in sequence") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto data = DataSet::from_rows(testing::random_rows(rng, 40, 2));
        std::set<PointId> a, b;
        std::uniform_int_distribution<int> coin(0, 2);
        for (PointId id = 0; id < 40; ++id) {
            const int c = coin(rng);
            if (c == 1) a.insert(id);
            if (c == 2) b.insert(id);
        }
        std::set<PointId> both = a;
        both.insert(b.begin(), b.end());
        CHECK(remove_points(data, both) == remove_points(remove_points(data, a), b));
    }
}
