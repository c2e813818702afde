#include "igk/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <string_view>
#include <unordered_set>

#include "igk/error.hpp"
#include "igk/rng.hpp"

namespace igk {

DataSet::DataSet(PointMatrix points) : points_(std::move(points)), ids_(points_.rows()) {
    std::iota(ids_.begin(), ids_.end(), PointId{0});
}

DataSet::DataSet(PointMatrix points, std::vector<PointId> ids)
    : points_(std::move(points)), ids_(std::move(ids)) {
    if (ids_.size() != points_.rows()) {
        throw InvalidArgument("id count does not match point count");
    }
    std::unordered_set<PointId> seen(ids_.begin(), ids_.end());
    if (seen.size() != ids_.size()) throw InvalidArgument("duplicate point ids");
}

void GenSpec::validate() const {
    if (num_clusters == 0 || points_per_cluster == 0 || dimension == 0) {
        throw InvalidArgument("cluster count, points per cluster and dimension must be positive");
    }
    if (!(spread > 0.0)) throw InvalidArgument("spread must be positive");
    if (!(box_max > box_min)) throw InvalidArgument("box_max must exceed box_min");
    if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0)) {
        throw InvalidArgument("outlier_fraction must lie in [0, 1)");
    }
}

namespace {

PointMatrix parse_points(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");

    PointMatrix points;
    std::vector<double> row;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        row.clear();
        std::string_view rest(line);
        while (true) {
            const auto start = rest.find_first_not_of(" \t\r\f\v");
            if (start == std::string_view::npos) break;
            rest.remove_prefix(start);
            const auto stop = std::min(rest.find_first_of(" \t\r\f\v"), rest.size());
            const std::string_view token = rest.substr(0, stop);
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
                throw ParseError(path.string(), line_no,
                                 "non-numeric token '" + std::string(token) + "'");
            }
            row.push_back(value);
            rest.remove_prefix(stop);
        }
        if (row.empty()) continue;
        if (!points.empty() && row.size() != points.dim()) {
            throw ParseError(path.string(), line_no,
                             "ragged row: expected " + std::to_string(points.dim()) +
                                 " values, found " + std::to_string(row.size()));
        }
        points.push_back(row);
    }
    if (points.empty()) throw ParseError(path.string(), line_no, "file contains no points");
    return points;
}

}  // namespace

DataSet load_dataset(const std::filesystem::path& path) { return DataSet(parse_points(path)); }

GroundTruth load_ground_truth(const std::filesystem::path& path, std::size_t expected_dim) {
    PointMatrix centroids = parse_points(path);
    if (centroids.dim() != expected_dim) {
        throw DimensionMismatch(path.string() + ": centroid dimension " +
                                std::to_string(centroids.dim()) + " does not match expected " +
                                std::to_string(expected_dim));
    }
    return GroundTruth{std::move(centroids)};
}

void save_points(const std::filesystem::path& path, const PointMatrix& points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    char buf[64];
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto p = points.row(i);
        for (std::size_t d = 0; d < p.size(); ++d) {
            if (d) out.put(' ');
            const auto res = std::to_chars(buf, buf + sizeof buf, p[d]);
            out.write(buf, res.ptr - buf);
        }
        out.put('\n');
    }
    if (!out) throw Error("write failed for " + path.string());
}

std::pair<DataSet, GroundTruth> generate(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    std::uniform_real_distribution<double> in_box(spec.box_min, spec.box_max);
    std::normal_distribution<double> noise(0.0, spec.spread);

    PointMatrix centers(spec.dimension);
    std::vector<double> p(spec.dimension);
    for (std::size_t c = 0; c < spec.num_clusters; ++c) {
        for (auto& x : p) x = in_box(rng);
        centers.push_back(p);
    }

    PointMatrix points(spec.dimension);
    for (std::size_t c = 0; c < spec.num_clusters; ++c) {
        const auto center = centers.row(c);
        for (std::size_t i = 0; i < spec.points_per_cluster; ++i) {
            for (std::size_t d = 0; d < spec.dimension; ++d) p[d] = center[d] + noise(rng);
            points.push_back(p);
        }
    }

    // Outliers: uniform over the placement box doubled about its centre.
    const std::size_t inliers = spec.num_clusters * spec.points_per_cluster;
    const auto outliers =
        static_cast<std::size_t>(std::floor(spec.outlier_fraction * static_cast<double>(inliers) + 1e-9));
    const double mid = 0.5 * (spec.box_min + spec.box_max);
    const double half = spec.box_max - spec.box_min;
    std::uniform_real_distribution<double> in_wide(mid - half, mid + half);
    for (std::size_t i = 0; i < outliers; ++i) {
        for (auto& x : p) x = in_wide(rng);
        points.push_back(p);
    }

    return {DataSet(std::move(points)), GroundTruth{std::move(centers)}};
}

std::size_t subsample_size(std::size_t n, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw InvalidArgument("subsample fraction must lie in (0, 1]");
    }
    // The epsilon absorbs products such as 0.07 * 100 = 7.000000000000001.
    const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
    return std::min(n, static_cast<std::size_t>(std::max(raw, 0.0)));
}

std::vector<DataSet> subsample(const DataSet& data, std::size_t count, double fraction,
                               std::uint64_t seed) {
    const std::size_t m = subsample_size(data.size(), fraction);
    if (m == 0) throw InvalidArgument("cannot subsample an empty dataset");

    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});

    std::vector<DataSet> out;
    out.reserve(count);
    std::vector<std::size_t> chosen;
    for (std::size_t s = 0; s < count; ++s) {
        Rng rng = make_rng(seed, s);
        chosen.clear();
        // Selection sampling keeps the chosen positions in ascending order.
        std::sample(all.begin(), all.end(), std::back_inserter(chosen), m, rng);
        PointMatrix pts(data.dim());
        std::vector<PointId> ids;
        ids.reserve(m);
        for (auto pos : chosen) {
            pts.push_back(data.point(pos));
            ids.push_back(data.id(pos));
        }
        out.emplace_back(std::move(pts), std::move(ids));
    }
    return out;
}

DataSet remove_points(const DataSet& data, const std::set<PointId>& ids) {
    if (ids.empty()) return data;
    std::unordered_set<PointId> present(data.ids().begin(), data.ids().end());
    for (auto id : ids) {
        if (!present.count(id)) throw InvalidArgument("unknown point id " + std::to_string(id));
    }
    PointMatrix pts(data.dim());
    std::vector<PointId> kept;
    kept.reserve(data.size() - ids.size());
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
        if (ids.count(data.id(pos))) continue;
        pts.push_back(data.point(pos));
        kept.push_back(data.id(pos));
    }
    return DataSet(std::move(pts), std::move(kept));
}

}  // namespace igk
