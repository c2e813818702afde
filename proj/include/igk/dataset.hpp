#ifndef IGK_DATASET_HPP
#define IGK_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "igk/points.hpp"

namespace igk {

using PointId = std::size_t;

/// Ordered point collection. Every point carries a stable id that survives
/// subsampling and removal, so reported outliers always refer to rows of the
/// original file.
class DataSet {
public:
    DataSet() = default;
    /// Ids default to 0..N-1.
    explicit DataSet(PointMatrix points);
    DataSet(PointMatrix points, std::vector<PointId> ids);

    static DataSet from_rows(const std::vector<std::vector<double>>& rows) {
        return DataSet(PointMatrix::from_rows(rows));
    }

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    std::size_t dim() const noexcept { return points_.dim(); }

    std::span<const double> point(std::size_t pos) const { return points_.row(pos); }
    PointId id(std::size_t pos) const { return ids_[pos]; }
    const std::vector<PointId>& ids() const noexcept { return ids_; }
    const PointMatrix& points() const noexcept { return points_; }

    bool operator==(const DataSet&) const = default;

private:
    PointMatrix points_;
    std::vector<PointId> ids_;
};

struct GroundTruth {
    PointMatrix centroids;

    std::size_t count() const noexcept { return centroids.rows(); }
    std::size_t dim() const noexcept { return centroids.dim(); }
};

/// Parameters of the synthetic Gaussian-blob generator.
struct GenSpec {
    std::size_t num_clusters = 3;
    std::size_t points_per_cluster = 100;
    std::size_t dimension = 2;
    double spread = 1.0;  // per-axis standard deviation
    double box_min = 0.0;
    double box_max = 100.0;
    double outlier_fraction = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

DataSet load_dataset(const std::filesystem::path& path);
GroundTruth load_ground_truth(const std::filesystem::path& path, std::size_t expected_dim);

/// One point per line, single-space separated, shortest round-trip decimals.
void save_points(const std::filesystem::path& path, const PointMatrix& points);
inline void save_dataset(const std::filesystem::path& path, const DataSet& data) {
    save_points(path, data.points());
}

/// Inliers come first, cluster by cluster; outliers are appended after them.
std::pair<DataSet, GroundTruth> generate(const GenSpec& spec);

/// Size of each subsample drawn by `subsample`: ceil(fraction * n).
std::size_t subsample_size(std::size_t n, double fraction);

/// `count` independent draws without replacement, each of subsample_size
/// points. Survivors keep their ids and original relative order.
std::vector<DataSet> subsample(const DataSet& data, std::size_t count, double fraction,
                               std::uint64_t seed);

/// Throws InvalidArgument if any id is not present in `data`.
DataSet remove_points(const DataSet& data, const std::set<PointId>& ids);

}  // namespace igk

#endif  // IGK_DATASET_HPP
