#ifndef IGK_KMEANS_HPP
#define IGK_KMEANS_HPP

#include <cstdint>
#include <vector>

#include "igk/dataset.hpp"
#include "igk/points.hpp"
#include "igk/rng.hpp"

namespace igk {

/// A codebook: one center per cluster.
class Centroids : public PointMatrix {
public:
    using PointMatrix::PointMatrix;
    explicit Centroids(PointMatrix m) : PointMatrix(std::move(m)) {}

    std::size_t count() const noexcept { return rows(); }
};

/// Cluster label per dataset position (aligned with DataSet order, hence
/// with DataSet::ids()) and per-cluster sizes.
struct Partition {
    std::vector<std::size_t> labels;
    std::vector<std::size_t> sizes;

    std::size_t k() const noexcept { return sizes.size(); }

    static Partition from_labels(std::vector<std::size_t> labels, std::size_t k);
};

struct ClusteringResult {
    Centroids centroids;
    Partition partition;
    double jc = 0.0;
    std::size_t iterations_run = 0;
    bool converged = false;
};

struct LloydOptions {
    std::size_t max_iters = 100;
    double tol = 1e-6;  // on the largest per-center Euclidean shift
};

/// Nearest center under Euclidean distance; ties go to the lowest index.
Partition assign(const DataSet& data, const Centroids& centroids);

/// Mean of each cluster. An empty cluster is reseeded at the point farthest
/// from its own center (taken from a cluster with at least two members);
/// that point is relabelled in `partition`, which is why it is in/out.
Centroids update_centroids(const DataSet& data, Partition& partition, std::size_t k);

/// Jc: sum of squared distances from every point to its cluster center.
double squared_error(const DataSet& data, const Centroids& centroids, const Partition& partition);

/// Jc of `centroids` under nearest-center assignment.
double nearest_squared_error(const DataSet& data, const Centroids& centroids);

/// One assign + update pair.
Centroids lloyd_step(const DataSet& data, const Centroids& centroids);

ClusteringResult lloyd(const DataSet& data, const Centroids& init, const LloydOptions& opts = {});

/// k distinct data points drawn uniformly without replacement.
Centroids random_init(const DataSet& data, std::size_t k, Rng& rng);

/// Best-Jc of `restarts` Lloyd runs. Restart r is seeded from
/// derive_seed(seed, r), so a prefix of restarts reproduces exactly.
ClusteringResult kmeans_multistart(const DataSet& data, std::size_t k, std::size_t restarts,
                                   std::uint64_t seed, const LloydOptions& opts = {});

/// Result with the nearest-center partition and its Jc for fixed centers.
ClusteringResult evaluate(const DataSet& data, Centroids centroids);

}  // namespace igk

#endif  // IGK_KMEANS_HPP
