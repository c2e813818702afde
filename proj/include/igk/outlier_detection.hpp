#ifndef IGK_OUTLIER_DETECTION_HPP
#define IGK_OUTLIER_DETECTION_HPP

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "igk/dataset.hpp"
#include "igk/genetic_kmeans.hpp"
#include "igk/kmeans.hpp"

namespace igk {

struct KnnEdge {
    PointId target;
    double weight;  // Euclidean distance
};

/// Exact kNN digraph. Vertex i corresponds to dataset position i.
struct KnnGraph {
    std::size_t k = 0;
    std::vector<std::vector<KnnEdge>> out_edges;
    std::vector<std::size_t> indegree;
};

/// Per-point outlyingness for one iteration. `factors` and `ids` follow the
/// order of the dataset the report was computed on.
struct OutlyingnessReport {
    std::vector<PointId> ids;
    std::vector<double> factors;
    double d_max = 0.0;
    std::set<PointId> removed_ids;
    std::size_t iteration = 0;
};

struct RemovedPoint {
    std::size_t iteration;
    PointId id;
    double factor;
};

struct OutlierRunResult {
    ClusteringResult final_clustering;
    std::vector<RemovedPoint> all_removed;
    DataSet surviving;
    std::vector<OutlyingnessReport> per_iteration;
    bool early_stop = false;
};

struct OdinConfig {
    std::size_t knn_k = 5;
    double threshold = 0.5;
    std::size_t kmeans_k = 2;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    LloydOptions lloyd;
};

struct RemovalConfig {
    std::size_t iterations = 10;
    double threshold = 0.9;
    std::uint64_t seed = 0;
    /// T = 1 removes nothing; only permitted when explicitly requested.
    bool allow_unit_threshold = false;

    void validate() const;
};

/// Ties in distance go to the lower point id.
KnnGraph build_knn_graph(const DataSet& data, std::size_t k);

/// Oi = ||xi - c(i)|| / d_max with c(i) the nearest center and d_max the
/// maximum over all points. d_max = 0 gives all-zero factors.
OutlyingnessReport outlyingness(const DataSet& data, const Centroids& centroids);

/// Ids whose factor is strictly above `threshold`.
std::set<PointId> select_outliers(const OutlyingnessReport& report, double threshold);

/// Single pass: drop points with 1/(indegree+1) > T, then multistart K-means
/// on the survivors. The report's factors are the indegree scores.
OutlierRunResult odin(const DataSet& data, const OdinConfig& cfg);

/// Re-fits a codebook on the reduced data starting from the previous one.
using Refiner = std::function<ClusteringResult(const DataSet&, const Centroids&, std::size_t iteration)>;

/// The shared removal loop: I rounds of outlyingness, removal of Oi > T,
/// and refinement. Stops early, flagged, once fewer than k points survive.
OutlierRunResult iterative_removal(const DataSet& data, ClusteringResult initial,
                                   const RemovalConfig& cfg, const Refiner& refine);

/// Outlier removal around multistart K-means, refined by warm-started Lloyd.
OutlierRunResult orc(const DataSet& data, std::size_t k, const RemovalConfig& cfg,
                     std::size_t restarts, const LloydOptions& lloyd_opts = {});

/// Outlier removal around IGK; each refinement is a GKM run at the current
/// k warm-started from the previous codebook.
OutlierRunResult proposed(const DataSet& data, const IgkConfig& igk_cfg, const RemovalConfig& cfg);

}  // namespace igk

#endif  // IGK_OUTLIER_DETECTION_HPP
