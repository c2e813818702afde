#ifndef IGK_EVALUATION_HPP
#define IGK_EVALUATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "igk/dataset.hpp"
#include "igk/genetic_kmeans.hpp"
#include "igk/kmeans.hpp"
#include "igk/outlier_detection.hpp"

namespace igk {

struct CentroidMatch {
    std::vector<std::pair<std::size_t, std::size_t>> pairing;  // (estimated, true), by estimated index
    std::vector<std::size_t> unmatched_estimated;
    std::vector<std::size_t> unmatched_true;
    double total_sq_dist = 0.0;
};

/// Minimum total squared distance one-to-one matching (Hungarian method).
/// Pairs min(|estimated|, |true|) centers.
CentroidMatch match_centroids(const Centroids& estimated, const GroundTruth& truth);

/// Mean squared distance over the optimal matching.
double centroid_mse(const Centroids& estimated, const GroundTruth& truth);

enum class Method { kmeans, igk, odin, orc, proposed };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

/// Everything needed to run any of the five methods. `k` and the run seed
/// override the corresponding fields of the nested configs.
struct MethodConfig {
    Method method = Method::proposed;
    std::size_t k = 2;
    std::size_t k_prime = 0;  // 0 means 2k
    std::size_t restarts = 10;
    LloydOptions lloyd;
    IgkConfig igk;
    RemovalConfig removal;
    OdinConfig odin;
};

/// Runs one method for one seed. Plain clusterers come back with no removals.
OutlierRunResult run_method(const DataSet& data, const MethodConfig& cfg, std::uint64_t seed);

/// Copy of `cfg` whose detector threshold is `t` (T = 1 is allowed here).
MethodConfig with_threshold(const MethodConfig& cfg, double t);

struct EvalMetrics {
    std::optional<double> mse;  // only with ground truth
    std::size_t removed_count = 0;
    std::size_t surviving_n = 0;
    double jc_final = 0.0;
    std::int64_t runtime_ms = 0;
    std::uint64_t seed = 0;
    bool early_stop = false;
};

EvalMetrics summarize(const OutlierRunResult& run, const GroundTruth* truth, std::uint64_t seed);

double median(std::vector<double> values);

struct SweepRow {
    double threshold = 0.0;
    double median_mse = 0.0;
    double median_removed = 0.0;
    double median_first_removed = 0.0;  // removals in the first iteration
    std::vector<double> mse;              // per seed, in seed order
    std::vector<std::size_t> removed;     // per seed
    std::vector<std::size_t> first_iteration_removed;  // per seed
};

/// Runs `cfg` at every threshold for every seed and reports per-threshold
/// medians. Rows follow the order of `thresholds`.
std::vector<SweepRow> threshold_sweep(const DataSet& data, const GroundTruth& truth,
                                      const MethodConfig& cfg,
                                      const std::vector<double>& thresholds,
                                      const std::vector<std::uint64_t>& seeds);

}  // namespace igk

#endif  // IGK_EVALUATION_HPP
