#include "igk/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "igk/error.hpp"

namespace igk {

namespace {

void check_dims(const DataSet& data, const Centroids& centroids) {
    if (centroids.empty()) throw InvalidArgument("centroid set is empty");
    if (!data.empty() && data.dim() != centroids.dim()) {
        throw DimensionMismatch("data dimension " + std::to_string(data.dim()) +
                                " does not match centroid dimension " +
                                std::to_string(centroids.dim()));
    }
}

void recompute_mean(const DataSet& data, const Partition& partition, std::size_t cluster,
                    std::span<double> center) {
    std::fill(center.begin(), center.end(), 0.0);
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
        if (partition.labels[pos] != cluster) continue;
        const auto p = data.point(pos);
        for (std::size_t d = 0; d < center.size(); ++d) center[d] += p[d];
    }
    const double n = static_cast<double>(partition.sizes[cluster]);
    for (auto& x : center) x /= n;
}

}  // namespace

Partition Partition::from_labels(std::vector<std::size_t> labels, std::size_t k) {
    Partition p{std::move(labels), std::vector<std::size_t>(k, 0)};
    for (auto l : p.labels) {
        if (l >= k) throw InvalidArgument("label out of range");
        ++p.sizes[l];
    }
    return p;
}

Partition assign(const DataSet& data, const Centroids& centroids) {
    check_dims(data, centroids);
    const std::size_t k = centroids.count();
    Partition out{std::vector<std::size_t>(data.size()), std::vector<std::size_t>(k, 0)};
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
        const auto p = data.point(pos);
        std::size_t best = 0;
        double best_d = squared_distance(p, centroids.row(0));
        for (std::size_t j = 1; j < k; ++j) {
            const double d = squared_distance(p, centroids.row(j));
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        out.labels[pos] = best;
        ++out.sizes[best];
    }
    return out;
}

Centroids update_centroids(const DataSet& data, Partition& partition, std::size_t k) {
    if (partition.labels.size() != data.size() || partition.k() != k) {
        throw InvalidArgument("partition does not cover the dataset");
    }
    if (data.size() < k) throw InvalidArgument("more clusters than points");

    const std::size_t dim = data.dim();
    Centroids centers(dim, std::vector<double>(k * dim, 0.0));
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
        auto c = centers.row(partition.labels[pos]);
        const auto p = data.point(pos);
        for (std::size_t d = 0; d < dim; ++d) c[d] += p[d];
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (partition.sizes[j] == 0) continue;
        const double n = static_cast<double>(partition.sizes[j]);
        for (auto& x : centers.row(j)) x /= n;
    }

    for (std::size_t j = 0; j < k; ++j) {
        if (partition.sizes[j] != 0) continue;
        std::size_t far_pos = data.size();
        double far_d = -1.0;
        for (std::size_t pos = 0; pos < data.size(); ++pos) {
            const std::size_t l = partition.labels[pos];
            if (partition.sizes[l] < 2) continue;
            const double d = squared_distance(data.point(pos), centers.row(l));
            if (d > far_d) {
                far_d = d;
                far_pos = pos;
            }
        }
        const std::size_t donor = partition.labels[far_pos];
        partition.labels[far_pos] = j;
        --partition.sizes[donor];
        partition.sizes[j] = 1;
        const auto p = data.point(far_pos);
        std::copy(p.begin(), p.end(), centers.row(j).begin());
        recompute_mean(data, partition, donor, centers.row(donor));
    }
    return centers;
}

double squared_error(const DataSet& data, const Centroids& centroids, const Partition& partition) {
    double jc = 0.0;
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
        jc += squared_distance(data.point(pos), centroids.row(partition.labels[pos]));
    }
    return jc;
}

double nearest_squared_error(const DataSet& data, const Centroids& centroids) {
    return squared_error(data, centroids, assign(data, centroids));
}

Centroids lloyd_step(const DataSet& data, const Centroids& centroids) {
    Partition p = assign(data, centroids);
    return update_centroids(data, p, centroids.count());
}

ClusteringResult evaluate(const DataSet& data, Centroids centroids) {
    ClusteringResult r;
    r.partition = assign(data, centroids);
    r.jc = squared_error(data, centroids, r.partition);
    r.centroids = std::move(centroids);
    return r;
}

ClusteringResult lloyd(const DataSet& data, const Centroids& init, const LloydOptions& opts) {
    check_dims(data, init);
    if (data.empty()) throw InvalidArgument("cannot cluster an empty dataset");

    Centroids current = init;
    std::size_t iters = 0;
    bool converged = false;
    while (iters < opts.max_iters) {
        Centroids next = lloyd_step(data, current);
        double shift = 0.0;
        for (std::size_t j = 0; j < next.count(); ++j) {
            shift = std::max(shift, distance(current.row(j), next.row(j)));
        }
        current = std::move(next);
        ++iters;
        if (shift <= opts.tol) {
            converged = true;
            break;
        }
    }
    ClusteringResult r = evaluate(data, std::move(current));
    r.iterations_run = iters;
    r.converged = converged;
    return r;
}

Centroids random_init(const DataSet& data, std::size_t k, Rng& rng) {
    if (k == 0 || k > data.size()) {
        throw InvalidArgument("k=" + std::to_string(k) + " must lie in [1, N=" +
                              std::to_string(data.size()) + "]");
    }
    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), k, rng);
    Centroids c(data.dim());
    for (auto pos : chosen) c.push_back(data.point(pos));
    return c;
}

ClusteringResult kmeans_multistart(const DataSet& data, std::size_t k, std::size_t restarts,
                                   std::uint64_t seed, const LloydOptions& opts) {
    if (restarts == 0) throw InvalidArgument("restarts must be at least 1");
    ClusteringResult best;
    best.jc = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng = make_rng(seed, r);
        ClusteringResult run = lloyd(data, random_init(data, k, rng), opts);
        if (run.jc < best.jc) best = std::move(run);
    }
    return best;
}

}  // namespace igk
