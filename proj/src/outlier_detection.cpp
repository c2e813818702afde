#include "igk/outlier_detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "igk/error.hpp"
#include "igk/rng.hpp"

namespace igk {

void RemovalConfig::validate() const {
    const bool below_one = threshold > 0.0 && threshold < 1.0;
    const bool unit = threshold == 1.0 && allow_unit_threshold;
    if (!below_one && !unit) {
        throw InvalidArgument("removal threshold must lie in (0, 1); T = 1 needs an explicit override");
    }
}

KnnGraph build_knn_graph(const DataSet& data, std::size_t k) {
    const std::size_t n = data.size();
    if (k == 0 || k >= n) {
        throw InvalidArgument("kNN graph needs 1 <= k < N (k=" + std::to_string(k) +
                              ", N=" + std::to_string(n) + ")");
    }

    KnnGraph g;
    g.k = k;
    g.out_edges.resize(n);
    g.indegree.assign(n, 0);

    struct Candidate {
        double d2;
        PointId id;
        std::size_t pos;
    };
    const auto closer = [](const Candidate& a, const Candidate& b) {
        return a.d2 < b.d2 || (a.d2 == b.d2 && a.id < b.id);
    };

    std::vector<Candidate> cand;
    cand.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        cand.clear();
        const auto p = data.point(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) cand.push_back({squared_distance(p, data.point(j)), data.id(j), j});
        }
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end(),
                          closer);
        auto& edges = g.out_edges[i];
        edges.reserve(k);
        for (std::size_t e = 0; e < k; ++e) {
            edges.push_back({cand[e].id, std::sqrt(cand[e].d2)});
            ++g.indegree[cand[e].pos];
        }
    }
    return g;
}

OutlyingnessReport outlyingness(const DataSet& data, const Centroids& centroids) {
    if (data.empty()) throw InvalidArgument("outlyingness needs a nonempty dataset");
    const Partition p = assign(data, centroids);

    OutlyingnessReport rep;
    rep.ids = data.ids();
    rep.factors.resize(data.size());
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
        rep.factors[pos] = distance(data.point(pos), centroids.row(p.labels[pos]));
        rep.d_max = std::max(rep.d_max, rep.factors[pos]);
    }
    for (auto& f : rep.factors) f = rep.d_max > 0.0 ? f / rep.d_max : 0.0;
    return rep;
}

std::set<PointId> select_outliers(const OutlyingnessReport& report, double threshold) {
    std::set<PointId> out;
    for (std::size_t i = 0; i < report.factors.size(); ++i) {
        if (report.factors[i] > threshold) out.insert(report.ids[i]);
    }
    return out;
}

namespace {

void record_removals(const OutlyingnessReport& rep, std::vector<RemovedPoint>& sink) {
    for (std::size_t i = 0; i < rep.ids.size(); ++i) {
        if (rep.removed_ids.count(rep.ids[i])) sink.push_back({rep.iteration, rep.ids[i], rep.factors[i]});
    }
}

}  // namespace

OutlierRunResult odin(const DataSet& data, const OdinConfig& cfg) {
    if (!(cfg.threshold > 0.0 && cfg.threshold <= 1.0)) {
        throw InvalidArgument("ODIN threshold must lie in (0, 1]");
    }
    const KnnGraph graph = build_knn_graph(data, cfg.knn_k);

    OutlyingnessReport rep;
    rep.iteration = 1;
    rep.ids = data.ids();
    rep.factors.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        rep.factors[i] = 1.0 / (static_cast<double>(graph.indegree[i]) + 1.0);
    }
    rep.removed_ids = select_outliers(rep, cfg.threshold);

    OutlierRunResult out;
    record_removals(rep, out.all_removed);
    out.surviving = remove_points(data, rep.removed_ids);
    out.per_iteration.push_back(std::move(rep));
    if (out.surviving.empty()) throw Error("ODIN removed every point; nothing left to cluster");
    out.final_clustering =
        kmeans_multistart(out.surviving, cfg.kmeans_k, cfg.restarts, cfg.seed, cfg.lloyd);
    return out;
}

OutlierRunResult iterative_removal(const DataSet& data, ClusteringResult initial,
                                   const RemovalConfig& cfg, const Refiner& refine) {
    cfg.validate();
    const std::size_t k = initial.centroids.count();

    OutlierRunResult out;
    out.surviving = data;
    out.final_clustering = std::move(initial);
    for (std::size_t it = 1; it <= cfg.iterations; ++it) {
        OutlyingnessReport rep = outlyingness(out.surviving, out.final_clustering.centroids);
        rep.iteration = it;
        rep.removed_ids = select_outliers(rep, cfg.threshold);
        record_removals(rep, out.all_removed);
        out.surviving = remove_points(out.surviving, rep.removed_ids);
        out.per_iteration.push_back(std::move(rep));

        if (out.surviving.size() < k) {
            out.early_stop = true;
            Centroids last = std::move(out.final_clustering.centroids);
            out.final_clustering = ClusteringResult{};
            if (out.surviving.empty()) {
                out.final_clustering.centroids = std::move(last);
                out.final_clustering.partition.sizes.assign(k, 0);
            } else {
                out.final_clustering = evaluate(out.surviving, std::move(last));
            }
            break;
        }
        out.final_clustering = refine(out.surviving, out.final_clustering.centroids, it);
    }
    return out;
}

OutlierRunResult orc(const DataSet& data, std::size_t k, const RemovalConfig& cfg,
                     std::size_t restarts, const LloydOptions& lloyd_opts) {
    cfg.validate();
    ClusteringResult initial = kmeans_multistart(data, k, restarts, cfg.seed, lloyd_opts);
    return iterative_removal(data, std::move(initial), cfg,
                             [&](const DataSet& x, const Centroids& c, std::size_t) {
                                 return lloyd(x, c, lloyd_opts);
                             });
}

OutlierRunResult proposed(const DataSet& data, const IgkConfig& igk_cfg, const RemovalConfig& cfg) {
    cfg.validate();
    igk_cfg.validate();
    ClusteringResult initial = igk(data, igk_cfg);
    return iterative_removal(data, std::move(initial), cfg,
                             [&](const DataSet& x, const Centroids& c, std::size_t it) {
                                 GaConfig ga = igk_cfg.ga;
                                 ga.seed = derive_seed(cfg.seed, 1000 + it);
                                 return genetic_kmeans(x, c.count(), ga, c);
                             });
}

}  // namespace igk
