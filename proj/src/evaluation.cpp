#include "igk/evaluation.hpp"

#include <algorithm>
#include <limits>

#include "igk/error.hpp"

namespace igk {

namespace {

// Hungarian method with row/column potentials; rows <= cols. Returns the
// column assigned to each row.
std::vector<std::size_t> solve_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    const std::size_t m = n ? cost.front().size() : 0;
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<bool> used(m + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::size_t> col_of(n, 0);
    for (std::size_t j = 1; j <= m; ++j) {
        if (p[j] != 0) col_of[p[j] - 1] = j - 1;
    }
    return col_of;
}

}  // namespace

CentroidMatch match_centroids(const Centroids& estimated, const GroundTruth& truth) {
    if (!estimated.empty() && !truth.centroids.empty() && estimated.dim() != truth.dim()) {
        throw DimensionMismatch("estimated and true centroids differ in dimension");
    }
    const std::size_t ne = estimated.count();
    const std::size_t nt = truth.count();
    const bool est_rows = ne <= nt;

    std::vector<std::vector<double>> cost(std::min(ne, nt));
    for (std::size_t r = 0; r < cost.size(); ++r) {
        const std::size_t cols = est_rows ? nt : ne;
        cost[r].resize(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            cost[r][c] = est_rows ? squared_distance(estimated.row(r), truth.centroids.row(c))
                                  : squared_distance(estimated.row(c), truth.centroids.row(r));
        }
    }
    const auto col_of = solve_assignment(cost);

    CentroidMatch match;
    for (std::size_t r = 0; r < col_of.size(); ++r) {
        match.pairing.emplace_back(est_rows ? r : col_of[r], est_rows ? col_of[r] : r);
    }
    std::sort(match.pairing.begin(), match.pairing.end());

    std::vector<bool> est_used(ne, false), true_used(nt, false);
    for (const auto& [e, t] : match.pairing) {
        est_used[e] = true;
        true_used[t] = true;
        match.total_sq_dist += squared_distance(estimated.row(e), truth.centroids.row(t));
    }
    for (std::size_t e = 0; e < ne; ++e) {
        if (!est_used[e]) match.unmatched_estimated.push_back(e);
    }
    for (std::size_t t = 0; t < nt; ++t) {
        if (!true_used[t]) match.unmatched_true.push_back(t);
    }
    return match;
}

double centroid_mse(const Centroids& estimated, const GroundTruth& truth) {
    const CentroidMatch m = match_centroids(estimated, truth);
    if (m.pairing.empty()) throw InvalidArgument("no centroids to compare");
    return m.total_sq_dist / static_cast<double>(m.pairing.size());
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::kmeans: return "kmeans";
        case Method::igk: return "igk";
        case Method::odin: return "odin";
        case Method::orc: return "orc";
        case Method::proposed: return "proposed";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::kmeans, Method::igk, Method::odin, Method::orc, Method::proposed}) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

OutlierRunResult run_method(const DataSet& data, const MethodConfig& cfg, std::uint64_t seed) {
    OutlierRunResult out;
    switch (cfg.method) {
        case Method::kmeans:
            out.final_clustering = kmeans_multistart(data, cfg.k, cfg.restarts, seed, cfg.lloyd);
            out.surviving = data;
            return out;
        case Method::igk: {
            IgkConfig ic = cfg.igk;
            ic.k = cfg.k;
            ic.k_prime = cfg.k_prime == 0 ? 2 * cfg.k : cfg.k_prime;
            ic.ga.seed = seed;
            out.final_clustering = igk(data, ic);
            out.surviving = data;
            return out;
        }
        case Method::odin: {
            OdinConfig oc = cfg.odin;
            oc.kmeans_k = cfg.k;
            oc.restarts = cfg.restarts;
            oc.lloyd = cfg.lloyd;
            oc.seed = seed;
            return odin(data, oc);
        }
        case Method::orc: {
            RemovalConfig rc = cfg.removal;
            rc.seed = seed;
            return orc(data, cfg.k, rc, cfg.restarts, cfg.lloyd);
        }
        case Method::proposed: {
            IgkConfig ic = cfg.igk;
            ic.k = cfg.k;
            ic.k_prime = cfg.k_prime == 0 ? 2 * cfg.k : cfg.k_prime;
            ic.ga.seed = seed;
            RemovalConfig rc = cfg.removal;
            rc.seed = seed;
            return proposed(data, ic, rc);
        }
    }
    throw InvalidArgument("unknown method");
}

MethodConfig with_threshold(const MethodConfig& cfg, double t) {
    MethodConfig out = cfg;
    if (cfg.method == Method::odin) {
        out.odin.threshold = t;
    } else {
        out.removal.threshold = t;
        out.removal.allow_unit_threshold = out.removal.allow_unit_threshold || t == 1.0;
    }
    return out;
}

EvalMetrics summarize(const OutlierRunResult& run, const GroundTruth* truth, std::uint64_t seed) {
    EvalMetrics m;
    if (truth) m.mse = centroid_mse(run.final_clustering.centroids, *truth);
    m.removed_count = run.all_removed.size();
    m.surviving_n = run.surviving.size();
    m.jc_final = run.final_clustering.jc;
    m.seed = seed;
    m.early_stop = run.early_stop;
    return m;
}

double median(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("median of an empty sequence");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<SweepRow> threshold_sweep(const DataSet& data, const GroundTruth& truth,
                                      const MethodConfig& cfg,
                                      const std::vector<double>& thresholds,
                                      const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) throw InvalidArgument("threshold sweep needs at least one seed");
    std::vector<SweepRow> rows;
    rows.reserve(thresholds.size());
    for (double t : thresholds) {
        if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("sweep thresholds must lie in (0, 1]");
        const MethodConfig run_cfg = with_threshold(cfg, t);
        SweepRow row;
        row.threshold = t;
        std::vector<double> removed;
        std::vector<double> first;
        for (auto seed : seeds) {
            const OutlierRunResult run = run_method(data, run_cfg, seed);
            row.mse.push_back(centroid_mse(run.final_clustering.centroids, truth));
            row.removed.push_back(run.all_removed.size());
            row.first_iteration_removed.push_back(
                run.per_iteration.empty() ? 0 : run.per_iteration.front().removed_ids.size());
            removed.push_back(static_cast<double>(run.all_removed.size()));
            first.push_back(static_cast<double>(row.first_iteration_removed.back()));
        }
        row.median_mse = median(row.mse);
        row.median_removed = median(removed);
        row.median_first_removed = median(first);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace igk
