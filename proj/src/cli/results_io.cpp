#include "igk/cli/results_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "igk/error.hpp"

namespace igk::cli {

using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

ordered_json opt_json(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json metrics_json(const RunRecord& r) {
    const auto& m = r.metrics;
    return ordered_json{{"method", std::string(method_name(r.method))},
                        {"dataset", r.dataset},
                        {"seed", m.seed},
                        {"mse_best", opt_json(r.mse_best)},
                        {"mse", opt_json(m.mse)},
                        {"jc", m.jc_final},
                        {"removed_count", m.removed_count},
                        {"surviving_n", m.surviving_n},
                        {"runtime_ms", m.runtime_ms},
                        {"early_stop", m.early_stop}};
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed for " + path.string());
}

std::string metrics_csv_row(const RunRecord& r) {
    const auto& m = r.metrics;
    std::ostringstream s;
    s << method_name(r.method) << ',' << r.dataset << ',' << m.seed << ',' << opt(r.mse_best) << ','
      << opt(m.mse) << ',' << format_double(m.jc_final) << ',' << m.removed_count << ','
      << m.surviving_n << ',' << m.runtime_ms << ',' << (m.early_stop ? 1 : 0);
    return s.str();
}

void write_run_outputs(const std::filesystem::path& dir, const std::vector<RunRecord>& records,
                       Format format) {
    if (format == Format::json) {
        ordered_json doc{{"metrics", ordered_json::array()},
                         {"removed", ordered_json::array()},
                         {"centroids", ordered_json::array()}};
        for (const auto& r : records) {
            doc["metrics"].push_back(metrics_json(r));
            for (const auto& rp : r.result.all_removed) {
                doc["removed"].push_back({{"method", std::string(method_name(r.method))},
                                          {"dataset", r.dataset},
                                          {"seed", r.metrics.seed},
                                          {"iteration", rp.iteration},
                                          {"id", rp.id},
                                          {"outlyingness", rp.factor}});
            }
            const auto& c = r.result.final_clustering.centroids;
            for (std::size_t j = 0; j < c.count(); ++j) {
                const auto row = c.row(j);
                doc["centroids"].push_back({{"method", std::string(method_name(r.method))},
                                            {"dataset", r.dataset},
                                            {"seed", r.metrics.seed},
                                            {"cluster", j},
                                            {"coords", std::vector<double>(row.begin(), row.end())}});
            }
        }
        write_text(dir / "results.json", doc.dump(2) + "\n");
        return;
    }

    std::ostringstream metrics, removed, centroids;
    metrics << kMetricsHeader << '\n';
    removed << "method,dataset,seed,iteration,id,outlyingness\n";
    centroids << "method,dataset,seed,cluster,coords\n";
    for (const auto& r : records) {
        const auto method = method_name(r.method);
        metrics << metrics_csv_row(r) << '\n';
        for (const auto& rp : r.result.all_removed) {
            removed << method << ',' << r.dataset << ',' << r.metrics.seed << ',' << rp.iteration
                    << ',' << rp.id << ',' << format_double(rp.factor) << '\n';
        }
        const auto& c = r.result.final_clustering.centroids;
        for (std::size_t j = 0; j < c.count(); ++j) {
            centroids << method << ',' << r.dataset << ',' << r.metrics.seed << ',' << j << ',';
            const auto row = c.row(j);
            for (std::size_t d = 0; d < row.size(); ++d) {
                centroids << (d ? " " : "") << format_double(row[d]);
            }
            centroids << '\n';
        }
    }
    write_text(dir / "metrics.csv", metrics.str());
    write_text(dir / "removed.csv", removed.str());
    write_text(dir / "centroids.csv", centroids.str());
}

void write_sweep(const std::filesystem::path& dir, const SweepTable& table, Format format) {
    if (format == Format::json) {
        ordered_json doc{{"method", table.method}, {"dataset", table.dataset}, {"seeds", table.seeds},
                         {"rows", ordered_json::array()}};
        for (const auto& r : table.rows) {
            doc["rows"].push_back({{"threshold", r.threshold},
                                   {"median_mse", r.median_mse},
                                   {"median_removed", r.median_removed},
                                   {"median_first_removed", r.median_first_removed},
                                   {"mse", r.mse},
                                   {"removed", r.removed},
                                   {"first_iteration_removed", r.first_iteration_removed}});
        }
        write_text(dir / "sweep.json", doc.dump(2) + "\n");
        return;
    }
    std::ostringstream s;
    s << "threshold,median_mse,median_removed,median_first_removed\n";
    for (const auto& r : table.rows) {
        s << format_double(r.threshold) << ',' << format_double(r.median_mse) << ','
          << format_double(r.median_removed) << ',' << format_double(r.median_first_removed) << '\n';
    }
    write_text(dir / "sweep.csv", s.str());
}

SweepTable read_sweep_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    SweepTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) continue;
        std::istringstream fields(line);
        std::string a, b, c, d;
        if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') || !std::getline(fields, c, ',') ||
            !std::getline(fields, d)) {
            throw ParseError(path.string(), line_no, "expected 4 columns");
        }
        SweepRow row;
        try {
            row.threshold = std::stod(a);
            row.median_mse = std::stod(b);
            row.median_removed = std::stod(c);
            row.median_first_removed = std::stod(d);
        } catch (const std::exception&) {
            throw ParseError(path.string(), line_no, "non-numeric field");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_bench(const std::filesystem::path& dir, const std::vector<BenchCell>& cells,
                 const std::vector<RunRecord>& runs, Format format) {
    if (format == Format::json) {
        ordered_json doc{{"cells", ordered_json::array()}, {"runs", ordered_json::array()}};
        for (const auto& c : cells) {
            doc["cells"].push_back({{"dataset", c.dataset},
                                    {"method", std::string(method_name(c.method))},
                                    {"mse_best", opt_json(c.mse_best)},
                                    {"mse_median", opt_json(c.mse_median)},
                                    {"seeds_ok", c.seeds_ok},
                                    {"seeds_failed", c.seeds_failed},
                                    {"error", c.error}});
        }
        for (const auto& r : runs) doc["runs"].push_back(metrics_json(r));
        write_text(dir / "bench.json", doc.dump(2) + "\n");
        return;
    }
    std::ostringstream s;
    s << "dataset,method,mse_best,mse_median,seeds_ok,seeds_failed,error\n";
    for (const auto& c : cells) {
        std::string err = c.error;
        for (auto& ch : err) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        s << c.dataset << ',' << method_name(c.method) << ',' << opt(c.mse_best) << ','
          << opt(c.mse_median) << ',' << c.seeds_ok << ',' << c.seeds_failed << ',' << err << '\n';
    }
    write_text(dir / "bench.csv", s.str());

    std::ostringstream r;
    r << kMetricsHeader << '\n';
    for (const auto& run : runs) r << metrics_csv_row(run) << '\n';
    write_text(dir / "bench_runs.csv", r.str());
}

}  // namespace igk::cli
