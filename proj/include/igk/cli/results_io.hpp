#ifndef IGK_CLI_RESULTS_IO_HPP
#define IGK_CLI_RESULTS_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "igk/evaluation.hpp"
#include "igk/outlier_detection.hpp"

namespace igk::cli {

enum class Format { csv, json };

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// One executed (method, dataset, seed) cell.
struct RunRecord {
    Method method = Method::kmeans;
    std::string dataset;
    EvalMetrics metrics;
    std::optional<double> mse_best;  // best over the seeds of the same run
    OutlierRunResult result;
};

inline const char* kMetricsHeader =
    "method,dataset,seed,mse_best,mse,jc,removed_count,surviving_n,runtime_ms,early_stop";

std::string metrics_csv_row(const RunRecord& r);

/// metrics.csv, removed.csv and centroids.csv, or a single results.json.
void write_run_outputs(const std::filesystem::path& dir, const std::vector<RunRecord>& records,
                       Format format);

struct SweepTable {
    std::string method;
    std::string dataset;
    std::vector<std::uint64_t> seeds;
    std::vector<SweepRow> rows;
};

void write_sweep(const std::filesystem::path& dir, const SweepTable& table, Format format);
SweepTable read_sweep_csv(const std::filesystem::path& path);

struct BenchCell {
    std::string dataset;
    Method method = Method::kmeans;
    std::optional<double> mse_best;
    std::optional<double> mse_median;
    std::size_t seeds_ok = 0;
    std::size_t seeds_failed = 0;
    std::string error;
};

void write_bench(const std::filesystem::path& dir, const std::vector<BenchCell>& cells,
                 const std::vector<RunRecord>& runs, Format format);

/// Writes `content` to `path`, throwing on failure.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace igk::cli

#endif  // IGK_CLI_RESULTS_IO_HPP
