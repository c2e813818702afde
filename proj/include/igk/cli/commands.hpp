#ifndef IGK_CLI_COMMANDS_HPP
#define IGK_CLI_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "igk/cli/results_io.hpp"
#include "igk/cli/svg_plot.hpp"
#include "igk/dataset.hpp"
#include "igk/evaluation.hpp"

namespace igk::cli {

struct RunConfig {
    MethodConfig method;
    std::string dataset_name;  // defaults to the data file stem
    std::filesystem::path dataset_path;
    std::optional<std::filesystem::path> truth_path;
    std::filesystem::path output_dir = "out";
    Format format = Format::csv;
    std::vector<std::uint64_t> seeds{1};
    bool record_timing = false;  // timings break byte-identical reruns
};

/// Expected (N, M) of the named reference sets A1/A2/A3, if `name` is one.
struct ReferenceShape {
    std::size_t n;
    std::size_t m;
};
std::optional<ReferenceShape> reference_shape(std::string_view name);

/// Runs `cfg` once per seed on loaded data; fills mse and mse_best when a
/// ground truth is supplied.
std::vector<RunRecord> execute_runs(const DataSet& data, const GroundTruth* truth,
                                    const std::string& dataset_name, const MethodConfig& cfg,
                                    const std::vector<std::uint64_t>& seeds, bool record_timing);

int cmd_run(const RunConfig& cfg, std::ostream& log);

struct BenchDataset {
    std::string name;
    std::filesystem::path data;
    std::filesystem::path truth;
};

struct BenchConfig {
    RunConfig base;  // method field ignored; dataset paths ignored
    std::vector<BenchDataset> datasets;
    std::vector<Method> methods{Method::kmeans, Method::orc, Method::proposed};
};

/// Looks for a1.txt / a1-ga-cb.txt (and a2, a3) in `dir`.
std::vector<BenchDataset> discover_reference_sets(const std::filesystem::path& dir);

struct BenchOutcome {
    std::vector<BenchCell> cells;  // dataset-major, methods in config order
    std::vector<RunRecord> runs;
};

BenchOutcome run_bench(const BenchConfig& cfg, std::ostream& log);
int cmd_bench(const BenchConfig& cfg, std::ostream& log);

struct SweepConfig {
    RunConfig base;
    std::vector<double> thresholds;
    bool plot = false;
};

/// 0.50, 0.55, ..., 1.00
std::vector<double> default_thresholds();

int cmd_sweep(const SweepConfig& cfg, std::ostream& log);

int cmd_gen(const GenSpec& spec, const std::filesystem::path& data_out,
            const std::filesystem::path& truth_out, std::ostream& log);

struct PlotSpec {
    PlotKind kind = PlotKind::scatter_clusters;
    std::filesystem::path data;
    std::filesystem::path centroids;
    std::optional<std::filesystem::path> removed;  // removed.csv from a run
    std::optional<std::uint64_t> seed;             // filter rows of removed.csv
    std::filesystem::path sweep;                   // sweep.csv
    std::filesystem::path output;
};

int cmd_plot(const PlotSpec& spec, std::ostream& log);

/// Full command-line entry point (subcommands run | bench | sweep | gen | plot).
int run_cli(int argc, const char* const* argv);

}  // namespace igk::cli

#endif  // IGK_CLI_COMMANDS_HPP
