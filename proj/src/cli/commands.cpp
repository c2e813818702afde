#include "igk/cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "igk/error.hpp"

namespace igk::cli {

namespace fs = std::filesystem;

std::optional<ReferenceShape> reference_shape(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "a1") return ReferenceShape{3000, 20};
    if (lower == "a2") return ReferenceShape{5250, 35};
    if (lower == "a3") return ReferenceShape{7500, 50};
    return std::nullopt;
}

std::vector<RunRecord> execute_runs(const DataSet& data, const GroundTruth* truth,
                                    const std::string& dataset_name, const MethodConfig& cfg,
                                    const std::vector<std::uint64_t>& seeds, bool record_timing) {
    std::vector<RunRecord> out;
    out.reserve(seeds.size());
    for (auto seed : seeds) {
        const auto start = std::chrono::steady_clock::now();
        RunRecord rec;
        rec.method = cfg.method;
        rec.dataset = dataset_name;
        rec.result = run_method(data, cfg, seed);
        rec.metrics = summarize(rec.result, truth, seed);
        if (record_timing) {
            rec.metrics.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                         std::chrono::steady_clock::now() - start)
                                         .count();
        }
        out.push_back(std::move(rec));
    }
    if (truth) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : out) best = std::min(best, *r.metrics.mse);
        for (auto& r : out) r.mse_best = best;
    }
    return out;
}

namespace {

std::string stem_name(const RunConfig& cfg) {
    return cfg.dataset_name.empty() ? cfg.dataset_path.stem().string() : cfg.dataset_name;
}

/// k = 0 means "take it from the ground truth".
MethodConfig resolve_k(MethodConfig mc, const GroundTruth* truth) {
    if (mc.k == 0) {
        if (!truth) throw InvalidArgument("--k is required when no ground truth is given");
        mc.k = truth->count();
    }
    return mc;
}

void check_reference_shape(const std::string& name, const DataSet& data, const GroundTruth& truth,
                           std::ostream& log) {
    const auto ref = reference_shape(name);
    if (!ref) return;
    if (data.size() != ref->n || truth.count() != ref->m) {
        log << "warning: " << name << " has N=" << data.size() << ", M=" << truth.count()
            << " but the reference set has N=" << ref->n << ", M=" << ref->m << '\n';
    }
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& log) {
    const DataSet data = load_dataset(cfg.dataset_path);
    std::optional<GroundTruth> truth;
    if (cfg.truth_path) truth = load_ground_truth(*cfg.truth_path, data.dim());
    const std::string name = stem_name(cfg);
    if (truth) check_reference_shape(name, data, *truth, log);

    const MethodConfig mc = resolve_k(cfg.method, truth ? &*truth : nullptr);
    const auto records =
        execute_runs(data, truth ? &*truth : nullptr, name, mc, cfg.seeds, cfg.record_timing);

    fs::create_directories(cfg.output_dir);
    write_run_outputs(cfg.output_dir, records, cfg.format);
    for (const auto& r : records) {
        const auto& c = r.result.final_clustering.centroids;
        save_points(cfg.output_dir / ("centroids_" + std::string(method_name(r.method)) + "_seed" +
                                      std::to_string(r.metrics.seed) + ".txt"),
                    c);
        log << method_name(r.method) << " seed=" << r.metrics.seed
            << " removed=" << r.metrics.removed_count << " jc=" << format_double(r.metrics.jc_final);
        if (r.metrics.mse) log << " mse=" << format_double(*r.metrics.mse);
        if (r.metrics.early_stop) log << " (early stop: fewer than k points left)";
        log << '\n';
    }
    return 0;
}

std::vector<BenchDataset> discover_reference_sets(const fs::path& dir) {
    std::vector<BenchDataset> out;
    for (const char* name : {"a1", "a2", "a3"}) {
        const fs::path data = dir / (std::string(name) + ".txt");
        const fs::path truth = dir / (std::string(name) + "-ga-cb.txt");
        if (fs::exists(data) && fs::exists(truth)) {
            std::string upper(name);
            upper[0] = 'A';
            out.push_back({upper, data, truth});
        }
    }
    return out;
}

BenchOutcome run_bench(const BenchConfig& cfg, std::ostream& log) {
    BenchOutcome out;
    for (const auto& ds : cfg.datasets) {
        std::optional<DataSet> data;
        std::optional<GroundTruth> truth;
        std::string load_error;
        try {
            data = load_dataset(ds.data);
            truth = load_ground_truth(ds.truth, data->dim());
            check_reference_shape(ds.name, *data, *truth, log);
        } catch (const std::exception& e) {
            load_error = e.what();
        }

        for (Method method : cfg.methods) {
            BenchCell cell;
            cell.dataset = ds.name;
            cell.method = method;
            if (!load_error.empty()) {
                cell.seeds_failed = cfg.base.seeds.size();
                cell.error = load_error;
                out.cells.push_back(std::move(cell));
                continue;
            }
            MethodConfig mc = cfg.base.method;
            mc.method = method;
            mc = resolve_k(mc, &*truth);

            std::vector<RunRecord> cell_runs;
            for (auto seed : cfg.base.seeds) {
                try {
                    auto recs = execute_runs(*data, &*truth, ds.name, mc, {seed}, cfg.base.record_timing);
                    cell_runs.push_back(std::move(recs.front()));
                    ++cell.seeds_ok;
                } catch (const std::exception& e) {
                    ++cell.seeds_failed;
                    cell.error = e.what();
                }
            }
            if (!cell_runs.empty()) {
                std::vector<double> mses;
                for (const auto& r : cell_runs) mses.push_back(*r.metrics.mse);
                cell.mse_best = *std::min_element(mses.begin(), mses.end());
                cell.mse_median = median(mses);
                for (auto& r : cell_runs) r.mse_best = cell.mse_best;
            }
            log << ds.name << ' ' << method_name(method) << ": best MSE "
                << (cell.mse_best ? format_double(*cell.mse_best) : std::string("n/a")) << '\n';
            for (auto& r : cell_runs) out.runs.push_back(std::move(r));
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

int cmd_bench(const BenchConfig& cfg, std::ostream& log) {
    if (cfg.datasets.empty()) throw InvalidArgument("bench needs at least one dataset");
    const BenchOutcome outcome = run_bench(cfg, log);
    fs::create_directories(cfg.base.output_dir);
    write_bench(cfg.base.output_dir, outcome.cells, outcome.runs, cfg.base.format);

    // Methods x datasets grid of best MSEs.
    std::ostringstream grid;
    grid << std::left << std::setw(12) << "method";
    for (const auto& ds : cfg.datasets) grid << ' ' << std::setw(20) << ds.name;
    grid << '\n';
    for (Method m : cfg.methods) {
        grid << std::setw(12) << method_name(m);
        for (const auto& ds : cfg.datasets) {
            std::string v = "failed";
            for (const auto& c : outcome.cells) {
                if (c.dataset == ds.name && c.method == m && c.mse_best) v = format_double(*c.mse_best);
            }
            grid << ' ' << std::setw(20) << v;
        }
        grid << '\n';
    }
    log << grid.str();
    return 0;
}

std::vector<double> default_thresholds() {
    std::vector<double> t;
    for (int i = 10; i <= 20; ++i) t.push_back(i / 20.0);
    return t;
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& log) {
    if (!cfg.base.truth_path) throw InvalidArgument("sweep needs a ground-truth file (--truth)");
    const Method m = cfg.base.method.method;
    if (m != Method::orc && m != Method::proposed && m != Method::odin) {
        throw InvalidArgument("sweep supports the orc, proposed and odin methods");
    }
    const DataSet data = load_dataset(cfg.base.dataset_path);
    const GroundTruth truth = load_ground_truth(*cfg.base.truth_path, data.dim());
    const MethodConfig mc = resolve_k(cfg.base.method, &truth);
    const auto thresholds = cfg.thresholds.empty() ? default_thresholds() : cfg.thresholds;

    SweepTable table;
    table.method = std::string(method_name(m));
    table.dataset = stem_name(cfg.base);
    table.seeds = cfg.base.seeds;
    table.rows = threshold_sweep(data, truth, mc, thresholds, cfg.base.seeds);

    fs::create_directories(cfg.base.output_dir);
    write_sweep(cfg.base.output_dir, table, cfg.base.format);
    if (cfg.plot) {
        write_text(cfg.base.output_dir / "sweep.svg",
                   render_sweep(table.rows, table.method + " on " + table.dataset + ": MSE vs threshold"));
    }
    for (const auto& r : table.rows) {
        log << "T=" << format_double(r.threshold) << " mse=" << format_double(r.median_mse)
            << " removed=" << format_double(r.median_removed) << '\n';
    }
    return 0;
}

int cmd_gen(const GenSpec& spec, const fs::path& data_out, const fs::path& truth_out,
            std::ostream& log) {
    const auto [data, truth] = generate(spec);
    save_dataset(data_out, data);
    save_points(truth_out, truth.centroids);
    log << "wrote " << data.size() << " points to " << data_out.string() << " and " << truth.count()
        << " centroids to " << truth_out.string() << '\n';
    return 0;
}

namespace {

std::set<PointId> read_removed_ids(const fs::path& path, std::optional<std::uint64_t> seed) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::set<PointId> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream s(line);
        for (std::string tok; std::getline(s, tok, ',');) f.push_back(tok);
        if (f.size() != 6) throw ParseError(path.string(), line_no, "expected 6 columns");
        try {
            if (seed && std::stoull(f[2]) != *seed) continue;
            ids.insert(static_cast<PointId>(std::stoull(f[4])));
        } catch (const std::exception&) {
            throw ParseError(path.string(), line_no, "malformed seed or id");
        }
    }
    return ids;
}

}  // namespace

int cmd_plot(const PlotSpec& spec, std::ostream& log) {
    std::string svg;
    if (spec.kind == PlotKind::mse_vs_threshold) {
        const SweepTable t = read_sweep_csv(spec.sweep);
        svg = render_sweep(t.rows, "MSE vs threshold");
    } else {
        const DataSet data = load_dataset(spec.data);
        if (data.dim() != 2) throw DimensionMismatch("scatter plots need 2-D data");
        const Centroids centroids(load_ground_truth(spec.centroids, data.dim()).centroids);
        std::set<PointId> removed;
        if (spec.kind == PlotKind::scatter_removed) {
            if (!spec.removed) throw InvalidArgument("scatter_removed needs --removed");
            removed = read_removed_ids(*spec.removed, spec.seed);
        }
        svg = render_scatter(data, centroids, removed,
                             spec.kind == PlotKind::scatter_removed ? "clusters and removed points"
                                                                    : "clusters");
    }
    if (spec.output.has_parent_path()) fs::create_directories(spec.output.parent_path());
    write_text(spec.output, svg);
    log << "wrote " << spec.output.string() << '\n';
    return 0;
}

namespace {

struct MethodFlags {
    std::string method = "proposed";
    std::string data;
    std::string truth;
    std::string name;
    std::vector<std::uint64_t> seeds{1};
    double threshold = 0.9;
    std::size_t iterations = 10;
    std::size_t k = 0;
    std::size_t k_prime = 0;
    std::string out = "out";
    std::string format = "csv";
    std::size_t restarts = 10;
    std::size_t max_iters = 100;
    double tol = 1e-6;
    std::size_t subsamples = 5;
    double subsample_fraction = 0.1;
    std::size_t population = 20;
    std::size_t generations = 50;
    double mutation_prob = 0.05;
    double mutation_scale = 0.02;
    std::size_t elitism = 1;
    std::size_t tournament = 2;
    std::size_t stall = 15;
    std::size_t knn_k = 5;
    double odin_threshold = 0.5;
    bool timing = false;
};

void add_common_flags(CLI::App* app, MethodFlags& f, bool needs_method, bool needs_data) {
    if (needs_method) {
        app->add_option("--method", f.method, "kmeans | igk | odin | orc | proposed")
            ->check(CLI::IsMember({"kmeans", "igk", "odin", "orc", "proposed"}))
            ->capture_default_str();
    }
    if (needs_data) {
        app->add_option("--data", f.data, "dataset file")->required();
        app->add_option("--truth", f.truth, "ground-truth centroid file");
        app->add_option("--name", f.name, "dataset label in outputs (default: file stem)");
    }
    app->add_option("--seed", f.seeds, "seed list (repeat or comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    app->add_option("--threshold", f.threshold, "removal threshold T")->capture_default_str();
    app->add_option("--iterations", f.iterations, "removal iterations I")->capture_default_str();
    app->add_option("--k", f.k, "cluster count (default: ground-truth count)");
    app->add_option("--k-prime", f.k_prime, "IGK intermediate cluster count (default: 2k)");
    app->add_option("--out", f.out, "output directory")->capture_default_str();
    app->add_option("--format", f.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app->add_option("--restarts", f.restarts, "K-means restarts")->capture_default_str();
    app->add_option("--max-iters", f.max_iters, "Lloyd iteration cap")->capture_default_str();
    app->add_option("--tol", f.tol, "Lloyd centroid-shift tolerance")->capture_default_str();
    app->add_option("--subsamples", f.subsamples, "IGK subsample count")->capture_default_str();
    app->add_option("--subsample-fraction", f.subsample_fraction, "IGK subsample fraction")
        ->capture_default_str();
    app->add_option("--population", f.population, "GA population size")->capture_default_str();
    app->add_option("--generations", f.generations, "GA generations")->capture_default_str();
    app->add_option("--mutation-prob", f.mutation_prob, "GA per-center mutation probability")
        ->capture_default_str();
    app->add_option("--mutation-scale", f.mutation_scale, "GA mutation sigma / bbox diagonal")
        ->capture_default_str();
    app->add_option("--elitism", f.elitism, "GA elite count")->capture_default_str();
    app->add_option("--tournament", f.tournament, "GA tournament size")->capture_default_str();
    app->add_option("--stall", f.stall, "GA stall generations")->capture_default_str();
    app->add_option("--knn-k", f.knn_k, "ODIN neighbours per vertex")->capture_default_str();
    app->add_option("--odin-threshold", f.odin_threshold, "ODIN threshold on 1/(indegree+1)")
        ->capture_default_str();
    app->add_flag("--timing", f.timing, "record wall-clock runtime_ms (outputs stop being reproducible)");
}

RunConfig to_run_config(const MethodFlags& f) {
    RunConfig rc;
    MethodConfig& mc = rc.method;
    const auto m = parse_method(f.method);
    if (!m) throw InvalidArgument("unknown method " + f.method);
    mc.method = *m;
    mc.k = f.k;
    mc.k_prime = f.k_prime;
    mc.restarts = f.restarts;
    mc.lloyd = {f.max_iters, f.tol};
    mc.igk.num_subsamples = f.subsamples;
    mc.igk.subsample_fraction = f.subsample_fraction;
    mc.igk.ga.population_size = f.population;
    mc.igk.ga.generations = f.generations;
    mc.igk.ga.mutation_prob = f.mutation_prob;
    mc.igk.ga.mutation_scale = f.mutation_scale;
    mc.igk.ga.elitism = f.elitism;
    mc.igk.ga.tournament_size = f.tournament;
    mc.igk.ga.stall_generations = f.stall;
    mc.removal.iterations = f.iterations;
    mc.removal.threshold = f.threshold;
    mc.removal.allow_unit_threshold = f.threshold == 1.0;
    mc.odin.knn_k = f.knn_k;
    mc.odin.threshold = f.odin_threshold;

    rc.dataset_name = f.name;
    rc.dataset_path = f.data;
    if (!f.truth.empty()) rc.truth_path = f.truth;
    rc.output_dir = f.out;
    rc.format = f.format == "json" ? Format::json : Format::csv;
    rc.seeds = f.seeds;
    if (rc.seeds.empty()) throw InvalidArgument("at least one seed is required");
    rc.record_timing = f.timing;
    return rc;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Clustering with iterative outlier removal (IGK, ORC, ODIN, K-means)"};
    app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
    app.require_subcommand(1);

    MethodFlags run_flags;
    auto* run = app.add_subcommand("run", "run one method on a dataset for each seed");
    add_common_flags(run, run_flags, true, true);

    MethodFlags bench_flags;
    std::vector<std::string> bench_sets;
    std::string sets_dir;
    std::vector<std::string> bench_methods{"kmeans", "orc", "proposed"};
    auto* bench = app.add_subcommand("bench", "methods x datasets MSE comparison");
    add_common_flags(bench, bench_flags, false, false);
    bench->add_option("--dataset", bench_sets, "NAME,DATA,TRUTH (repeatable)");
    bench->add_option("--sets-dir", sets_dir, "directory holding a1.txt, a1-ga-cb.txt, ...");
    bench->add_option("--methods", bench_methods, "methods to compare")
        ->delimiter(',')
        ->check(CLI::IsMember({"kmeans", "igk", "odin", "orc", "proposed"}))
        ->capture_default_str();

    MethodFlags sweep_flags;
    std::vector<double> thresholds;
    bool sweep_plot = false;
    auto* sweep = app.add_subcommand("sweep", "MSE and removals against the threshold");
    add_common_flags(sweep, sweep_flags, true, true);
    sweep->add_option("--thresholds", thresholds, "threshold list (default 0.5..1.0 step 0.05)")
        ->delimiter(',');
    sweep->add_flag("--plot", sweep_plot, "also write sweep.svg");

    GenSpec gen_spec;
    std::string gen_out, gen_truth;
    auto* gen = app.add_subcommand("gen", "generate a synthetic Gaussian-blob dataset");
    gen->add_option("--clusters", gen_spec.num_clusters)->capture_default_str();
    gen->add_option("--points-per-cluster", gen_spec.points_per_cluster)->capture_default_str();
    gen->add_option("--dim", gen_spec.dimension)->capture_default_str();
    gen->add_option("--spread", gen_spec.spread, "per-axis standard deviation")->capture_default_str();
    gen->add_option("--box-min", gen_spec.box_min)->capture_default_str();
    gen->add_option("--box-max", gen_spec.box_max)->capture_default_str();
    gen->add_option("--outlier-fraction", gen_spec.outlier_fraction)->capture_default_str();
    gen->add_option("--seed", gen_spec.seed)->capture_default_str();
    gen->add_option("--out", gen_out, "dataset output file")->required();
    gen->add_option("--truth-out", gen_truth, "ground-truth output file")->required();

    PlotSpec plot_spec;
    std::string plot_kind = "scatter_clusters";
    std::string plot_data, plot_centroids, plot_removed, plot_sweep, plot_out;
    std::uint64_t plot_seed = 0;
    auto* plot = app.add_subcommand("plot", "render an SVG figure");
    plot->add_option("--kind", plot_kind)
        ->check(CLI::IsMember({"scatter_clusters", "scatter_removed", "mse_vs_threshold"}))
        ->capture_default_str();
    plot->add_option("--data", plot_data, "dataset file (scatter kinds)");
    plot->add_option("--centroids", plot_centroids, "centroid file, e.g. centroids_<method>_seed<S>.txt");
    plot->add_option("--removed", plot_removed, "removed.csv from a run");
    auto* plot_seed_opt = plot->add_option("--seed", plot_seed, "only removals of this seed");
    plot->add_option("--sweep", plot_sweep, "sweep.csv (mse_vs_threshold)");
    plot->add_option("--out", plot_out, "output .svg file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) return cmd_run(to_run_config(run_flags), std::cout);
        if (*bench) {
            BenchConfig bc;
            bench_flags.method = "kmeans";
            bc.base = to_run_config(bench_flags);
            bc.methods.clear();
            for (const auto& m : bench_methods) bc.methods.push_back(*parse_method(m));
            if (!sets_dir.empty()) bc.datasets = discover_reference_sets(sets_dir);
            for (const auto& spec : bench_sets) {
                std::vector<std::string> parts;
                std::istringstream s(spec);
                for (std::string tok; std::getline(s, tok, ',');) parts.push_back(tok);
                if (parts.size() != 3) throw InvalidArgument("--dataset expects NAME,DATA,TRUTH");
                bc.datasets.push_back({parts[0], parts[1], parts[2]});
            }
            return cmd_bench(bc, std::cout);
        }
        if (*sweep) {
            SweepConfig sc;
            sc.base = to_run_config(sweep_flags);
            sc.thresholds = thresholds;
            sc.plot = sweep_plot;
            return cmd_sweep(sc, std::cout);
        }
        if (*gen) return cmd_gen(gen_spec, gen_out, gen_truth, std::cout);
        if (*plot) {
            plot_spec.kind = *parse_plot_kind(plot_kind);
            plot_spec.data = plot_data;
            plot_spec.centroids = plot_centroids;
            if (!plot_removed.empty()) plot_spec.removed = plot_removed;
            if (plot_seed_opt->count()) plot_spec.seed = plot_seed;
            plot_spec.sweep = plot_sweep;
            plot_spec.output = plot_out;
            return cmd_plot(plot_spec, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace igk::cli
