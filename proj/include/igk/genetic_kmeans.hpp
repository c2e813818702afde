#ifndef IGK_GENETIC_KMEANS_HPP
#define IGK_GENETIC_KMEANS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "igk/dataset.hpp"
#include "igk/kmeans.hpp"

namespace igk {

/// Real-coded candidate codebook with its squared error and fitness 1/(1+Jc).
struct Chromosome {
    Centroids centers;
    double jc = 0.0;
    double fitness = 0.0;

    static Chromosome evaluated(const DataSet& data, Centroids centers);
};

struct GaConfig {
    std::size_t population_size = 20;
    std::size_t generations = 50;
    double mutation_prob = 0.05;   // per center
    double mutation_scale = 0.02;  // Gaussian sigma as a fraction of the bbox diagonal
    std::size_t elitism = 1;
    std::size_t tournament_size = 2;
    std::size_t stall_generations = 15;
    std::uint64_t seed = 0;

    void validate() const;
};

struct IgkConfig {
    std::size_t k = 2;
    std::size_t k_prime = 4;
    std::size_t num_subsamples = 5;
    double subsample_fraction = 0.1;
    GaConfig ga;

    /// Defaults for target k: K' = 2k, everything else as above.
    static IgkConfig for_k(std::size_t k);
    void validate() const;
};

/// Per-generation record of a GKM run. Entry 0 is the initial population.
struct GaTrace {
    std::vector<double> population_best_jc;
    std::vector<double> best_so_far_jc;
    std::size_t generations_run = 0;
};

/// Generational GA over centroid codebooks. Each offspring is a
/// tournament-selected parent, mutated per center, then improved by one
/// Lloyd step. No crossover. The warm start, if given, seeds one member of
/// the initial population and the rest are random point samples.
ClusteringResult genetic_kmeans(const DataSet& data, std::size_t k, const GaConfig& cfg,
                                const std::optional<Centroids>& warm_start = std::nullopt,
                                GaTrace* trace = nullptr);

/// Record of the seeding stage of an IGK run.
struct IgkTrace {
    std::vector<Centroids> subsample_centers;
    std::vector<double> subsample_full_jc;  // each seed scored on the full dataset
    std::size_t selected = 0;
    ClusteringResult before_merge;
};

/// Subsample GKM runs, minimum full-data Jc seed selection, full-data GKM
/// at K', then nearest-pair merging down to k. The returned partition is
/// the nearest-center assignment for the merged codebook.
ClusteringResult igk(const DataSet& data, const IgkConfig& cfg, IgkTrace* trace = nullptr);

/// Merges the two closest centers into their size-weighted mean. The merged
/// cluster takes the lower index; labels above the higher index shift down.
/// The partition is the union of the two clusters, not a reassignment.
ClusteringResult merge_step(const ClusteringResult& result, const DataSet& data);

}  // namespace igk

#endif  // IGK_GENETIC_KMEANS_HPP
