#include "igk/genetic_kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "igk/error.hpp"
#include "igk/rng.hpp"

namespace igk {

Chromosome Chromosome::evaluated(const DataSet& data, Centroids centers) {
    Chromosome c;
    c.jc = nearest_squared_error(data, centers);
    c.fitness = 1.0 / (1.0 + c.jc);
    c.centers = std::move(centers);
    return c;
}

void GaConfig::validate() const {
    if (population_size == 0) throw InvalidArgument("population_size must be positive");
    if (generations == 0) throw InvalidArgument("generations must be positive");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
        throw InvalidArgument("mutation_prob must lie in [0, 1]");
    }
    if (!(mutation_scale > 0.0)) throw InvalidArgument("mutation_scale must be positive");
    if (elitism >= population_size) throw InvalidArgument("elitism must be below population_size");
    if (tournament_size == 0 || tournament_size > population_size) {
        throw InvalidArgument("tournament_size must lie in [1, population_size]");
    }
    if (stall_generations == 0) throw InvalidArgument("stall_generations must be positive");
}

IgkConfig IgkConfig::for_k(std::size_t k) {
    IgkConfig cfg;
    cfg.k = k;
    cfg.k_prime = 2 * k;
    return cfg;
}

void IgkConfig::validate() const {
    if (k == 0) throw InvalidArgument("k must be positive");
    if (k_prime < k) throw InvalidArgument("k_prime must not be below k");
    if (num_subsamples == 0) throw InvalidArgument("num_subsamples must be positive");
    if (!(subsample_fraction > 0.0 && subsample_fraction <= 1.0)) {
        throw InvalidArgument("subsample_fraction must lie in (0, 1]");
    }
    ga.validate();
}

namespace {

double bbox_diagonal(const DataSet& data) {
    const std::size_t dim = data.dim();
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
        const auto p = data.point(pos);
        for (std::size_t d = 0; d < dim; ++d) {
            lo[d] = std::min(lo[d], p[d]);
            hi[d] = std::max(hi[d], p[d]);
        }
    }
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) s += (hi[d] - lo[d]) * (hi[d] - lo[d]);
    return std::sqrt(s);
}

std::size_t best_index(const std::vector<Chromosome>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (pop[i].jc < pop[best].jc) best = i;
    }
    return best;
}

class Evolver {
public:
    Evolver(const DataSet& data, const GaConfig& cfg)
        : data_(data), cfg_(cfg), rng_(make_rng(cfg.seed, 0)),
          sigma_(cfg.mutation_scale * bbox_diagonal(data)),
          pick_point_(0, data.size() - 1) {}

    Rng& rng() { return rng_; }

    const Chromosome& tournament(const std::vector<Chromosome>& pop) {
        std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
        std::size_t winner = pick(rng_);
        for (std::size_t t = 1; t < cfg_.tournament_size; ++t) {
            const std::size_t c = pick(rng_);
            if (pop[c].jc < pop[winner].jc || (pop[c].jc == pop[winner].jc && c < winner)) {
                winner = c;
            }
        }
        return pop[winner];
    }

    void mutate(Centroids& centers) {
        for (std::size_t j = 0; j < centers.count(); ++j) {
            if (unit_(rng_) >= cfg_.mutation_prob) continue;
            auto c = centers.row(j);
            if (unit_(rng_) < 0.5) {
                if (sigma_ <= 0.0) continue;  // all points coincide
                std::normal_distribution<double> jitter(0.0, sigma_);
                for (auto& x : c) x += jitter(rng_);
            } else {
                const auto p = data_.point(pick_point_(rng_));
                std::copy(p.begin(), p.end(), c.begin());
            }
        }
    }

private:
    const DataSet& data_;
    const GaConfig& cfg_;
    Rng rng_;
    double sigma_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::uniform_int_distribution<std::size_t> pick_point_;
};

}  // namespace

ClusteringResult genetic_kmeans(const DataSet& data, std::size_t k, const GaConfig& cfg,
                                const std::optional<Centroids>& warm_start, GaTrace* trace) {
    cfg.validate();
    if (k == 0 || k > data.size()) {
        throw InvalidArgument("k=" + std::to_string(k) + " must lie in [1, N=" +
                              std::to_string(data.size()) + "]");
    }
    if (warm_start && (warm_start->count() != k || warm_start->dim() != data.dim())) {
        throw DimensionMismatch("warm start must hold k centers of the data dimension");
    }

    Evolver evo(data, cfg);
    std::vector<Chromosome> population;
    population.reserve(cfg.population_size);
    if (warm_start) population.push_back(Chromosome::evaluated(data, *warm_start));
    while (population.size() < cfg.population_size) {
        population.push_back(Chromosome::evaluated(data, random_init(data, k, evo.rng())));
    }

    Chromosome best = population[best_index(population)];
    if (trace) {
        *trace = GaTrace{};
        trace->population_best_jc.push_back(best.jc);
        trace->best_so_far_jc.push_back(best.jc);
    }

    std::vector<std::size_t> order(population.size());
    std::size_t stall = 0;
    std::size_t generation = 0;
    while (generation < cfg.generations && stall < cfg.stall_generations) {
        ++generation;
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return population[a].jc < population[b].jc;
        });

        std::vector<Chromosome> next;
        next.reserve(cfg.population_size);
        for (std::size_t e = 0; e < cfg.elitism; ++e) next.push_back(population[order[e]]);
        while (next.size() < cfg.population_size) {
            Centroids child = evo.tournament(population).centers;
            evo.mutate(child);
            next.push_back(Chromosome::evaluated(data, lloyd_step(data, child)));
        }
        population = std::move(next);

        const Chromosome& gen_best = population[best_index(population)];
        if (gen_best.jc < best.jc) {
            best = gen_best;
            stall = 0;
        } else {
            ++stall;
        }
        if (trace) {
            trace->population_best_jc.push_back(gen_best.jc);
            trace->best_so_far_jc.push_back(best.jc);
        }
    }
    if (trace) trace->generations_run = generation;

    ClusteringResult r = evaluate(data, std::move(best.centers));
    r.iterations_run = generation;
    return r;
}

ClusteringResult merge_step(const ClusteringResult& result, const DataSet& data) {
    const std::size_t k = result.centroids.count();
    if (k < 2) throw InvalidArgument("merge_step needs at least two clusters");
    if (result.partition.labels.size() != data.size()) {
        throw InvalidArgument("partition does not cover the dataset");
    }

    std::size_t a = 0;
    std::size_t b = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double d = squared_distance(result.centroids.row(i), result.centroids.row(j));
            if (d < best) {
                best = d;
                a = i;
                b = j;
            }
        }
    }

    const double na = static_cast<double>(result.partition.sizes[a]);
    const double nb = static_cast<double>(result.partition.sizes[b]);
    ClusteringResult out;
    out.centroids = result.centroids;
    {
        auto ca = out.centroids.row(a);
        const auto cb = result.centroids.row(b);
        for (std::size_t d = 0; d < ca.size(); ++d) {
            ca[d] = (na + nb > 0.0) ? (na * ca[d] + nb * cb[d]) / (na + nb) : 0.5 * (ca[d] + cb[d]);
        }
    }
    out.centroids.erase_row(b);

    std::vector<std::size_t> labels = result.partition.labels;
    for (auto& l : labels) {
        if (l == b) {
            l = a;
        } else if (l > b) {
            --l;
        }
    }
    out.partition = Partition::from_labels(std::move(labels), k - 1);
    out.jc = squared_error(data, out.centroids, out.partition);
    out.iterations_run = result.iterations_run;
    return out;
}

ClusteringResult igk(const DataSet& data, const IgkConfig& cfg, IgkTrace* trace) {
    cfg.validate();
    if (cfg.k_prime > data.size()) throw InvalidArgument("k_prime exceeds the number of points");
    const std::size_t m = subsample_size(data.size(), cfg.subsample_fraction);
    if (m < cfg.k_prime) {
        throw InvalidArgument("subsample of " + std::to_string(m) + " points is too small for k'=" +
                              std::to_string(cfg.k_prime));
    }

    const auto samples =
        subsample(data, cfg.num_subsamples, cfg.subsample_fraction, derive_seed(cfg.ga.seed, 1));

    std::optional<Centroids> selected;
    double selected_jc = std::numeric_limits<double>::infinity();
    if (trace) *trace = IgkTrace{};
    for (std::size_t s = 0; s < samples.size(); ++s) {
        GaConfig ga = cfg.ga;
        ga.seed = derive_seed(cfg.ga.seed, 100 + s);
        ClusteringResult local = genetic_kmeans(samples[s], cfg.k_prime, ga);
        const double full_jc = nearest_squared_error(data, local.centroids);
        if (trace) {
            trace->subsample_centers.push_back(local.centroids);
            trace->subsample_full_jc.push_back(full_jc);
        }
        if (full_jc < selected_jc) {
            selected_jc = full_jc;
            selected = std::move(local.centroids);
            if (trace) trace->selected = s;
        }
    }

    GaConfig full_ga = cfg.ga;
    full_ga.seed = derive_seed(cfg.ga.seed, 2);
    ClusteringResult r = genetic_kmeans(data, cfg.k_prime, full_ga, selected);
    if (trace) trace->before_merge = r;

    while (r.centroids.count() > cfg.k) r = merge_step(r, data);

    const std::size_t iters = r.iterations_run;
    r = evaluate(data, std::move(r.centroids));
    r.iterations_run = iters;
    return r;
}

}  // namespace igk
