#pragma once
// (mu/mu_w, lambda)-CMA-ES with cumulative step-size adaptation and rank-one plus rank-mu
// covariance updates. Minimizes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace origami {

using Objective = std::function<double(std::span<const double>)>;

struct CmaEsOptions {
    std::size_t population = 0;  // 0: 4 + floor(3 ln d)
    std::size_t max_generations = 300;
    std::size_t max_evaluations = 30000;
    std::uint64_t seed = 0;
    /// Stop once the best value drops below this.
    double target = -std::numeric_limits<double>::infinity();
};

struct GenerationRecord {
    std::size_t generation = 0;
    double best_so_far = 0.0;      // objective value
    double population_mean = 0.0;  // mean objective value of the finite offspring
    double step_size = 0.0;
    std::vector<double> mean;
};

struct CmaEsResult {
    std::vector<double> best_x;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<GenerationRecord> history;
    std::size_t evaluations = 0;
    std::size_t non_finite = 0;  // objective values replaced by +inf
};

std::size_t default_population(std::size_t dimension);

CmaEsResult cma_es_minimize(const Objective& objective, std::span<const double> init_mean,
                            double init_sigma, const CmaEsOptions& options);

}  // namespace origami
