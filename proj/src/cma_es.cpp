#include "origami/cma_es.hpp"

#include "origami/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace origami {

std::size_t default_population(std::size_t dimension) {
    return 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(dimension))));
}

CmaEsResult cma_es_minimize(const Objective& objective, std::span<const double> init_mean,
                            double init_sigma, const CmaEsOptions& options) {
    using Eigen::MatrixXd;
    using Eigen::VectorXd;

    const std::size_t n = init_mean.size();
    if (n == 0) throw DomainError("CMA-ES needs dimension >= 1");
    if (!(init_sigma > 0.0)) throw DomainError("CMA-ES needs a positive initial step size");
    if (options.max_generations == 0) throw DomainError("CMA-ES needs a budget of at least one generation");

    const double dn = static_cast<double>(n);
    const std::size_t lambda = options.population ? options.population : default_population(n);
    const std::size_t mu = lambda / 2;

    VectorXd weights(mu);
    for (std::size_t i = 0; i < mu; ++i) weights[i] = std::log(mu + 0.5) - std::log(static_cast<double>(i + 1));
    weights /= weights.sum();
    const double mu_eff = 1.0 / weights.squaredNorm();

    const double c_sigma = (mu_eff + 2.0) / (dn + mu_eff + 5.0);
    const double d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (dn + 1.0)) - 1.0) + c_sigma;
    const double c_c = (4.0 + mu_eff / dn) / (dn + 4.0 + 2.0 * mu_eff / dn);
    const double c_1 = 2.0 / ((dn + 1.3) * (dn + 1.3) + mu_eff);
    const double c_mu = std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((dn + 2.0) * (dn + 2.0) + mu_eff));
    const double chi_n = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));

    VectorXd mean = Eigen::Map<const VectorXd>(init_mean.data(), static_cast<Eigen::Index>(n));
    double sigma = init_sigma;
    VectorXd p_sigma = VectorXd::Zero(n);
    VectorXd p_c = VectorXd::Zero(n);
    MatrixXd C = MatrixXd::Identity(n, n);
    MatrixXd B = MatrixXd::Identity(n, n);
    VectorXd D = VectorXd::Ones(n);

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    CmaEsResult result;
    std::vector<VectorXd> xs(lambda), ys(lambda);
    std::vector<double> values(lambda);
    std::vector<std::size_t> order(lambda);

    for (std::size_t gen = 0; gen < options.max_generations; ++gen) {
        if (result.evaluations + lambda > options.max_evaluations && gen > 0) break;

        for (std::size_t k = 0; k < lambda; ++k) {
            VectorXd z(n);
            for (std::size_t i = 0; i < n; ++i) z[i] = gauss(rng);
            ys[k] = B * D.asDiagonal() * z;
            xs[k] = mean + sigma * ys[k];
            double v = objective(std::span<const double>(xs[k].data(), n));
            if (!std::isfinite(v)) {
                ++result.non_finite;
                v = std::numeric_limits<double>::infinity();
            }
            values[k] = v;
        }
        result.evaluations += lambda;

        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        if (values[order[0]] < result.best_value) {
            result.best_value = values[order[0]];
            result.best_x.assign(xs[order[0]].data(), xs[order[0]].data() + n);
        }

        VectorXd y_w = VectorXd::Zero(n);
        for (std::size_t i = 0; i < mu; ++i) y_w += weights[i] * ys[order[i]];
        mean += sigma * y_w;

        // C^{-1/2} y_w = B D^{-1} B^T y_w
        const VectorXd c_inv_sqrt_y = B * D.cwiseInverse().asDiagonal() * B.transpose() * y_w;
        p_sigma = (1.0 - c_sigma) * p_sigma + std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff) * c_inv_sqrt_y;
        const double ps_norm = p_sigma.norm();
        const double gen_factor = 1.0 - std::pow(1.0 - c_sigma, 2.0 * static_cast<double>(gen + 1));
        const bool h_sigma = ps_norm / std::sqrt(gen_factor) / chi_n < 1.4 + 2.0 / (dn + 1.0);
        p_c = (1.0 - c_c) * p_c + (h_sigma ? std::sqrt(c_c * (2.0 - c_c) * mu_eff) : 0.0) * y_w;

        MatrixXd rank_mu = MatrixXd::Zero(n, n);
        for (std::size_t i = 0; i < mu; ++i) rank_mu += weights[i] * ys[order[i]] * ys[order[i]].transpose();
        const double delta_h = h_sigma ? 0.0 : c_c * (2.0 - c_c);
        C = (1.0 - c_1 - c_mu) * C + c_1 * (p_c * p_c.transpose() + delta_h * C) + c_mu * rank_mu;
        sigma *= std::exp((c_sigma / d_sigma) * (ps_norm / chi_n - 1.0));

        C = 0.5 * (C + C.transpose());
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(C);
        B = eig.eigenvectors();
        D = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt();

        GenerationRecord rec;
        rec.generation = gen;
        rec.best_so_far = result.best_value;
        rec.step_size = sigma;
        double sum = 0.0;
        std::size_t finite = 0;
        for (double v : values)
            if (std::isfinite(v)) {
                sum += v;
                ++finite;
            }
        rec.population_mean = finite ? sum / static_cast<double>(finite) : std::numeric_limits<double>::infinity();
        rec.mean.assign(mean.data(), mean.data() + n);
        result.history.push_back(std::move(rec));

        if (result.best_value < options.target) break;
        if (!std::isfinite(sigma) || sigma * D.maxCoeff() < 1e-300) break;
    }
    return result;
}

}  // namespace origami
