#include "origami/design_optimizer.hpp"

#include "origami/errors.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

namespace origami {

bool Region::contains(const Vec2& p) const {
    for (const auto& h : half_planes)
        if (h.normal.dot(p) < h.offset) return false;
    if (polygon.size() < 3) return true;
    bool inside = false;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = polygon[i];
        const Vec2& b = polygon[j];
        if (point_segment_distance(p, a, b) <= 1e-9) return true;
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (p.x() < x) inside = !inside;
        }
    }
    return inside;
}

Region Region::quadrant(double x_min, double y_min) {
    return Region{{HalfPlane{Vec2::UnitX(), x_min}, HalfPlane{Vec2::UnitY(), y_min}}, {}};
}

Region Region::box(double x_min, double y_min, double x_max, double y_max) {
    return Region{{HalfPlane{Vec2::UnitX(), x_min}, HalfPlane{Vec2::UnitY(), y_min},
                   HalfPlane{-Vec2::UnitX(), -x_max}, HalfPlane{-Vec2::UnitY(), -y_max}},
                  {}};
}

void DesignTask::validate() const {
    if (waypoints.size() < 2) throw DomainError("design task needs at least two waypoints");
    if (!(reward_weight > 0.0 && reward_weight < 600.0))
        throw DomainError("reward weight must lie in (0, 600)");
    if (unit_count == 0) throw DomainError("unit count must be at least 1");
}

DesignTask reference_arm_task() {
    DesignTask t;
    t.start_anchor = Vec2(0.0, 0.0);
    t.waypoints = {Vec2(250.0, 0.0), Vec2(50.0, 133.3)};
    t.warning_regions = {Region::quadrant(140.0, 30.0)};
    t.prohibited_regions = {Region::quadrant(150.0, 40.0)};
    t.reward_weight = 120.0;
    t.unit_count = 5;
    return t;
}

double fitness_formula(double reward_weight, double start_distance, double end_distance, int improper_count) {
    return (reward_weight / (10.0 + start_distance) + (600.0 - reward_weight) / (10.0 + end_distance)) -
           4.0 * improper_count;
}

ImproperCount count_improper_states(const std::vector<PlanarState>& trajectory, const DesignTask& task) {
    ImproperCount out;
    for (const auto& state : trajectory) {
        const Vec2& te = state.endpoint;
        bool prohibited = false;
        for (const auto& r : task.prohibited_regions) prohibited = prohibited || r.contains(te);
        bool warning = prohibited;
        for (const auto& r : task.warning_regions) warning = warning || r.contains(te);
        if (warning || polyline_self_intersects(state)) ++out.count;
        out.prohibited_hit = out.prohibited_hit || prohibited;
    }
    return out;
}

FitnessBreakdown evaluate_fitness(const TransitionGraphDesign& design, const DesignTask& task) {
    task.validate();
    FitnessBreakdown fb;
    std::vector<PlanarState> trajectory;
    try {
        TransitionGraphDesign anchored = design;
        anchored.start = task.start_anchor;
        trajectory = sample_trajectory(anchored);
    } catch (const DomainError&) {
        fb.degenerate = true;
        fb.fitness = kWorstFitness;
        return fb;
    }
    const auto improper = count_improper_states(trajectory, task);
    fb.improper_count = improper.count;
    fb.prohibited_hit = improper.prohibited_hit;
    fb.start_distance = (trajectory.front().endpoint - task.waypoints.front()).norm();
    fb.end_distance = (trajectory.back().endpoint - task.waypoints.back()).norm();
    fb.fitness = fitness_formula(task.reward_weight, fb.start_distance, fb.end_distance, fb.improper_count);

    // Extra waypoints are matched at evenly spaced samples between the two ends.
    const std::size_t np = task.waypoints.size();
    const std::size_t last = trajectory.size() - 1;
    for (std::size_t j = 1; j + 1 < np; ++j) {
        const auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(j * last) / static_cast<double>(np - 1)));
        const double d = (trajectory[idx].endpoint - task.waypoints[j]).norm();
        fb.intermediate_distances.push_back(d);
        fb.fitness += task.reward_weight / (10.0 + d);
    }
    return fb;
}

double GenomeCodec::decode_length(double gene) const noexcept {
    return min_length + std::exp(std::min(gene, 700.0));
}

double GenomeCodec::encode_length(double length) const {
    if (!(length > min_length)) throw DomainError("length below the codec minimum");
    return std::log(length - min_length);
}

double GenomeCodec::decode_angle(double gene) const noexcept {
    const double s = 1.0 / (1.0 + std::exp(-gene));
    const double lower_span = kPi / 2.0 - kGuard - kAngleLow;
    const double u = s * 2.0 * lower_span;
    return u < lower_span ? kAngleLow + u : kPi / 2.0 + kGuard + (u - lower_span);
}

double GenomeCodec::encode_angle(double beta) const {
    const double lower_span = kPi / 2.0 - kGuard - kAngleLow;
    double u;
    if (beta > kAngleLow && beta < kPi / 2.0 - kGuard) u = beta - kAngleLow;
    else if (beta > kPi / 2.0 + kGuard && beta < kAngleHigh) u = lower_span + beta - (kPi / 2.0 + kGuard);
    else throw DomainError("shape angle outside the codec range");
    const double s = u / (2.0 * lower_span);
    return std::log(s / (1.0 - s));
}

TransitionGraphDesign GenomeCodec::decode(std::span<const double> genome, Vec2 start, EntryFlag first_flag) const {
    if (genome.size() != dimension()) throw DomainError("genome has the wrong dimension");
    TransitionGraphDesign d;
    d.start = start;
    d.first_flag = first_flag;
    for (std::size_t i = 0; i <= unit_count; ++i) d.lengths.push_back(decode_length(genome[i]));
    for (std::size_t i = 0; i < unit_count; ++i) d.shape_angles.push_back(decode_angle(genome[unit_count + 1 + i]));
    return d;
}

std::uint64_t run_seed(std::uint64_t seed, std::size_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

EvolutionRun evolve_design(const DesignTask& task, std::uint64_t seed, EntryFlag first_flag,
                           const DesignOptions& options) {
    task.validate();
    const GenomeCodec codec{task.unit_count, 1.0};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double reach = std::max((task.waypoints.front() - task.start_anchor).norm(), 10.0 * (task.unit_count + 1));
    const double per_length = reach / static_cast<double>(task.unit_count + 1);
    std::vector<double> mean(codec.dimension());
    for (std::size_t i = 0; i <= task.unit_count; ++i)
        mean[i] = codec.encode_length(per_length) + (unit(rng) - 0.5) * 0.6;
    for (std::size_t i = task.unit_count + 1; i < mean.size(); ++i) mean[i] = (unit(rng) - 0.5) * 3.0;
    const double sigma = 0.3 + 0.7 * unit(rng);

    auto objective = [&](std::span<const double> g) {
        return -evaluate_fitness(codec.decode(g, task.start_anchor, first_flag), task).fitness;
    };
    CmaEsOptions cma;
    cma.max_generations = options.max_generations;
    cma.max_evaluations = options.max_evaluations;
    cma.seed = rng();
    const auto res = cma_es_minimize(objective, mean, sigma, cma);

    EvolutionRun run;
    run.seed = seed;
    run.first_flag = first_flag;
    run.generations = res.history;
    for (const auto& g : res.history) run.best_fitness.push_back(-g.best_so_far);
    run.best_design = codec.decode(res.best_x, task.start_anchor, first_flag);
    run.best_breakdown = evaluate_fitness(run.best_design, task);
    run.evaluations = res.evaluations;
    return run;
}

std::vector<std::size_t> rank_runs(const std::vector<EvolutionRun>& runs) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < runs.size(); ++i)
        if (!runs[i].best_breakdown.prohibited_hit && !runs[i].best_breakdown.degenerate) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double fa = runs[a].best_breakdown.fitness;
        const double fb = runs[b].best_breakdown.fitness;
        if (fa != fb) return fa > fb;
        return runs[a].seed < runs[b].seed;
    });
    return idx;
}

DesignArmResult design_arm(const DesignTask& task, const DesignOptions& options) {
    task.validate();
    if (options.runs == 0) throw DomainError("design_arm needs at least one run");
    DesignArmResult result;
    result.runs.resize(options.runs);

    std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, options.runs);
    std::vector<std::future<void>> workers;
    std::atomic<std::size_t> next{0};
    for (std::size_t t = 0; t < threads; ++t) {
        workers.push_back(std::async(std::launch::async, [&] {
            for (std::size_t k = next++; k < options.runs; k = next++) {
                const EntryFlag flag = k % 2 == 0 ? EntryFlag::Mountain : EntryFlag::Valley;
                result.runs[k] = evolve_design(task, run_seed(options.seed, k), flag, options);
                if (options.on_run_done) options.on_run_done(k);
            }
        }));
    }
    for (auto& w : workers) w.get();

    result.ranking = rank_runs(result.runs);
    if (result.ranking.empty())
        result.diagnostic = "every run's best design enters a prohibited region or is degenerate";
    return result;
}

std::string generation_log_csv(const EvolutionRun& run) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "generation,best_f,sigma,mean\n";
    for (std::size_t i = 0; i < run.generations.size(); ++i) {
        const auto& g = run.generations[i];
        os << g.generation << ',' << run.best_fitness[i] << ',' << g.step_size << ',';
        for (std::size_t k = 0; k < g.mean.size(); ++k) os << (k ? ";" : "") << g.mean[k];
        os << '\n';
    }
    return os.str();
}

}  // namespace origami
