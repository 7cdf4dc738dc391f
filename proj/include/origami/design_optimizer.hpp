#pragma once

#include "origami/cma_es.hpp"
#include "origami/geometry.hpp"
#include "origami/transition_graph.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace origami {

/// {p : normal . p >= offset}
struct HalfPlane {
    Vec2 normal = Vec2::UnitX();
    double offset = 0.0;
};

/// Closed planar region: an intersection of half-planes, optionally restricted to a polygon.
struct Region {
    std::vector<HalfPlane> half_planes;
    std::vector<Vec2> polygon;  // any simple polygon; empty means unrestricted

    bool contains(const Vec2& p) const;

    /// {x >= x_min and y >= y_min}
    static Region quadrant(double x_min, double y_min);
    static Region box(double x_min, double y_min, double x_max, double y_max);
};

struct DesignTask {
    Vec2 start_anchor = Vec2::Zero();
    std::vector<Vec2> waypoints;  // P_start, ..., P_end
    std::vector<Region> warning_regions;
    std::vector<Region> prohibited_regions;
    double reward_weight = 120.0;
    std::size_t unit_count = 5;

    void validate() const;
};

/// The robotic-arm task used throughout the examples: anchor (0,0), targets (250,0) and
/// (50,133.3), warning x>=140 & y>=30, prohibited x>=150 & y>=40, reward weight 120.
DesignTask reference_arm_task();

struct FitnessBreakdown {
    double start_distance = 0.0;
    double end_distance = 0.0;
    std::vector<double> intermediate_distances;
    int improper_count = 0;
    bool prohibited_hit = false;
    bool degenerate = false;
    double fitness = 0.0;
};

inline constexpr double kWorstFitness = -1e9;

/// reward/(10 + d_start) + (600 - reward)/(10 + d_end) - 4 N
double fitness_formula(double reward_weight, double start_distance, double end_distance, int improper_count);

struct ImproperCount {
    int count = 0;
    bool prohibited_hit = false;
};

ImproperCount count_improper_states(const std::vector<PlanarState>& trajectory, const DesignTask& task);

FitnessBreakdown evaluate_fitness(const TransitionGraphDesign& design, const DesignTask& task);

/// Unconstrained genome -> design. Total for every finite input.
struct GenomeCodec {
    std::size_t unit_count = 5;
    double min_length = 1.0;
    static constexpr double kAngleLow = 0.02 * kPi;
    static constexpr double kAngleHigh = 0.98 * kPi;
    static constexpr double kGuard = 0.02 * kPi;

    std::size_t dimension() const noexcept { return 2 * unit_count + 1; }
    TransitionGraphDesign decode(std::span<const double> genome, Vec2 start, EntryFlag first_flag) const;
    double decode_angle(double gene) const noexcept;
    double encode_angle(double beta) const;
    double decode_length(double gene) const noexcept;
    double encode_length(double length) const;
};

struct EvolutionRun {
    std::uint64_t seed = 0;
    EntryFlag first_flag = EntryFlag::Mountain;
    std::vector<GenerationRecord> generations;  // objective = -fitness
    std::vector<double> best_fitness;           // best-so-far fitness per generation
    TransitionGraphDesign best_design;
    FitnessBreakdown best_breakdown;
    std::size_t evaluations = 0;
};

struct DesignOptions {
    std::size_t runs = 10;
    std::uint64_t seed = 0;
    std::size_t max_generations = 300;
    std::size_t max_evaluations = 30000;
    std::size_t threads = 0;  // 0: hardware concurrency
    std::function<void(std::size_t)> on_run_done;  // called with the finished run index, from worker threads
};

struct DesignArmResult {
    std::vector<EvolutionRun> runs;
    std::vector<std::size_t> ranking;  // indices into runs, best first, prohibited hits excluded
    std::string diagnostic;
};

/// Seed for run `index` of a multi-run search started from `seed`.
std::uint64_t run_seed(std::uint64_t seed, std::size_t index);

EvolutionRun evolve_design(const DesignTask& task, std::uint64_t seed, EntryFlag first_flag,
                           const DesignOptions& options);

DesignArmResult design_arm(const DesignTask& task, const DesignOptions& options = {});

/// Order runs by fitness (desc), ties broken by seed; runs with prohibited hits are dropped.
std::vector<std::size_t> rank_runs(const std::vector<EvolutionRun>& runs);

/// Per-generation CSV: generation,best_f,sigma,mean_0,...
std::string generation_log_csv(const EvolutionRun& run);

}  // namespace origami
