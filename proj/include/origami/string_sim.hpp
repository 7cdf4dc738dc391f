#pragma once

#include "origami/fab_model.hpp"
#include "origami/fold_kinematics.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace origami {

struct TsaConfig {
    Vec2 rotation_center = Vec2::Zero();  // rail plane, flat pattern coordinates
    double rotation_diameter = 10.0;       // d_1
    double first_hole_gap = 0.0;           // d_2; 0 measures each pair's gap from the flat pattern
    double string_width = 1.0;             // d_s
    int strings_per_unit = 4;

    void validate() const;
};

enum class StringSide { Above, Below };

const char* to_string(StringSide side) noexcept;

struct Waypoint {
    AnchoredPoint hole;
    StringSide side = StringSide::Below;  // side of the segment leaving this hole
};

struct StringRoute {
    std::vector<Waypoint> waypoints;  // first entry hole first; the TSA end precedes it
    int pair = 0;                     // strings sharing a pair share d_2 and the anchor offset
    double initial_length = std::numeric_limits<double>::quiet_NaN();  // L_0
};

struct RoutingPlan {
    std::vector<StringRoute> strings;
};

struct RoutingIssue {
    std::size_t string = 0;
    std::size_t segment = 0;  // waypoint index where the segment starts
    std::vector<std::size_t> creases;
    std::string message;
};

struct RoutingReport {
    bool ok = true;
    std::vector<RoutingIssue> issues;
};

/// Remaining string length between the TSA and the first entry hole at a given twist.
double tsa_segment_length(const TsaConfig& config, double anchor_offset, double twist, double first_hole_gap);

/// Convenience overload using config.first_hole_gap.
double tsa_segment_length(const TsaConfig& config, double anchor_offset, double twist);

/// A mountain crossing needs the string below, a valley crossing above.
RoutingReport validate_routing(const RoutingPlan& plan, const CreasePattern& pattern);

/// Non-border creases crossed by the flat segment p-q.
std::vector<std::size_t> segment_crossings(const CreasePattern& pattern, const Vec2& p, const Vec2& q);

/// Sets each segment's side from the creases it crosses (below mountains, above valleys).
/// Segments crossing both kinds keep their flag and remain a validation failure.
RoutingPlan assign_sides(const RoutingPlan& plan, const CreasePattern& pattern);

/// Planar frame of the rail: the origami stays centred with fixed orientation while folding.
struct RailFrame {
    Vec3 origin = Vec3::Zero();  // folded area centroid
    Vec3 x_axis = Vec3::UnitX();
    Vec3 y_axis = Vec3::UnitY();
    Vec3 normal = Vec3::UnitZ();
    Vec2 flat_centroid = Vec2::Zero();

    Vec3 to_rail(const Vec3& world) const;
};

RailFrame rail_frame(const FoldedGeometry& folded);

/// Rigid planar offset of the origami on the rail, applied about the flat centroid.
struct RailPose {
    double dx = 0.0;
    double dy = 0.0;
    double rotation = 0.0;
};

enum class PoseMode { Pinned, Free };

struct PairGeometry {
    double anchor_offset = 0.0;    // |x_dis|
    double first_hole_gap = 0.0;   // d_2
};

/// L_0 per string from the flat state at zero twist.
RoutingPlan measure_initial_lengths(const RoutingPlan& plan, const FoldedGeometry& flat, const TsaConfig& config);

struct StringState {
    double tsa_side_length = 0.0;
    std::vector<double> segment_lengths;
    std::vector<Vec3> hole_positions;  // rail coordinates
    double slack = 0.0;
    bool taut = false;
};

struct QuasiStaticState {
    std::size_t index = 0;
    double twist = 0.0;
    double fold_theta = 0.0;
    RailPose pose;
    std::vector<StringState> strings;
};

struct SimulationOptions {
    PoseMode pose_mode = PoseMode::Pinned;
    double grid_step = 0.1 * kPi / 180.0;
    double taut_tolerance = 1e-6;
    std::function<void(std::size_t)> on_state;  // called with each accepted state index
};

struct SimulationResult {
    std::vector<QuasiStaticState> states;
    bool completed = false;  // every scheduled twist was reached
    double theta_limit = 0.0;
    std::string stop_reason;
    std::vector<std::string> warnings;
};

/// Default twist schedule: 0 to 20 pi in steps of pi/36.
std::vector<double> default_twist_schedule();

/// Minimal-fold quasi-static states for each twist; stops at the first infeasible twist.
/// Throws SetupError when the strings are already too short at the first twist.
SimulationResult solve_quasi_static(const CreasePattern& pattern, const RoutingPlan& plan, const TsaConfig& config,
                                    const std::vector<double>& twist_schedule, const FabricationParams& fab_limits,
                                    const SimulationOptions& options = {});

/// 6x4 Miura sheet of 120 x 120 mm with holes at panel centres and four strings in two pairs
/// pulled by one TSA beyond the top edge.
struct StringScenario {
    TransitionGraphDesign design;
    CreasePattern pattern;
    RoutingPlan plan;
    TsaConfig config;
    FabricationParams fab;
};

StringScenario miura_folding_scenario();

/// Angle at waypoint k (radians) between the neighbouring string segments.
double waypoint_angle(const StringState& string, std::size_t k);

/// CSV: state,twist,fold_theta,slack_0..slack_{n-1}
std::string simulation_trace_csv(const SimulationResult& result);

}  // namespace origami
