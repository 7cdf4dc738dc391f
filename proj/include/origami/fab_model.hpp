#pragma once

#include "origami/crease_pattern.hpp"
#include "origami/fold_kinematics.hpp"
#include "origami/mesh.hpp"

#include <string>
#include <vector>

namespace origami {

struct FabricationParams {
    double inner_bias = 3.0;           // b
    double panel_height = 2.2;         // h
    double membrane_thickness = 0.4;   // t, mid-layers and creases
    double hole_radius = 1.5;
    double midlayer_extra_bias = 0.2;
    double hole_margin = 0.5;
    int hole_segments = 48;

    void validate() const;
};

/// Largest fold angle before neighbouring thick panels collide.
double max_fold_angle(const FabricationParams& params) noexcept;

/// Parallel inset of a convex CCW polygon. Throws GeometryError when nothing remains.
std::vector<Vec2> inset_panel(std::span<const Vec2> polygon, double bias, const std::string& name = "panel");

/// Where hole centres may go; empty when the panel is too small.
std::vector<Vec2> operation_region(std::span<const Vec2> polygon, const FabricationParams& params);

struct Hole {
    AnchoredPoint anchor;
    double radius = 0.0;
};

enum class HoleMode { AutoCenter, Manual };

struct HolePlan {
    std::vector<Hole> holes;
    std::vector<std::string> warnings;
};

/// AutoCenter puts one hole at each panel centroid that lies inside its operation region.
/// Manual checks every request and throws GeometryError for one outside its region.
HolePlan place_holes(const CreasePattern& pattern, const FabricationParams& params, HoleMode mode,
                     const std::vector<AnchoredPoint>& requests = {});

struct FabricationModel {
    FabricationParams params;
    std::vector<Hole> holes;
    TriangleMesh infills;
    TriangleMesh mid_layers;
    TriangleMesh shells;
    TriangleMesh creases;
    double max_fold_angle = 0.0;
    std::vector<std::string> warnings;
};

/// Four-part thick-panel model. Throws GeometryError for self-intersecting or non-convex
/// patterns and for holes outside their operation regions.
FabricationModel generate_meshes(const CreasePattern& pattern, const FabricationParams& params,
                                 const std::vector<Hole>& holes);

}  // namespace origami
