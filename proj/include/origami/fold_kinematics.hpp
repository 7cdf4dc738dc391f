#pragma once

#include "origami/crease_pattern.hpp"
#include "origami/geometry.hpp"

#include <vector>

namespace origami {

/// Plane of the transition graph in the folded state. Coordinates in this frame reproduce the
/// planar model: `to_planar(p)` maps a world point to the design's 2D coordinates.
struct BaseFrame {
    Vec3 origin = Vec3::Zero();
    Vec3 x_axis = Vec3::UnitX();
    Vec3 y_axis = Vec3::UnitZ();
    Vec3 normal = -Vec3::UnitY();
    Vec2 planar_origin = Vec2::Zero();

    Vec2 to_planar(const Vec3& p) const {
        const Vec3 d = p - origin;
        return planar_origin + Vec2(d.dot(x_axis), d.dot(y_axis));
    }
};

struct FoldedGeometry {
    CreasePattern pattern;
    double theta = 0.0;
    std::vector<RigidTransform> placements;  // one per panel
    std::vector<double> fold_angles;         // signed, per crease (valley > 0)
    BaseFrame base_frame;
    double max_closure_residual = 0.0;

    Vec3 vertex_position(PanelId panel, VertexId v) const {
        return placements.at(panel).apply(pattern.vertices.at(v));
    }
    /// Dihedral angle across a crease (pi for flat).
    double dihedral(std::size_t crease) const;
};

/// A point fixed to one panel, given by its flat-pattern position.
struct AnchoredPoint {
    PanelId panel = 0;
    Vec2 flat_position = Vec2::Zero();
};

/// Panel centroid as an anchor.
AnchoredPoint panel_center(const CreasePattern& pattern, PanelId panel);

/// Rigid folding with main creases at +/-theta. Throws KinematicError when the pattern cannot
/// close rigidly, DomainError when theta is outside [0, pi).
FoldedGeometry embed_fold(const CreasePattern& pattern, double theta);

std::vector<Vec3> locate_points(const FoldedGeometry& folded, const std::vector<AnchoredPoint>& anchors);

/// Worst rotation-product residual over the interior vertices for the given fold angles.
double closure_residual(const CreasePattern& pattern, const std::vector<double>& fold_angles);

/// Projection of the design main line vertices onto the base frame (synthesized patterns).
std::vector<Vec2> projected_design_line(const FoldedGeometry& folded);

}  // namespace origami
