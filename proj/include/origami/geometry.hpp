#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace origami {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

/// z-component of the 2D cross product.
inline double cross2(const Vec2& a, const Vec2& b) noexcept { return a.x() * b.y() - a.y() * b.x(); }

/// Orientation of c relative to the directed line a->b: +1 left, -1 right, 0 within `tol`
/// (tol is a distance in the units of the inputs).
int orientation(const Vec2& a, const Vec2& b, const Vec2& c, double tol) noexcept;

/// Closed-segment intersection with distance tolerance.
bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2,
                        double tol) noexcept;

/// Squared distance from point p to segment [a, b].
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) noexcept;

/// Proper or touching intersection point of two segments, if one exists and is unique.
/// Returns false for parallel segments.
bool segment_intersection_point(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2,
                                Vec2& out, double tol) noexcept;

/// Signed area (positive for counter-clockwise).
double signed_area(std::span<const Vec2> polygon) noexcept;
Vec2 polygon_centroid(std::span<const Vec2> polygon) noexcept;
bool point_in_convex_polygon(const Vec2& p, std::span<const Vec2> polygon, double tol) noexcept;

/// Signed distance from p to the boundary of a CCW convex polygon (positive inside).
double convex_inner_distance(const Vec2& p, std::span<const Vec2> polygon) noexcept;

/// Clip a CCW convex polygon against the half-plane left of the directed line a->b.
std::vector<Vec2> clip_half_plane(std::span<const Vec2> polygon, const Vec2& a, const Vec2& b);

/// Rotation about a unit axis by `angle` (right-hand rule).
Mat3 axis_rotation(const Vec3& axis, double angle);

/// Rigid transform x -> R x + t.
struct RigidTransform {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
    Vec3 apply(const Vec2& p) const { return apply(Vec3(p.x(), p.y(), 0.0)); }
    RigidTransform compose(const RigidTransform& inner) const {
        return {rotation * inner.rotation, rotation * inner.translation + translation};
    }
    static RigidTransform about_line(const Vec3& point, const Vec3& unit_dir, double angle) {
        RigidTransform t;
        t.rotation = axis_rotation(unit_dir, angle);
        t.translation = point - t.rotation * point;
        return t;
    }
};

}  // namespace origami
