#pragma once

#include "origami/geometry.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace origami {

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;  // counter-clockwise seen from outside

    bool empty() const noexcept { return triangles.empty(); }
    void append(const TriangleMesh& other);
    Vec3 triangle_normal(std::size_t t) const;
};

struct MeshReport {
    std::size_t boundary_edges = 0;       // used by one triangle
    std::size_t non_manifold_edges = 0;   // used by more than two triangles
    std::size_t inconsistent_edges = 0;   // two triangles traverse the edge the same way
    double signed_volume = 0.0;
    Vec3 bbox_min = Vec3::Zero();
    Vec3 bbox_max = Vec3::Zero();
    bool watertight = false;
    bool inverted = false;
};

MeshReport mesh_diagnostics(const TriangleMesh& mesh);

/// Axis-aligned box [lo, hi] with outward winding.
TriangleMesh make_box(const Vec3& lo, const Vec3& hi);

/// Closed prism over a CCW convex polygon between heights z0 < z1.
TriangleMesh extrude_convex(std::span<const Vec2> outer, double z0, double z1);

/// Closed prism over the ring between a CCW convex outer polygon and a CCW star-shaped inner
/// loop (star-shaped about `center`, which lies inside both).
TriangleMesh extrude_ring(std::span<const Vec2> outer, std::span<const Vec2> inner, const Vec2& center,
                          double z0, double z1);

/// Regular polygon approximating a circle, counter-clockwise.
std::vector<Vec2> circle_polygon(const Vec2& center, double radius, std::size_t segments);

/// Binary STL: 80-byte header, uint32 count, 50 bytes per triangle, little endian.
std::string write_stl(const TriangleMesh& mesh, std::string_view header = "origami binary STL");
void write_stl_file(const TriangleMesh& mesh, const std::string& path);

}  // namespace origami
