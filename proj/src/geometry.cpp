#include "origami/geometry.hpp"

#include <algorithm>
#include <limits>

namespace origami {

int orientation(const Vec2& a, const Vec2& b, const Vec2& c, double tol) noexcept {
    const Vec2 ab = b - a;
    const double len = ab.norm();
    const double cr = cross2(ab, c - a);
    // Compare the perpendicular distance, falling back to raw cross for tiny segments.
    const double dist = len > 0.0 ? cr / len : (c - a).norm();
    if (len == 0.0) return dist > tol ? 1 : 0;
    if (dist > tol) return 1;
    if (dist < -tol) return -1;
    return 0;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) noexcept {
    const Vec2 ab = b - a;
    const double denom = ab.squaredNorm();
    double t = denom > 0.0 ? (p - a).dot(ab) / denom : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (a + t * ab - p).norm();
}

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2,
                        double tol) noexcept {
    const int o1 = orientation(p1, p2, q1, tol);
    const int o2 = orientation(p1, p2, q2, tol);
    const int o3 = orientation(q1, q2, p1, tol);
    const int o4 = orientation(q1, q2, p2, tol);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    // Touching or collinear configurations.
    return point_segment_distance(q1, p1, p2) <= tol || point_segment_distance(q2, p1, p2) <= tol ||
           point_segment_distance(p1, q1, q2) <= tol || point_segment_distance(p2, q1, q2) <= tol;
}

bool segment_intersection_point(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2,
                                Vec2& out, double tol) noexcept {
    const Vec2 r = p2 - p1;
    const Vec2 s = q2 - q1;
    const double denom = cross2(r, s);
    if (std::abs(denom) <= std::numeric_limits<double>::epsilon() * r.norm() * s.norm()) return false;
    const double t = cross2(q1 - p1, s) / denom;
    const double u = cross2(q1 - p1, r) / denom;
    const double tt = tol / std::max(r.norm(), tol);
    const double ut = tol / std::max(s.norm(), tol);
    if (t < -tt || t > 1.0 + tt || u < -ut || u > 1.0 + ut) return false;
    out = p1 + std::clamp(t, 0.0, 1.0) * r;
    return true;
}

double signed_area(std::span<const Vec2> polygon) noexcept {
    double a = 0.0;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) a += cross2(polygon[i], polygon[(i + 1) % n]);
    return 0.5 * a;
}

Vec2 polygon_centroid(std::span<const Vec2> polygon) noexcept {
    const std::size_t n = polygon.size();
    if (n == 0) return Vec2::Zero();
    // Shift to the first vertex for conditioning.
    const Vec2 o = polygon[0];
    double a = 0.0;
    Vec2 c = Vec2::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = polygon[i] - o;
        const Vec2 q = polygon[(i + 1) % n] - o;
        const double w = cross2(p, q);
        a += w;
        c += w * (p + q);
    }
    if (std::abs(a) < 1e-300) {
        Vec2 mean = Vec2::Zero();
        for (const auto& p : polygon) mean += p;
        return mean / static_cast<double>(n);
    }
    return o + c / (3.0 * a);
}

double convex_inner_distance(const Vec2& p, std::span<const Vec2> polygon) noexcept {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = polygon[i];
        const Vec2& b = polygon[(i + 1) % n];
        const double len = (b - a).norm();
        if (len == 0.0) continue;
        best = std::min(best, cross2(b - a, p - a) / len);
    }
    return best;
}

bool point_in_convex_polygon(const Vec2& p, std::span<const Vec2> polygon, double tol) noexcept {
    return convex_inner_distance(p, polygon) >= -tol;
}

std::vector<Vec2> clip_half_plane(std::span<const Vec2> polygon, const Vec2& a, const Vec2& b) {
    std::vector<Vec2> out;
    const std::size_t n = polygon.size();
    out.reserve(n + 1);
    const Vec2 d = b - a;
    auto side = [&](const Vec2& p) { return cross2(d, p - a); };
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& cur = polygon[i];
        const Vec2& nxt = polygon[(i + 1) % n];
        const double sc = side(cur);
        const double sn = side(nxt);
        if (sc >= 0.0) out.push_back(cur);
        if ((sc >= 0.0) != (sn >= 0.0)) {
            const double t = sc / (sc - sn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    // Drop consecutive duplicates produced by vertices lying on the line.
    std::vector<Vec2> clean;
    for (const auto& p : out)
        if (clean.empty() || (p - clean.back()).norm() > 1e-12) clean.push_back(p);
    while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-12) clean.pop_back();
    return clean;
}

Mat3 axis_rotation(const Vec3& axis, double angle) {
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

}  // namespace origami
