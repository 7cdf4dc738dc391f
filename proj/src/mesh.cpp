#include "origami/mesh.hpp"

#include "origami/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>

namespace origami {

void TriangleMesh::append(const TriangleMesh& other) {
    const auto offset = static_cast<std::uint32_t>(vertices.size());
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    for (const auto& t : other.triangles) triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
}

Vec3 TriangleMesh::triangle_normal(std::size_t t) const {
    const auto& tri = triangles.at(t);
    const Vec3 n = (vertices[tri[1]] - vertices[tri[0]]).cross(vertices[tri[2]] - vertices[tri[0]]);
    const double len = n.norm();
    return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

MeshReport mesh_diagnostics(const TriangleMesh& mesh) {
    MeshReport r;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<int, int>> edges;  // (forward, backward)
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const std::uint32_t a = t[k];
            const std::uint32_t b = t[(k + 1) % 3];
            auto& e = edges[{std::min(a, b), std::max(a, b)}];
            (a < b ? e.first : e.second)++;
        }
        r.signed_volume += mesh.vertices[t[0]].dot(mesh.vertices[t[1]].cross(mesh.vertices[t[2]])) / 6.0;
    }
    for (const auto& [key, uses] : edges) {
        const int total = uses.first + uses.second;
        if (total == 1) ++r.boundary_edges;
        else if (total > 2) ++r.non_manifold_edges;
        else if (uses.first != 1) ++r.inconsistent_edges;
    }
    if (!mesh.vertices.empty()) {
        r.bbox_min = r.bbox_max = mesh.vertices.front();
        for (const auto& v : mesh.vertices) {
            r.bbox_min = r.bbox_min.cwiseMin(v);
            r.bbox_max = r.bbox_max.cwiseMax(v);
        }
    }
    r.inverted = r.signed_volume < 0.0;
    r.watertight = r.boundary_edges == 0 && r.non_manifold_edges == 0 && r.inconsistent_edges == 0;
    return r;
}

TriangleMesh make_box(const Vec3& lo, const Vec3& hi) {
    const std::vector<Vec2> square{{lo.x(), lo.y()}, {hi.x(), lo.y()}, {hi.x(), hi.y()}, {lo.x(), hi.y()}};
    return extrude_convex(square, lo.z(), hi.z());
}

namespace {

/// Bottom ring indices [0, n), top ring [n, 2n); side walls for a CCW loop facing outward
/// (or inward when `inner`).
void add_walls(TriangleMesh& m, std::uint32_t base, std::size_t n, bool inner) {
    for (std::size_t i = 0; i < n; ++i) {
        const auto b0 = base + static_cast<std::uint32_t>(i);
        const auto b1 = base + static_cast<std::uint32_t>((i + 1) % n);
        const auto t0 = b0 + static_cast<std::uint32_t>(n);
        const auto t1 = b1 + static_cast<std::uint32_t>(n);
        if (!inner) {
            m.triangles.push_back({b0, b1, t1});
            m.triangles.push_back({b0, t1, t0});
        } else {
            m.triangles.push_back({b0, t1, b1});
            m.triangles.push_back({b0, t0, t1});
        }
    }
}

std::uint32_t add_ring(TriangleMesh& m, std::span<const Vec2> loop, double z0, double z1) {
    const auto base = static_cast<std::uint32_t>(m.vertices.size());
    for (const auto& p : loop) m.vertices.emplace_back(p.x(), p.y(), z0);
    for (const auto& p : loop) m.vertices.emplace_back(p.x(), p.y(), z1);
    return base;
}

}  // namespace

TriangleMesh extrude_convex(std::span<const Vec2> outer, double z0, double z1) {
    TriangleMesh m;
    const std::size_t n = outer.size();
    if (n < 3) return m;
    const auto base = add_ring(m, outer, z0, z1);
    const auto top = base + static_cast<std::uint32_t>(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto a = static_cast<std::uint32_t>(i);
        m.triangles.push_back({base, base + a + 1, base + a});
        m.triangles.push_back({top, top + a, top + a + 1});
    }
    add_walls(m, base, n, false);
    return m;
}

TriangleMesh extrude_ring(std::span<const Vec2> outer, std::span<const Vec2> inner, const Vec2& center,
                          double z0, double z1) {
    TriangleMesh m;
    const std::size_t ni = inner.size();
    const std::size_t no = outer.size();
    if (ni < 3 || no < 3) return m;

    auto angle_of = [&](const Vec2& p) { return std::atan2(p.y() - center.y(), p.x() - center.x()); };
    auto ray_hit = [&](const Vec2& through) {
        const Vec2 dir = (through - center).normalized();
        double best = std::numeric_limits<double>::infinity();
        std::size_t edge = 0;
        for (std::size_t e = 0; e < no; ++e) {
            const Vec2& a = outer[e];
            const Vec2& b = outer[(e + 1) % no];
            const Vec2 s = b - a;
            const double denom = cross2(dir, s);
            if (std::abs(denom) < 1e-300) continue;
            const double t = cross2(a - center, s) / denom;
            const double u = cross2(a - center, dir) / denom;
            if (t > 0.0 && u >= -1e-12 && u <= 1.0 + 1e-12 && t < best) {
                best = t;
                edge = e;
            }
        }
        return std::make_pair(Vec2(center + best * dir), edge);
    };

    // Outer loop resampled on the rays through the inner vertices, keeping the corners.
    std::vector<std::pair<Vec2, std::size_t>> hits;
    for (const auto& p : inner) hits.push_back(ray_hit(p));
    std::vector<Vec2> merged;
    std::vector<std::size_t> ray_pos(ni);
    for (std::size_t k = 0; k < ni; ++k) {
        ray_pos[k] = merged.size();
        merged.push_back(hits[k].first);
        const Vec2& next_hit = hits[(k + 1) % ni].first;
        // Walk the corners strictly between this hit and the next one (CCW).
        const double a0 = angle_of(hits[k].first);
        double span = angle_of(next_hit) - a0;
        while (span <= 0.0) span += 2.0 * kPi;
        std::vector<std::pair<double, Vec2>> corners;
        for (const auto& c : outer) {
            double d = angle_of(c) - a0;
            while (d < 0.0) d += 2.0 * kPi;
            if (d > 1e-12 && d < span - 1e-12 && (c - hits[k].first).norm() > 1e-12 && (c - next_hit).norm() > 1e-12)
                corners.emplace_back(d, c);
        }
        std::sort(corners.begin(), corners.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        for (const auto& c : corners) merged.push_back(c.second);
    }

    const std::size_t nm = merged.size();
    const auto ob = add_ring(m, merged, z0, z1);
    const auto ib = add_ring(m, inner, z0, z1);
    const auto onm = static_cast<std::uint32_t>(nm);
    const auto oni = static_cast<std::uint32_t>(ni);
    auto lift = [&](std::uint32_t v) { return v + (v >= ib ? oni : onm); };
    for (std::size_t k = 0; k < ni; ++k) {
        const auto ik = ib + static_cast<std::uint32_t>(k);
        const auto ik1 = ib + static_cast<std::uint32_t>((k + 1) % ni);
        std::vector<std::uint32_t> fan;
        const std::size_t end = k + 1 < ni ? ray_pos[k + 1] : nm;
        for (std::size_t j = ray_pos[k]; j <= end; ++j) fan.push_back(ob + static_cast<std::uint32_t>(j % nm));
        fan.push_back(ik1);
        for (std::size_t j = 0; j + 1 < fan.size(); ++j) {
            // Bottom faces down, top faces up.
            m.triangles.push_back({ik, fan[j + 1], fan[j]});
            m.triangles.push_back({lift(ik), lift(fan[j]), lift(fan[j + 1])});
        }
    }
    add_walls(m, ob, nm, false);
    add_walls(m, ib, ni, true);
    return m;
}

std::vector<Vec2> circle_polygon(const Vec2& center, double radius, std::size_t segments) {
    std::vector<Vec2> pts;
    pts.reserve(segments);
    for (std::size_t i = 0; i < segments; ++i) {
        const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(segments);
        pts.emplace_back(center.x() + radius * std::cos(a), center.y() + radius * std::sin(a));
    }
    return pts;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::string& out, double v) {
    const auto f = static_cast<float>(v);
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof bits);
    put_u32(out, bits);
}

}  // namespace

std::string write_stl(const TriangleMesh& mesh, std::string_view header) {
    std::string out(80, '\0');
    std::copy_n(header.begin(), std::min<std::size_t>(header.size(), 80), out.begin());
    put_u32(out, static_cast<std::uint32_t>(mesh.triangles.size()));
    out.reserve(84 + 50 * mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const Vec3 n = mesh.triangle_normal(t);
        for (int k = 0; k < 3; ++k) put_f32(out, n[k]);
        for (auto idx : mesh.triangles[t])
            for (int k = 0; k < 3; ++k) put_f32(out, mesh.vertices[idx][k]);
        out.push_back('\0');
        out.push_back('\0');
    }
    return out;
}

void write_stl_file(const TriangleMesh& mesh, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    const auto bytes = write_stl(mesh);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("failed writing " + path);
}

}  // namespace origami
