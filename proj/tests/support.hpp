#pragma once

#include "origami/crease_pattern.hpp"
#include "origami/transition_graph.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace testsupport {

using origami::Vec2;

inline double shoelace(const std::vector<Vec2>& poly) {
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        twice += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * twice;
}

/// Inset area of a convex polygon while every edge survives: A - d P + d^2 sum cot(phi_i / 2).
inline double inset_area_oracle(const std::vector<Vec2>& poly, double d) {
    const std::size_t n = poly.size();
    double perimeter = 0.0, corners = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 prev = poly[(i + n - 1) % n] - poly[i];
        const Vec2 next = poly[(i + 1) % n] - poly[i];
        perimeter += next.norm();
        const double phi = std::acos(prev.dot(next) / (prev.norm() * next.norm()));
        corners += 1.0 / std::tan(phi / 2.0);
    }
    return shoelace(poly) - d * perimeter + d * d * corners;
}

/// Twisted-string length written out from the two-branch closed form.
inline double tsa_oracle(double x, double twist, double d1, double d2, double ds) {
    if (twist < std::numbers::pi) {
        const double c = std::sqrt(d1 * d1 + d2 * d2 - 2 * d1 * d2 * std::cos(twist)) / 2;
        return std::hypot(x, c);
    }
    return std::hypot(x, (d1 + d2 + ds * (twist - std::numbers::pi)) / 2);
}

/// Random design that synthesizes without strip overlap: l in [20, 60], beta in [50, 130] deg
/// kept 3 deg away from 90, meant for unit width 10.
inline origami::TransitionGraphDesign random_design(std::mt19937_64& rng, std::size_t vectors) {
    std::uniform_real_distribution<double> len(20.0, 60.0);
    std::uniform_real_distribution<double> ang(50.0, 127.0);
    origami::TransitionGraphDesign d;
    d.first_flag = rng() % 2 ? origami::EntryFlag::Mountain : origami::EntryFlag::Valley;
    for (std::size_t i = 0; i < vectors; ++i) d.lengths.push_back(len(rng));
    for (std::size_t i = 1; i < vectors; ++i) {
        double b = ang(rng);
        if (b > 87.0) b += 6.0;
        d.shape_angles.push_back(origami::deg_to_rad(b));
    }
    return d;
}

/// Miura strip: equal lengths and one repeated shape angle.
inline origami::TransitionGraphDesign miura_design(std::size_t vectors, double length, double beta_deg) {
    origami::TransitionGraphDesign d;
    d.lengths.assign(vectors, length);
    d.shape_angles.assign(vectors - 1, origami::deg_to_rad(beta_deg));
    return d;
}

/// Binary STL read straight from the bytes, independent of the writer.
struct StlFile {
    std::string header;
    std::vector<std::array<std::array<float, 3>, 3>> triangles;
    std::vector<std::array<float, 3>> normals;

    double volume() const {
        double v = 0.0;
        for (const auto& t : triangles) {
            const auto& a = t[0];
            const auto& b = t[1];
            const auto& c = t[2];
            v += (double(a[0]) * (double(b[1]) * c[2] - double(b[2]) * c[1]) -
                  double(a[1]) * (double(b[0]) * c[2] - double(b[2]) * c[0]) +
                  double(a[2]) * (double(b[0]) * c[1] - double(b[1]) * c[0])) /
                 6.0;
        }
        return v;
    }

    /// Every directed edge is matched by as many reverse traversals, so each shell closes
    /// with consistent winding; separate shells may touch along an edge.
    bool closed_and_oriented() const {
        using Key = std::array<float, 3>;
        std::map<std::pair<Key, Key>, int> directed;
        for (const auto& t : triangles)
            for (int k = 0; k < 3; ++k) ++directed[{t[k], t[(k + 1) % 3]}];
        for (const auto& [edge, count] : directed) {
            auto it = directed.find({edge.second, edge.first});
            if (it == directed.end() || it->second != count) return false;
        }
        return !triangles.empty();
    }
};

inline std::uint32_t read_u32_le(const unsigned char* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

inline float read_f32_le(const unsigned char* p) {
    const std::uint32_t bits = read_u32_le(p);
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
}

inline StlFile read_binary_stl(const std::string& bytes) {
    if (bytes.size() < 84) throw std::runtime_error("STL shorter than its header");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    StlFile f;
    f.header.assign(bytes.data(), 80);
    const std::uint32_t n = read_u32_le(p + 80);
    if (bytes.size() != 84 + 50ull * n) throw std::runtime_error("STL size does not match its triangle count");
    for (std::uint32_t i = 0; i < n; ++i) {
        const unsigned char* rec = p + 84 + 50ull * i;
        std::array<float, 3> normal{read_f32_le(rec), read_f32_le(rec + 4), read_f32_le(rec + 8)};
        std::array<std::array<float, 3>, 3> tri;
        for (int v = 0; v < 3; ++v)
            for (int c = 0; c < 3; ++c) tri[v][c] = read_f32_le(rec + 12 + 12 * v + 4 * c);
        if (rec[48] != 0 || rec[49] != 0) throw std::runtime_error("nonzero attribute byte count");
        f.normals.push_back(normal);
        f.triangles.push_back(tri);
    }
    return f;
}

}  // namespace testsupport
