#pragma once

#include "origami/geometry.hpp"
#include "origami/transition_graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace origami {

enum class CreaseKind : std::uint8_t { Mountain, Valley, Border };
/// Main creases run parallel to the transition vectors; zigzag creases sit at the shape angle.
enum class FoldGroup : std::uint8_t { Main, Zigzag };

constexpr CreaseKind to_kind(EntryFlag f) noexcept {
    return f == EntryFlag::Mountain ? CreaseKind::Mountain : CreaseKind::Valley;
}
constexpr CreaseKind opposite(CreaseKind k) noexcept {
    switch (k) {
        case CreaseKind::Mountain: return CreaseKind::Valley;
        case CreaseKind::Valley: return CreaseKind::Mountain;
        default: return k;
    }
}
const char* to_string(CreaseKind k) noexcept;

using VertexId = std::size_t;
using PanelId = std::size_t;

struct Crease {
    VertexId a = 0;
    VertexId b = 0;
    CreaseKind kind = CreaseKind::Border;
    FoldGroup group = FoldGroup::Zigzag;

    bool operator==(const Crease&) const = default;
};

struct CreasePattern {
    std::vector<Vec2> vertices;
    std::vector<Crease> creases;
    /// Counter-clockwise vertex cycles.
    std::vector<std::vector<VertexId>> panels;
    double unit_width = 0.0;
    int copy_count = 1;

    /// Synthesized patterns only: the design's main-crease flags EF_0..EF_n, and the vertex
    /// ids of the design main line (the line the transition graph lives on).
    std::vector<EntryFlag> main_flags;
    std::vector<VertexId> design_line;
    Vec2 design_start = Vec2::Zero();

    std::vector<Vec2> panel_polygon(PanelId p) const;
    /// Index of the crease joining u and v, if any.
    std::optional<std::size_t> find_crease(VertexId u, VertexId v) const;
    /// Vertices incident to at least one border crease.
    std::vector<bool> boundary_vertices() const;
    double panel_area_sum() const;
};

struct VertexReport {
    VertexId vertex = 0;
    std::size_t degree = 0;
    double developability_residual = 0.0;
    double kawasaki_residual = 0.0;
    int maekawa_delta = 0;  // |#M - #V| - 2
    bool ok = true;
};

struct ValidationReport {
    bool ok = true;
    std::vector<VertexReport> vertices;   // interior vertices
    std::vector<std::string> violations;  // human-readable failures
    std::size_t planarity_violations = 0;  // crossing or overlapping creases

    void fail(std::string message) {
        ok = false;
        violations.push_back(std::move(message));
    }
};

inline constexpr double kAngleTolerance = 1e-9;

/// Planarity, developability, Kawasaki, Maekawa and panel orientation checks.
ValidationReport validate_pattern(const CreasePattern& pattern, double angle_tol = kAngleTolerance);

/// One row of panels above the design main line (y = 0); the two end panels are trapezoids.
CreasePattern synthesize_strip(const TransitionGraphDesign& design, double unit_width);

/// Stack `copies` rows, mirroring each new row across the shared line.
CreasePattern tessellate(const CreasePattern& strip, int copies);

/// synthesize_strip followed by tessellate.
CreasePattern synthesize_pattern(const TransitionGraphDesign& design, double unit_width, int copies);

}  // namespace origami
