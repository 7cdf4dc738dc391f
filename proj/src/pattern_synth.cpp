#include "origami/crease_pattern.hpp"
#include "origami/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace origami {

namespace {

/// Zigzag crease kind at shape angle beta between main segments with flags prev/next. The
/// zigzag line shares its kind with the main crease on the obtuse side of the vertex.
CreaseKind zigzag_kind(double beta, EntryFlag prev, EntryFlag next) {
    return to_kind(beta < kPi / 2.0 ? prev : next);
}

}  // namespace

CreasePattern synthesize_strip(const TransitionGraphDesign& design, double unit_width) {
    design.validate();
    if (!(unit_width > 0.0)) throw DomainError("unit width must be positive");
    const std::size_t n = design.shape_angles.size();
    if (n == 0) throw DomainError("a strip needs at least one zigzag crease");

    const double w = unit_width;
    std::vector<double> bottom_x(n + 2, 0.0);
    for (std::size_t i = 1; i <= n + 1; ++i) bottom_x[i] = bottom_x[i - 1] + design.lengths[i - 1];
    std::vector<double> top_x(n + 2);
    top_x[0] = 0.0;
    top_x[n + 1] = bottom_x[n + 1];
    for (std::size_t i = 1; i <= n; ++i) top_x[i] = bottom_x[i] + w / std::tan(design.shape_angles[i - 1]);

    constexpr double min_edge = 1e-9;
    for (std::size_t i = 0; i <= n; ++i) {
        if (!(top_x[i + 1] - top_x[i] > min_edge))
            throw GeometryError("strip unit " + std::to_string(i) +
                                " overlaps its neighbour: zigzag offset w*cot(beta) exceeds the panel length");
    }

    CreasePattern cp;
    cp.unit_width = w;
    cp.copy_count = 1;
    const VertexId top0 = n + 2;
    for (std::size_t i = 0; i <= n + 1; ++i) cp.vertices.emplace_back(bottom_x[i], 0.0);
    for (std::size_t i = 0; i <= n + 1; ++i) cp.vertices.emplace_back(top_x[i], w);

    for (std::size_t i = 0; i <= n; ++i) {
        cp.main_flags.push_back(design.flag(i));
        cp.creases.push_back({i, i + 1, CreaseKind::Border, FoldGroup::Main});
        cp.creases.push_back({top0 + i, top0 + i + 1, CreaseKind::Border, FoldGroup::Main});
    }
    cp.creases.push_back({0, top0, CreaseKind::Border, FoldGroup::Zigzag});
    cp.creases.push_back({n + 1, top0 + n + 1, CreaseKind::Border, FoldGroup::Zigzag});
    for (std::size_t i = 1; i <= n; ++i) {
        const CreaseKind k = zigzag_kind(design.shape_angles[i - 1], design.flag(i - 1), design.flag(i));
        cp.creases.push_back({i, top0 + i, k, FoldGroup::Zigzag});
    }
    for (std::size_t i = 0; i <= n; ++i) cp.panels.push_back({i, i + 1, top0 + i + 1, top0 + i});
    for (std::size_t i = 0; i <= n + 1; ++i) cp.design_line.push_back(i);
    cp.design_start = design.start;
    return cp;
}

CreasePattern tessellate(const CreasePattern& strip, int copies) {
    if (copies < 1) throw DomainError("copy count must be at least 1");
    if (copies == 1) return strip;
    const double w = strip.unit_width;
    if (!(w > 0.0) || strip.main_flags.empty())
        throw DomainError("tessellate expects a synthesized strip");

    // Line membership of strip vertices: y == 0 is the bottom line, y == w the top line.
    auto on_bottom = [&](VertexId v) { return std::abs(strip.vertices[v].y()) < 1e-12; };
    auto on_top = [&](VertexId v) { return std::abs(strip.vertices[v].y() - w) < 1e-12; };

    CreasePattern out;
    out.unit_width = w;
    out.copy_count = copies;
    out.main_flags = strip.main_flags;
    out.design_line = strip.design_line;
    out.design_start = strip.design_start;

    std::map<std::pair<long long, long long>, VertexId> index;
    auto key = [](const Vec2& p) {
        return std::make_pair(std::llround(p.x() * 1e6), std::llround(p.y() * 1e6));
    };
    auto add_vertex = [&](const Vec2& p) {
        auto [it, inserted] = index.try_emplace(key(p), out.vertices.size());
        if (inserted) out.vertices.push_back(p);
        return it->second;
    };
    std::map<std::pair<VertexId, VertexId>, std::size_t> crease_index;

    // Main segment column of a strip crease lying on the bottom or top line.
    auto column_of = [&](const Crease& c) -> std::size_t {
        const double xm = 0.5 * (strip.vertices[c.a].x() + strip.vertices[c.b].x());
        std::size_t col = 0;
        std::vector<double> xs;
        for (VertexId v : strip.design_line) xs.push_back(strip.vertices[v].x());
        if (on_top(c.a)) {
            xs.clear();
            for (VertexId v = 0; v < strip.vertices.size(); ++v)
                if (on_top(v)) xs.push_back(strip.vertices[v].x());
            std::sort(xs.begin(), xs.end());
        }
        while (col + 1 < xs.size() && xs[col + 1] <= xm) ++col;
        return std::min(col, strip.main_flags.size() - 1);
    };

    for (int row = 0; row < copies; ++row) {
        const bool mirrored = row % 2 == 1;
        std::vector<VertexId> map(strip.vertices.size());
        for (VertexId v = 0; v < strip.vertices.size(); ++v) {
            const Vec2& p = strip.vertices[v];
            const Vec2 q = mirrored ? Vec2(p.x(), -p.y() - (row - 1) * w) : Vec2(p.x(), p.y() - row * w);
            map[v] = add_vertex(q);
        }
        for (const auto& c : strip.creases) {
            Crease nc{map[c.a], map[c.b], c.kind, c.group};
            if (c.group == FoldGroup::Main) {
                // Bottom lines are shared between rows (row, row+1) for even row and
                // (row-1, row) for odd row; top lines the other way round.
                const bool bottom = on_bottom(c.a) && on_bottom(c.b);
                const bool interior = bottom ? (mirrored || row + 1 < copies) : (!mirrored ? row > 0 : row + 1 < copies);
                if (interior) {
                    const EntryFlag f = strip.main_flags[column_of(c)];
                    nc.kind = to_kind(bottom ? f : flip(f));
                } else {
                    nc.kind = CreaseKind::Border;
                }
            }
            const auto k = std::minmax(nc.a, nc.b);
            auto [it, inserted] = crease_index.try_emplace(k, out.creases.size());
            if (inserted) out.creases.push_back(nc);
            else out.creases[it->second] = nc;
        }
        for (const auto& panel : strip.panels) {
            std::vector<VertexId> cyc;
            for (VertexId v : panel) cyc.push_back(map[v]);
            if (mirrored) std::reverse(cyc.begin(), cyc.end());
            out.panels.push_back(std::move(cyc));
        }
    }
    return out;
}

CreasePattern synthesize_pattern(const TransitionGraphDesign& design, double unit_width, int copies) {
    return tessellate(synthesize_strip(design, unit_width), copies);
}

}  // namespace origami
