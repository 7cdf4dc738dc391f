#include "origami/crease_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace origami {

const char* to_string(CreaseKind k) noexcept {
    switch (k) {
        case CreaseKind::Mountain: return "mountain";
        case CreaseKind::Valley: return "valley";
        case CreaseKind::Border: return "border";
    }
    return "?";
}

std::vector<Vec2> CreasePattern::panel_polygon(PanelId p) const {
    std::vector<Vec2> poly;
    poly.reserve(panels.at(p).size());
    for (VertexId v : panels[p]) poly.push_back(vertices.at(v));
    return poly;
}

std::optional<std::size_t> CreasePattern::find_crease(VertexId u, VertexId v) const {
    for (std::size_t i = 0; i < creases.size(); ++i) {
        const auto& c = creases[i];
        if ((c.a == u && c.b == v) || (c.a == v && c.b == u)) return i;
    }
    return std::nullopt;
}

std::vector<bool> CreasePattern::boundary_vertices() const {
    std::vector<bool> out(vertices.size(), false);
    for (const auto& c : creases)
        if (c.kind == CreaseKind::Border) out[c.a] = out[c.b] = true;
    return out;
}

double CreasePattern::panel_area_sum() const {
    double sum = 0.0;
    for (PanelId p = 0; p < panels.size(); ++p) sum += signed_area(panel_polygon(p));
    return sum;
}

namespace {

void check_planarity(const CreasePattern& pattern, ValidationReport& report) {
    constexpr double tol = 1e-9;
    const auto& V = pattern.vertices;
    const auto& C = pattern.creases;
    for (std::size_t i = 0; i < C.size(); ++i) {
        if (C[i].a == C[i].b) report.fail("crease " + std::to_string(i) + " has identical endpoints");
        for (std::size_t j = i + 1; j < C.size(); ++j) {
            const auto& ci = C[i];
            const auto& cj = C[j];
            const bool share = ci.a == cj.a || ci.a == cj.b || ci.b == cj.a || ci.b == cj.b;
            if (share) {
                // Shared endpoint: only collinear overlap is a violation.
                const VertexId common = (ci.a == cj.a || ci.a == cj.b) ? ci.a : ci.b;
                const VertexId oi = ci.a == common ? ci.b : ci.a;
                const VertexId oj = cj.a == common ? cj.b : cj.a;
                const Vec2 di = V[oi] - V[common];
                const Vec2 dj = V[oj] - V[common];
                if (std::abs(cross2(di.normalized(), dj.normalized())) <= tol && di.dot(dj) > 0.0)
                    report.fail("creases " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
                continue;
            }
            if (segments_intersect(V[ci.a], V[ci.b], V[cj.a], V[cj.b], tol))
                report.fail("creases " + std::to_string(i) + " and " + std::to_string(j) + " cross");
        }
    }
}

}  // namespace

ValidationReport validate_pattern(const CreasePattern& pattern, double angle_tol) {
    ValidationReport report;
    check_planarity(pattern, report);
    report.planarity_violations = report.violations.size();

    const auto boundary = pattern.boundary_vertices();
    std::vector<std::vector<std::size_t>> incident(pattern.vertices.size());
    for (std::size_t i = 0; i < pattern.creases.size(); ++i) {
        incident[pattern.creases[i].a].push_back(i);
        incident[pattern.creases[i].b].push_back(i);
    }

    for (VertexId v = 0; v < pattern.vertices.size(); ++v) {
        if (boundary[v] || incident[v].empty()) continue;
        VertexReport vr;
        vr.vertex = v;
        vr.degree = incident[v].size();

        std::vector<std::pair<double, CreaseKind>> rays;
        for (std::size_t ci : incident[v]) {
            const auto& c = pattern.creases[ci];
            const Vec2 d = pattern.vertices[c.a == v ? c.b : c.a] - pattern.vertices[v];
            rays.emplace_back(std::atan2(d.y(), d.x()), c.kind);
        }
        std::sort(rays.begin(), rays.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        std::vector<double> sectors;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            double s = (k + 1 < rays.size() ? rays[k + 1].first : rays[0].first + 2.0 * kPi) - rays[k].first;
            sectors.push_back(s);
        }
        double total = 0.0, odd = 0.0, even = 0.0;
        for (std::size_t k = 0; k < sectors.size(); ++k) {
            total += sectors[k];
            (k % 2 == 0 ? even : odd) += sectors[k];
        }
        // Sector angles come from atan2, so they always close to 2pi; developability is
        // measured against the panels, which must fill the full turn.
        double panel_turn = 0.0;
        for (PanelId p = 0; p < pattern.panels.size(); ++p) {
            const auto& cyc = pattern.panels[p];
            const auto it = std::find(cyc.begin(), cyc.end(), v);
            if (it == cyc.end()) continue;
            const std::size_t k = static_cast<std::size_t>(it - cyc.begin());
            const Vec2 prev = pattern.vertices[cyc[(k + cyc.size() - 1) % cyc.size()]] - pattern.vertices[v];
            const Vec2 next = pattern.vertices[cyc[(k + 1) % cyc.size()]] - pattern.vertices[v];
            double interior = std::atan2(cross2(next, prev), next.dot(prev));
            if (interior < 0.0) interior += 2.0 * kPi;
            panel_turn += interior;
        }
        vr.developability_residual = std::abs((pattern.panels.empty() ? total : panel_turn) - 2.0 * kPi);
        vr.kawasaki_residual = sectors.size() % 2 == 0 ? std::abs(odd - even) : kPi;

        int m = 0, val = 0;
        for (const auto& r : rays) {
            if (r.second == CreaseKind::Mountain) ++m;
            if (r.second == CreaseKind::Valley) ++val;
        }
        vr.maekawa_delta = std::abs(m - val) - 2;

        std::ostringstream where;
        where << "vertex " << v << " (" << pattern.vertices[v].x() << ", " << pattern.vertices[v].y() << ")";
        if (vr.developability_residual > angle_tol) {
            vr.ok = false;
            report.fail(where.str() + ": not developable, residual " + std::to_string(vr.developability_residual));
        }
        if (vr.kawasaki_residual > angle_tol) {
            vr.ok = false;
            report.fail(where.str() + ": Kawasaki residual " + std::to_string(vr.kawasaki_residual));
        }
        if (vr.maekawa_delta != 0) {
            vr.ok = false;
            report.fail(where.str() + ": Maekawa violated (" + std::to_string(m) + "M/" + std::to_string(val) + "V)");
        }
        report.vertices.push_back(vr);
    }

    for (PanelId p = 0; p < pattern.panels.size(); ++p) {
        const auto& cyc = pattern.panels[p];
        if (cyc.size() < 3) {
            report.fail("panel " + std::to_string(p) + " has fewer than three vertices");
            continue;
        }
        if (signed_area(pattern.panel_polygon(p)) <= 0.0)
            report.fail("panel " + std::to_string(p) + " is not positively oriented");
        for (std::size_t k = 0; k < cyc.size(); ++k)
            if (!pattern.find_crease(cyc[k], cyc[(k + 1) % cyc.size()]))
                report.fail("panel " + std::to_string(p) + " edge " + std::to_string(k) + " is not a crease");
    }
    return report;
}

}  // namespace origami
