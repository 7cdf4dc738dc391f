#include "origami/fab_model.hpp"

#include "origami/errors.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace origami {

void FabricationParams::validate() const {
    if (!(inner_bias > 0.0)) throw DomainError("inner bias must be positive");
    if (!(membrane_thickness > 0.0)) throw DomainError("membrane thickness must be positive");
    if (!(panel_height > membrane_thickness)) throw DomainError("panel height must exceed membrane thickness");
    if (!(hole_radius >= 0.0)) throw DomainError("hole radius must be non-negative");
    if (!(midlayer_extra_bias > 0.0)) throw DomainError("mid-layer extra bias must be positive");
    if (!(hole_margin >= 0.0)) throw DomainError("hole margin must be non-negative");
    if (hole_segments < 3) throw DomainError("hole segments must be at least 3");
}

double max_fold_angle(const FabricationParams& params) noexcept {
    const double gap = params.panel_height - params.membrane_thickness;
    if (gap <= 0.0) return kPi;
    return 2.0 * std::atan(2.0 * params.inner_bias / gap);
}

std::vector<Vec2> inset_panel(std::span<const Vec2> polygon, double bias, const std::string& name) {
    const std::size_t n = polygon.size();
    if (n < 3) throw GeometryError(name + " has fewer than 3 vertices");
    std::vector<Vec2> out(polygon.begin(), polygon.end());
    for (std::size_t i = 0; i < n && out.size() >= 3; ++i) {
        const Vec2& a = polygon[i];
        const Vec2& b = polygon[(i + 1) % n];
        const Vec2 d = (b - a).normalized();
        const Vec2 inward(-d.y(), d.x());
        out = clip_half_plane(out, a + bias * inward, b + bias * inward);
    }
    const double area0 = signed_area(polygon);
    if (out.size() < 3 || signed_area(out) <= 1e-14 * std::abs(area0))
        throw GeometryError(name + " is empty after an inset of " + std::to_string(bias) + " mm");
    return out;
}

std::vector<Vec2> operation_region(std::span<const Vec2> polygon, const FabricationParams& params) {
    try {
        return inset_panel(polygon, params.inner_bias + params.hole_radius + params.hole_margin);
    } catch (const GeometryError&) {
        return {};
    }
}

namespace {

std::string panel_name(PanelId p) { return "panel " + std::to_string(p); }

bool is_convex_ccw(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        if (cross2(poly[(i + 1) % n] - poly[i], poly[(i + 2) % n] - poly[(i + 1) % n]) < -1e-9) return false;
    return signed_area(poly) > 0.0;
}

/// Edge of `inset` that runs parallel to a->b at distance `bias`; empty when it vanished.
std::optional<std::pair<Vec2, Vec2>> inset_edge(const std::vector<Vec2>& inset, const Vec2& a, const Vec2& b,
                                                double bias) {
    const Vec2 d = (b - a).normalized();
    for (std::size_t i = 0; i < inset.size(); ++i) {
        const Vec2& p = inset[i];
        const Vec2& q = inset[(i + 1) % inset.size()];
        const Vec2 e = q - p;
        if (e.norm() < 1e-12 || std::abs(cross2(d, e.normalized())) > 1e-9 || d.dot(e) <= 0.0) continue;
        if (std::abs(cross2(d, p - a) - bias) < 1e-7) return std::make_pair(p, q);
    }
    return std::nullopt;
}

std::vector<Vec2> convex_hull_ccw(std::vector<Vec2> pts) {
    Vec2 c = Vec2::Zero();
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Vec2& l, const Vec2& r) {
        return std::atan2(l.y() - c.y(), l.x() - c.x()) < std::atan2(r.y() - c.y(), r.x() - c.x());
    });
    return pts;
}

}  // namespace

HolePlan place_holes(const CreasePattern& pattern, const FabricationParams& params, HoleMode mode,
                     const std::vector<AnchoredPoint>& requests) {
    params.validate();
    HolePlan plan;
    if (mode == HoleMode::AutoCenter) {
        for (PanelId p = 0; p < pattern.panels.size(); ++p) {
            const auto poly = pattern.panel_polygon(p);
            const auto region = operation_region(poly, params);
            const Vec2 c = polygon_centroid(poly);
            if (region.empty() || !point_in_convex_polygon(c, region, 1e-9)) {
                plan.warnings.push_back(panel_name(p) + " has no room for a hole");
                continue;
            }
            plan.holes.push_back({{p, c}, params.hole_radius});
        }
        return plan;
    }
    for (const auto& req : requests) {
        if (req.panel >= pattern.panels.size()) throw ReferenceError("unknown panel " + std::to_string(req.panel));
        const auto region = operation_region(pattern.panel_polygon(req.panel), params);
        if (region.empty()) throw GeometryError(panel_name(req.panel) + " has an empty operation region");
        const double dist = convex_inner_distance(req.flat_position, region);
        if (dist < -1e-9) {
            std::ostringstream msg;
            msg << "hole on " << panel_name(req.panel) << " lies " << -dist << " mm outside its operation region";
            throw GeometryError(msg.str());
        }
        plan.holes.push_back({req, params.hole_radius});
    }
    return plan;
}

FabricationModel generate_meshes(const CreasePattern& pattern, const FabricationParams& params,
                                 const std::vector<Hole>& holes) {
    params.validate();
    const auto check = validate_pattern(pattern);
    if (check.planarity_violations > 0) throw GeometryError("pattern is self-intersecting: " + check.violations.front());

    FabricationModel model;
    model.params = params;
    model.holes = holes;
    model.max_fold_angle = max_fold_angle(params);

    const double b = params.inner_bias;
    const double h = params.panel_height;
    const double t = params.membrane_thickness;
    const double mid0 = 0.5 * (h - t);
    const double mid1 = 0.5 * (h + t);

    std::map<PanelId, const Hole*> hole_of;
    for (const auto& hole : holes) {
        const PanelId p = hole.anchor.panel;
        if (p >= pattern.panels.size()) throw ReferenceError("unknown panel " + std::to_string(p));
        if (hole_of.count(p)) throw GeometryError(panel_name(p) + " has more than one hole");
        FabricationParams probe = params;
        probe.hole_radius = hole.radius;
        const auto region = operation_region(pattern.panel_polygon(p), probe);
        if (region.empty() || convex_inner_distance(hole.anchor.flat_position, region) < -1e-9)
            throw GeometryError("hole on " + panel_name(p) + " lies outside its operation region");
        hole_of[p] = &hole;
    }

    std::vector<std::vector<Vec2>> insets(pattern.panels.size());
    for (PanelId p = 0; p < pattern.panels.size(); ++p) {
        const auto poly = pattern.panel_polygon(p);
        if (!is_convex_ccw(poly)) throw GeometryError(panel_name(p) + " is not a convex counter-clockwise polygon");
        insets[p] = inset_panel(poly, b, panel_name(p));
        const auto inner = inset_panel(poly, b + params.midlayer_extra_bias, panel_name(p));

        auto hole_it = hole_of.find(p);
        if (hole_it != hole_of.end() && hole_it->second->radius > 0.0) {
            const Vec2 c = hole_it->second->anchor.flat_position;
            const auto circle = circle_polygon(c, hole_it->second->radius, static_cast<std::size_t>(params.hole_segments));
            model.infills.append(extrude_ring(insets[p], circle, c, 0.0, mid0));
            model.infills.append(extrude_ring(insets[p], circle, c, mid1, h));
            model.mid_layers.append(extrude_ring(inner, circle, c, mid0, mid1));
        } else {
            model.infills.append(extrude_convex(insets[p], 0.0, mid0));
            model.infills.append(extrude_convex(insets[p], mid1, h));
            model.mid_layers.append(extrude_convex(inner, mid0, mid1));
        }
        model.shells.append(extrude_ring(insets[p], inner, polygon_centroid(inner), mid0, mid1));
    }

    // Edge zones: crease strips between neighbouring insets, border walls at the outline.
    std::map<std::pair<VertexId, VertexId>, PanelId> owner;  // directed edge -> panel on its left
    for (PanelId p = 0; p < pattern.panels.size(); ++p) {
        const auto& cyc = pattern.panels[p];
        for (std::size_t i = 0; i < cyc.size(); ++i) owner[{cyc[i], cyc[(i + 1) % cyc.size()]}] = p;
    }
    const bool skins = h - t >= 2.0 * t - 1e-12;
    if (!skins) model.warnings.push_back("panel height too small for crease skins; skins omitted");
    for (std::size_t ci = 0; ci < pattern.creases.size(); ++ci) {
        const auto& c = pattern.creases[ci];
        const Vec2& A = pattern.vertices[c.a];
        const Vec2& B = pattern.vertices[c.b];
        auto left = owner.find({c.a, c.b});
        auto right = owner.find({c.b, c.a});
        if (left != owner.end() && right != owner.end()) {
            const auto el = inset_edge(insets[left->second], A, B, b);
            const auto er = inset_edge(insets[right->second], B, A, b);
            if (!el || !er) {
                model.warnings.push_back("crease " + std::to_string(ci) + " too short for a crease strip");
                continue;
            }
            const auto quad = convex_hull_ccw({el->first, el->second, er->first, er->second});
            model.creases.append(extrude_convex(quad, mid0, mid1));
            if (skins) {
                model.shells.append(extrude_convex(quad, 0.0, t));
                model.shells.append(extrude_convex(quad, h - t, h));
            }
        } else if (left != owner.end() || right != owner.end()) {
            const bool on_left = left != owner.end();
            const PanelId p = on_left ? left->second : right->second;
            const Vec2& P = on_left ? A : B;
            const Vec2& Q = on_left ? B : A;
            const auto e = inset_edge(insets[p], P, Q, b);
            if (!e) continue;
            const Vec2 d = (Q - P).normalized();
            auto project = [&](const Vec2& x) { return Vec2(P + d * d.dot(x - P)); };
            const std::vector<Vec2> wall{project(e->first), project(e->second), e->second, e->first};
            model.shells.append(extrude_convex(wall, 0.0, h));
        }
    }

    std::size_t high_degree = 0;
    for (const auto& v : check.vertices)
        if (v.degree > 4) ++high_degree;
    if (high_degree > 0)
        model.warnings.push_back(std::to_string(high_degree) +
                                 " vertices have more than four creases; the fold limit assumes degree four");
    return model;
}

}  // namespace origami
