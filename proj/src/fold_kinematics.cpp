#include "origami/fold_kinematics.hpp"

#include "origami/errors.hpp"
#include "origami/transition_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>

namespace origami {

namespace {

struct VertexStar {
    VertexId vertex = 0;
    std::vector<std::size_t> creases;  // counter-clockwise
    std::vector<Vec3> dirs;            // unit, in the flat plane
};

std::vector<VertexStar> interior_stars(const CreasePattern& pattern) {
    const auto boundary = pattern.boundary_vertices();
    std::vector<std::vector<std::size_t>> incident(pattern.vertices.size());
    for (std::size_t i = 0; i < pattern.creases.size(); ++i) {
        incident[pattern.creases[i].a].push_back(i);
        incident[pattern.creases[i].b].push_back(i);
    }
    std::vector<VertexStar> stars;
    for (VertexId v = 0; v < pattern.vertices.size(); ++v) {
        if (boundary[v] || incident[v].empty()) continue;
        std::vector<std::pair<double, std::size_t>> rays;
        for (std::size_t ci : incident[v]) {
            const auto& c = pattern.creases[ci];
            const Vec2 d = pattern.vertices[c.a == v ? c.b : c.a] - pattern.vertices[v];
            rays.emplace_back(std::atan2(d.y(), d.x()), ci);
        }
        std::sort(rays.begin(), rays.end());
        VertexStar s;
        s.vertex = v;
        for (const auto& [ang, ci] : rays) {
            s.creases.push_back(ci);
            s.dirs.emplace_back(std::cos(ang), std::sin(ang), 0.0);
        }
        stars.push_back(std::move(s));
    }
    return stars;
}

double star_residual(const VertexStar& s, const std::vector<double>& rho) {
    Mat3 m = Mat3::Identity();
    for (std::size_t k = 0; k < s.creases.size(); ++k) m = m * axis_rotation(s.dirs[k], rho[s.creases[k]]);
    return (m - Mat3::Identity()).cwiseAbs().maxCoeff();
}

double signed_angle_about(const Vec3& axis, const Vec3& from, const Vec3& to) {
    const Vec3 u = from - from.dot(axis) * axis;
    const Vec3 v = to - to.dot(axis) * axis;
    return std::atan2(u.cross(v).dot(axis), u.dot(v));
}

int kind_sign(CreaseKind k) {
    return k == CreaseKind::Valley ? 1 : (k == CreaseKind::Mountain ? -1 : 0);
}

struct Degree4Solution {
    double rho[4];
    double residual;
    bool kinds_ok;
};

/// Degree-4 vertex with the fold of crease `known` fixed: the angle between the images of
/// the next-next crease and the previous crease must stay equal to the flat sector angle,
/// which leaves a 1D root-find on the next crease's fold.
Degree4Solution solve_degree4(const CreasePattern& pattern, const VertexStar& s, std::size_t known,
                              double known_rho) {
    Vec3 d[4];
    CreaseKind kinds[4];
    for (std::size_t j = 0; j < 4; ++j) {
        d[j] = s.dirs[(known + j) % 4];
        kinds[j] = pattern.creases[s.creases[(known + j) % 4]].kind;
    }
    const Mat3 r1 = axis_rotation(d[0], known_rho);
    const double target = d[2].dot(d[3]);
    auto f = [&](double rho2) { return (r1 * axis_rotation(d[1], rho2) * d[2]).dot(d[3]) - target; };

    std::vector<double> grid;
    for (int k = 50; k >= 1; --k) grid.push_back(kPi * std::ldexp(1.0, -k));
    for (int j = 1; j < 64; ++j) grid.push_back(kPi * j / 64.0);
    grid.push_back(kPi * (1.0 - 1e-12));
    std::sort(grid.begin(), grid.end());

    Degree4Solution best{{0, 0, 0, 0}, std::numeric_limits<double>::infinity(), false};
    auto consider = [&](double rho2) {
        const Mat3 r12 = r1 * axis_rotation(d[1], rho2);
        const Mat3 m = r12.transpose();
        const double rho3 = signed_angle_about(d[2], d[3], m * d[3]);
        const Mat3 r4 = axis_rotation(d[2], rho3).transpose() * m;
        const Vec3 w = d[2];
        const double rho4 = signed_angle_about(d[3], w, r4 * w);
        Degree4Solution sol{{known_rho, rho2, rho3, rho4}, 0.0, true};
        const Mat3 closure = r12 * axis_rotation(d[2], rho3) * axis_rotation(d[3], rho4);
        sol.residual = (closure - Mat3::Identity()).cwiseAbs().maxCoeff();
        constexpr double neutral = 1e-12;
        for (int j = 0; j < 4; ++j) {
            const int ks = kind_sign(kinds[j]);
            if (ks == 0) continue;
            if (std::abs(sol.rho[j]) <= neutral || (sol.rho[j] > 0.0) != (ks > 0)) sol.kinds_ok = false;
        }
        const bool better = (sol.kinds_ok && !best.kinds_ok) ||
                            (sol.kinds_ok == best.kinds_ok && sol.residual < best.residual);
        if (better) best = sol;
    };

    for (double sign : {1.0, -1.0}) {
        double prev_x = sign * grid[0];
        double prev_f = f(prev_x);
        for (std::size_t g = 1; g < grid.size(); ++g) {
            const double x = sign * grid[g];
            const double fx = f(x);
            if (fx == 0.0) {
                consider(x);
            } else if ((prev_f < 0.0) != (fx < 0.0) && prev_f != 0.0) {
                double lo = prev_x, hi = x, flo = prev_f;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid == lo || mid == hi) break;
                    const double fm = f(mid);
                    if ((fm < 0.0) == (flo < 0.0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                consider(std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi);
            }
            prev_x = x;
            prev_f = fx;
        }
    }
    return best;
}

constexpr double kClosureLimit = 1e-7;

std::vector<double> solve_fold_angles(const CreasePattern& pattern, double theta,
                                      const std::vector<VertexStar>& stars) {
    const std::size_t nc = pattern.creases.size();
    std::vector<double> rho(nc, 0.0);
    std::vector<bool> known(nc, false);
    if (theta == 0.0) return rho;

    bool any_main = false;
    for (std::size_t i = 0; i < nc; ++i) {
        const auto& c = pattern.creases[i];
        if (c.kind == CreaseKind::Border) {
            known[i] = true;
            continue;
        }
        if (c.group == FoldGroup::Main) {
            rho[i] = kind_sign(c.kind) * theta;
            known[i] = true;
            any_main = true;
        }
    }
    if (!any_main) {
        // Imported patterns carry no main/zigzag grouping: drive the first folding crease.
        for (const auto& s : stars) {
            for (std::size_t ci : s.creases) {
                if (!known[ci]) {
                    rho[ci] = kind_sign(pattern.creases[ci].kind) * theta;
                    known[ci] = true;
                    any_main = true;
                    break;
                }
            }
            if (any_main) break;
        }
    }

    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& s : stars) {
            std::size_t first_known = s.creases.size();
            bool missing = false;
            for (std::size_t k = 0; k < s.creases.size(); ++k) {
                if (known[s.creases[k]] && first_known == s.creases.size()) first_known = k;
                if (!known[s.creases[k]]) missing = true;
            }
            if (!missing || first_known == s.creases.size()) continue;
            if (s.creases.size() != 4)
                throw KinematicError("vertex " + std::to_string(s.vertex) + " has degree " +
                                         std::to_string(s.creases.size()) + "; only degree-4 vertices are solved",
                                     std::numeric_limits<double>::infinity());
            const auto sol = solve_degree4(pattern, s, first_known, rho[s.creases[first_known]]);
            if (!sol.kinds_ok || sol.residual > kClosureLimit)
                throw KinematicError("vertex " + std::to_string(s.vertex) +
                                         " cannot close rigidly with its mountain/valley assignment",
                                     sol.residual);
            for (std::size_t j = 0; j < 4; ++j) {
                const std::size_t ci = s.creases[(first_known + j) % 4];
                if (!known[ci]) {
                    rho[ci] = sol.rho[j];
                    known[ci] = true;
                }
            }
            progress = true;
        }
    }
    for (std::size_t i = 0; i < nc; ++i)
        if (!known[i])
            throw KinematicError("crease " + std::to_string(i) +
                                     " touches no interior vertex; its fold angle is not determined",
                                 std::numeric_limits<double>::infinity());
    return rho;
}

}  // namespace

double FoldedGeometry::dihedral(std::size_t crease) const { return kPi - std::abs(fold_angles.at(crease)); }

AnchoredPoint panel_center(const CreasePattern& pattern, PanelId panel) {
    return {panel, polygon_centroid(pattern.panel_polygon(panel))};
}

double closure_residual(const CreasePattern& pattern, const std::vector<double>& fold_angles) {
    double worst = 0.0;
    for (const auto& s : interior_stars(pattern)) worst = std::max(worst, star_residual(s, fold_angles));
    return worst;
}

FoldedGeometry embed_fold(const CreasePattern& pattern, double theta) {
    if (!(theta >= 0.0 && theta < kPi)) throw DomainError("embedding needs theta in [0, pi)");
    if (pattern.panels.empty()) throw DomainError("pattern has no panels");

    const auto stars = interior_stars(pattern);
    FoldedGeometry out;
    out.pattern = pattern;
    out.theta = theta;
    out.fold_angles = solve_fold_angles(pattern, theta, stars);
    for (const auto& s : stars) out.max_closure_residual = std::max(out.max_closure_residual, star_residual(s, out.fold_angles));
    if (out.max_closure_residual > kClosureLimit)
        throw KinematicError("rotation product around a vertex does not close", out.max_closure_residual);

    // Directed panel edges: (a, b) -> (panel, crease).
    std::map<std::pair<VertexId, VertexId>, PanelId> edge_owner;
    for (PanelId p = 0; p < pattern.panels.size(); ++p) {
        const auto& cyc = pattern.panels[p];
        for (std::size_t k = 0; k < cyc.size(); ++k) edge_owner[{cyc[k], cyc[(k + 1) % cyc.size()]}] = p;
    }

    const std::size_t np = pattern.panels.size();
    out.placements.assign(np, RigidTransform{});
    std::vector<bool> placed(np, false);
    std::vector<std::pair<PanelId, PanelId>> non_tree;
    std::queue<PanelId> queue;
    placed[0] = true;
    queue.push(0);
    while (!queue.empty()) {
        const PanelId p = queue.front();
        queue.pop();
        const auto& cyc = pattern.panels[p];
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            const VertexId a = cyc[k];
            const VertexId b = cyc[(k + 1) % cyc.size()];
            const auto it = edge_owner.find({b, a});
            if (it == edge_owner.end()) continue;
            const PanelId q = it->second;
            if (placed[q]) {
                non_tree.emplace_back(p, q);
                continue;
            }
            const auto ci = pattern.find_crease(a, b);
            const double rho = ci ? out.fold_angles[*ci] : 0.0;
            const Vec3 pa(pattern.vertices[a].x(), pattern.vertices[a].y(), 0.0);
            const Vec3 pb(pattern.vertices[b].x(), pattern.vertices[b].y(), 0.0);
            out.placements[q] = out.placements[p].compose(RigidTransform::about_line(pa, (pb - pa).normalized(), -rho));
            placed[q] = true;
            queue.push(q);
        }
    }

    double hinge_gap = 0.0;
    for (const auto& [p, q] : non_tree) {
        for (VertexId v : pattern.panels[p]) {
            if (std::find(pattern.panels[q].begin(), pattern.panels[q].end(), v) == pattern.panels[q].end()) continue;
            hinge_gap = std::max(hinge_gap, (out.vertex_position(p, v) - out.vertex_position(q, v)).norm());
        }
    }
    if (hinge_gap > kClosureLimit) throw KinematicError("adjacent panels do not share their crease", hinge_gap);

    // Base frame: mirror plane between the design row and the next row, rotated about its
    // normal so the first transition vector sits at the half-unit attachment angle.
    const std::size_t columns = pattern.main_flags.size();
    if (!pattern.design_line.empty() && pattern.copy_count >= 2 && columns < np) {
        const Vec2 c = polygon_centroid(pattern.panel_polygon(0));
        const Vec2 mirror(c.x(), -c.y());
        Vec3 n = out.placements[0].apply(c) - out.placements[columns].apply(mirror);
        n.normalize();
        const Vec3 p0 = out.vertex_position(0, pattern.design_line[0]);
        Vec3 e1 = out.vertex_position(0, pattern.design_line[1]) - p0;
        e1 = (e1 - e1.dot(n) * n).normalized();
        const Vec3 x = axis_rotation(n, -initial_alpha(theta)) * e1;
        out.base_frame = BaseFrame{p0, x, n.cross(x), n, pattern.design_start};
    } else {
        out.base_frame = BaseFrame{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ(), Vec2::Zero()};
    }
    return out;
}

std::vector<Vec3> locate_points(const FoldedGeometry& folded, const std::vector<AnchoredPoint>& anchors) {
    std::vector<Vec3> out;
    out.reserve(anchors.size());
    for (const auto& a : anchors) {
        if (a.panel >= folded.placements.size())
            throw ReferenceError("anchor references unknown panel " + std::to_string(a.panel));
        out.push_back(folded.placements[a.panel].apply(a.flat_position));
    }
    return out;
}

std::vector<Vec2> projected_design_line(const FoldedGeometry& folded) {
    const auto& pat = folded.pattern;
    std::vector<Vec2> out;
    // Design-line vertex i is a corner of row-0 panel i (or i-1 for the last one).
    for (std::size_t i = 0; i < pat.design_line.size(); ++i) {
        const PanelId panel = std::min(i, pat.main_flags.size() - 1);
        out.push_back(folded.base_frame.to_planar(folded.vertex_position(panel, pat.design_line[i])));
    }
    return out;
}

}  // namespace origami
