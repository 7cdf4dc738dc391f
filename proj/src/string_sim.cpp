#include "origami/string_sim.hpp"

#include "origami/errors.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

namespace origami {

void TsaConfig::validate() const {
    if (!(rotation_diameter > 0.0)) throw DomainError("TSA rotation diameter must be positive");
    if (!(first_hole_gap >= 0.0)) throw DomainError("first hole gap must be non-negative");
    if (!(string_width > 0.0)) throw DomainError("string width must be positive");
    if (strings_per_unit <= 0 || strings_per_unit % 2 != 0) throw DomainError("strings per unit must be even");
}

const char* to_string(StringSide side) noexcept { return side == StringSide::Above ? "above" : "below"; }

double tsa_segment_length(const TsaConfig& config, double anchor_offset, double twist, double first_hole_gap) {
    if (!(twist >= 0.0)) throw DomainError("twist angle must be non-negative");
    const double d1 = config.rotation_diameter;
    const double d2 = first_hole_gap;
    const double x2 = anchor_offset * anchor_offset;
    if (twist < kPi) {
        const double a = d2 - d1 * std::cos(twist);
        const double b = d1 * std::sin(twist);
        return std::sqrt(x2 + (a * a + b * b) / 4.0);
    }
    const double span = d2 + d1 + (twist - kPi) * config.string_width;
    return std::sqrt(x2 + span * span / 4.0);
}

double tsa_segment_length(const TsaConfig& config, double anchor_offset, double twist) {
    return tsa_segment_length(config, anchor_offset, twist,
                              config.first_hole_gap > 0.0 ? config.first_hole_gap : config.rotation_diameter);
}

std::vector<std::size_t> segment_crossings(const CreasePattern& pattern, const Vec2& p, const Vec2& q) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < pattern.creases.size(); ++c) {
        const auto& crease = pattern.creases[c];
        if (crease.kind == CreaseKind::Border) continue;
        if (segments_intersect(p, q, pattern.vertices[crease.a], pattern.vertices[crease.b], 1e-9)) out.push_back(c);
    }
    return out;
}

RoutingPlan assign_sides(const RoutingPlan& plan, const CreasePattern& pattern) {
    RoutingPlan out = plan;
    for (auto& s : out.strings) {
        for (std::size_t k = 0; k + 1 < s.waypoints.size(); ++k) {
            const auto& a = s.waypoints[k].hole;
            const auto& b = s.waypoints[k + 1].hole;
            if (a.panel >= pattern.panels.size() || b.panel >= pattern.panels.size()) continue;
            bool mountain = false, valley = false;
            for (std::size_t c : segment_crossings(pattern, a.flat_position, b.flat_position))
                (pattern.creases[c].kind == CreaseKind::Mountain ? mountain : valley) = true;
            if (mountain != valley) s.waypoints[k].side = mountain ? StringSide::Below : StringSide::Above;
        }
    }
    return out;
}

RoutingReport validate_routing(const RoutingPlan& plan, const CreasePattern& pattern) {
    RoutingReport report;
    auto add = [&](std::size_t s, std::size_t k, std::vector<std::size_t> creases, std::string msg) {
        report.ok = false;
        report.issues.push_back({s, k, std::move(creases), std::move(msg)});
    };
    for (std::size_t s = 0; s < plan.strings.size(); ++s) {
        const auto& wps = plan.strings[s].waypoints;
        if (wps.empty()) add(s, 0, {}, "string has no holes");
        bool resolvable = true;
        for (std::size_t k = 0; k < wps.size(); ++k) {
            const auto& hole = wps[k].hole;
            if (hole.panel >= pattern.panels.size()) {
                add(s, k, {}, "waypoint references unknown panel " + std::to_string(hole.panel));
                resolvable = false;
            } else if (!point_in_convex_polygon(hole.flat_position, pattern.panel_polygon(hole.panel), 1e-9)) {
                add(s, k, {}, "hole lies outside panel " + std::to_string(hole.panel));
            }
        }
        if (!resolvable) continue;
        for (std::size_t k = 0; k + 1 < wps.size(); ++k) {
            const Vec2& p = wps[k].hole.flat_position;
            const Vec2& q = wps[k + 1].hole.flat_position;
            if (wps[k].hole.panel == wps[k + 1].hole.panel && (p - q).norm() < 1e-9) {
                add(s, k, {}, "consecutive waypoints are the same hole");
                continue;
            }
            std::vector<std::size_t> mountains, valleys;
            for (std::size_t c : segment_crossings(pattern, p, q))
                (pattern.creases[c].kind == CreaseKind::Mountain ? mountains : valleys).push_back(c);
            if (!mountains.empty() && !valleys.empty()) {
                auto all = mountains;
                all.insert(all.end(), valleys.begin(), valleys.end());
                std::sort(all.begin(), all.end());
                add(s, k, all, "segment crosses both mountain and valley creases; one side flag cannot satisfy both");
            } else if (!mountains.empty() && wps[k].side != StringSide::Below) {
                add(s, k, mountains, "segment crossing a mountain crease must run below it");
            } else if (!valleys.empty() && wps[k].side != StringSide::Above) {
                add(s, k, valleys, "segment crossing a valley crease must run above it");
            }
        }
    }
    return report;
}

Vec3 RailFrame::to_rail(const Vec3& world) const {
    const Vec3 d = world - origin;
    return {x_axis.dot(d) + flat_centroid.x(), y_axis.dot(d) + flat_centroid.y(), normal.dot(d)};
}

RailFrame rail_frame(const FoldedGeometry& folded) {
    const auto& pattern = folded.pattern;
    RailFrame f;
    Vec3 n = Vec3::Zero(), ex = Vec3::Zero(), origin = Vec3::Zero();
    Vec2 flat = Vec2::Zero();
    double total = 0.0;
    for (PanelId p = 0; p < pattern.panels.size(); ++p) {
        const auto poly = pattern.panel_polygon(p);
        const double area = std::abs(signed_area(poly));
        const Vec2 c = polygon_centroid(poly);
        const auto& place = folded.placements[p];
        n += area * (place.rotation * Vec3::UnitZ());
        ex += area * (place.rotation * Vec3::UnitX());
        origin += area * place.apply(c);
        flat += area * c;
        total += area;
    }
    if (total <= 0.0 || n.norm() < 1e-12) throw GeometryError("cannot derive a rail frame from a degenerate fold");
    f.normal = n.normalized();
    ex -= f.normal * f.normal.dot(ex);
    if (ex.norm() < 1e-12) throw GeometryError("cannot derive a rail frame from a degenerate fold");
    f.x_axis = ex.normalized();
    f.y_axis = f.normal.cross(f.x_axis);
    f.origin = origin / total;
    f.flat_centroid = flat / total;
    return f;
}

namespace {

Vec3 apply_pose(const RailPose& pose, const Vec2& pivot, const Vec3& q) {
    const double c = std::cos(pose.rotation);
    const double s = std::sin(pose.rotation);
    const double x = q.x() - pivot.x();
    const double y = q.y() - pivot.y();
    return {pivot.x() + c * x - s * y + pose.dx, pivot.y() + s * x + c * y + pose.dy, q.z()};
}

std::vector<std::vector<Vec3>> hole_positions(const FoldedGeometry& folded, const RoutingPlan& plan,
                                              const RailPose& pose) {
    const RailFrame frame = rail_frame(folded);
    std::vector<std::vector<Vec3>> out;
    out.reserve(plan.strings.size());
    for (const auto& s : plan.strings) {
        if (s.waypoints.empty()) throw ReferenceError("string has no holes");
        std::vector<AnchoredPoint> anchors;
        for (const auto& w : s.waypoints) anchors.push_back(w.hole);
        auto world = locate_points(folded, anchors);
        for (auto& p : world) p = apply_pose(pose, frame.flat_centroid, frame.to_rail(p));
        out.push_back(std::move(world));
    }
    return out;
}

std::map<int, PairGeometry> pair_geometry(const RoutingPlan& plan, const std::vector<std::vector<Vec3>>& holes,
                                          const TsaConfig& config) {
    std::map<int, std::vector<Vec3>> firsts;
    for (std::size_t s = 0; s < plan.strings.size(); ++s) firsts[plan.strings[s].pair].push_back(holes[s].front());
    std::map<int, PairGeometry> out;
    const Vec3 center(config.rotation_center.x(), config.rotation_center.y(), 0.0);
    for (const auto& [id, pts] : firsts) {
        if (pts.size() > 2) throw DomainError("string pair " + std::to_string(id) + " has more than two strings");
        PairGeometry g;
        const Vec3 mid = pts.size() == 2 ? Vec3(0.5 * (pts[0] + pts[1])) : pts[0];
        g.anchor_offset = (mid - center).norm();
        if (config.first_hole_gap > 0.0) g.first_hole_gap = config.first_hole_gap;
        else if (pts.size() == 2) g.first_hole_gap = (pts[0] - pts[1]).norm();
        else g.first_hole_gap = config.rotation_diameter;
        out[id] = g;
    }
    return out;
}

std::vector<StringState> string_states(const RoutingPlan& plan, const std::vector<std::vector<Vec3>>& holes,
                                       const TsaConfig& config, double twist, double taut_tol) {
    const auto pairs = pair_geometry(plan, holes, config);
    std::vector<StringState> out(plan.strings.size());
    for (std::size_t s = 0; s < plan.strings.size(); ++s) {
        const auto& g = pairs.at(plan.strings[s].pair);
        auto& st = out[s];
        st.hole_positions = holes[s];
        st.tsa_side_length = tsa_segment_length(config, g.anchor_offset, twist, g.first_hole_gap);
        double used = st.tsa_side_length;
        for (std::size_t k = 0; k + 1 < holes[s].size(); ++k) {
            st.segment_lengths.push_back((holes[s][k + 1] - holes[s][k]).norm());
            used += st.segment_lengths.back();
        }
        st.slack = plan.strings[s].initial_length - used;
        st.taut = st.slack <= taut_tol;
    }
    return out;
}

double worst_violation(const std::vector<StringState>& strings) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : strings) worst = std::max(worst, -s.slack);
    return worst;
}

/// Small Nelder-Mead on the three pose coordinates.
RailPose minimize_pose(const std::function<double(const RailPose&)>& f, const RailPose& start) {
    using P = std::array<double, 3>;
    auto to_pose = [](const P& p) { return RailPose{p[0], p[1], p[2]}; };
    std::array<P, 4> x{P{start.dx, start.dy, start.rotation}};
    const P step{2.0, 2.0, 0.02};
    for (int i = 0; i < 3; ++i) {
        x[i + 1] = x[0];
        x[i + 1][i] += step[i];
    }
    std::array<double, 4> fx;
    for (int i = 0; i < 4; ++i) fx[i] = f(to_pose(x[i]));
    for (int iter = 0; iter < 300; ++iter) {
        std::array<int, 4> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        const int best = order[0], worst = order[3], second = order[2];
        if (fx[best] <= 0.0 || std::abs(fx[worst] - fx[best]) < 1e-12) break;
        P centroid{0, 0, 0};
        for (int i : {order[0], order[1], order[2]})
            for (int k = 0; k < 3; ++k) centroid[k] += x[i][k] / 3.0;
        auto along = [&](double t) {
            P p;
            for (int k = 0; k < 3; ++k) p[k] = centroid[k] + t * (x[worst][k] - centroid[k]);
            return p;
        };
        const P xr = along(-1.0);
        const double fr = f(to_pose(xr));
        if (fr < fx[best]) {
            const P xe = along(-2.0);
            const double fe = f(to_pose(xe));
            if (fe < fr) x[worst] = xe, fx[worst] = fe;
            else x[worst] = xr, fx[worst] = fr;
        } else if (fr < fx[second]) {
            x[worst] = xr, fx[worst] = fr;
        } else {
            const P xc = along(0.5);
            const double fc = f(to_pose(xc));
            if (fc < fx[worst]) {
                x[worst] = xc, fx[worst] = fc;
            } else {
                for (int i : {order[1], order[2], order[3]}) {
                    for (int k = 0; k < 3; ++k) x[i][k] = x[best][k] + 0.5 * (x[i][k] - x[best][k]);
                    fx[i] = f(to_pose(x[i]));
                }
            }
        }
    }
    const int best = static_cast<int>(std::min_element(fx.begin(), fx.end()) - fx.begin());
    return to_pose(x[best]);
}

}  // namespace

RoutingPlan measure_initial_lengths(const RoutingPlan& plan, const FoldedGeometry& flat, const TsaConfig& config) {
    config.validate();
    RoutingPlan out = plan;
    const auto holes = hole_positions(flat, plan, {});
    for (auto& s : out.strings) s.initial_length = 0.0;
    const auto states = string_states(out, holes, config, 0.0, 0.0);
    for (std::size_t s = 0; s < out.strings.size(); ++s) out.strings[s].initial_length = -states[s].slack;
    return out;
}

std::vector<double> default_twist_schedule() {
    std::vector<double> twists;
    for (int i = 0; i <= 720; ++i) twists.push_back(i * kPi / 36.0);
    return twists;
}

SimulationResult solve_quasi_static(const CreasePattern& pattern, const RoutingPlan& plan_in, const TsaConfig& config,
                                    const std::vector<double>& twist_schedule, const FabricationParams& fab_limits,
                                    const SimulationOptions& options) {
    config.validate();
    fab_limits.validate();
    if (twist_schedule.empty()) throw DomainError("twist schedule is empty");
    if (!(twist_schedule.front() >= 0.0)) throw DomainError("twist schedule must start at a non-negative twist");
    for (std::size_t i = 1; i < twist_schedule.size(); ++i)
        if (!(twist_schedule[i] > twist_schedule[i - 1])) throw DomainError("twist schedule must be strictly increasing");
    if (plan_in.strings.empty()) throw SetupError("routing plan has no strings");

    SimulationResult result;
    result.theta_limit = std::min(max_fold_angle(fab_limits), kPi - 1e-9);
    if (std::abs(config.rotation_diameter - (config.first_hole_gap > 0.0 ? config.first_hole_gap : config.rotation_diameter)) > 1e-12)
        result.warnings.push_back("rotation diameter differs from the first hole gap; the TSA length at zero twist "
                                  "is longer than the straight distance");

    RoutingPlan plan = plan_in;
    const auto flat = embed_fold(pattern, 0.0);
    bool measured = false;
    for (const auto& s : plan.strings)
        if (std::isnan(s.initial_length)) measured = true;
    if (measured) {
        const auto m = measure_initial_lengths(plan, flat, config);
        for (std::size_t s = 0; s < plan.strings.size(); ++s)
            if (std::isnan(plan.strings[s].initial_length)) plan.strings[s].initial_length = m.strings[s].initial_length;
    }

    struct Probe {
        bool ok = false;
        RailPose pose;
        std::vector<StringState> strings;
        double violation = std::numeric_limits<double>::infinity();
    };
    auto probe = [&](double theta, double twist, const RailPose& start) {
        Probe out;
        std::optional<FoldedGeometry> folded;
        try {
            folded = embed_fold(pattern, theta);
        } catch (const KinematicError&) {
            return out;
        }
        auto eval = [&](const RailPose& pose) {
            return string_states(plan, hole_positions(*folded, plan, pose), config, twist, options.taut_tolerance);
        };
        out.pose = start;
        if (options.pose_mode == PoseMode::Free)
            out.pose = minimize_pose([&](const RailPose& p) { return worst_violation(eval(p)); }, start);
        out.strings = eval(out.pose);
        out.violation = worst_violation(out.strings);
        out.ok = out.violation <= 0.0;
        return out;
    };

    auto record = [&](std::size_t index, double twist, double theta, Probe&& p) {
        QuasiStaticState st;
        st.index = index;
        st.twist = twist;
        st.fold_theta = theta;
        st.pose = p.pose;
        st.strings = std::move(p.strings);
        result.states.push_back(std::move(st));
        if (options.on_state) options.on_state(index);
    };

    Probe first = probe(0.0, twist_schedule.front(), {});
    if (first.violation > options.taut_tolerance) {
        std::size_t worst = 0;
        for (std::size_t s = 0; s < first.strings.size(); ++s)
            if (first.strings[s].slack < first.strings[worst].slack) worst = s;
        std::ostringstream msg;
        msg << "string " << worst << " is " << -first.strings[worst].slack << " mm too short in the initial state";
        throw SetupError(msg.str());
    }
    for (auto& s : first.strings) s.slack = std::max(s.slack, 0.0);
    RailPose pose = first.pose;
    record(0, twist_schedule.front(), 0.0, std::move(first));

    double theta_prev = 0.0;
    for (std::size_t i = 1; i < twist_schedule.size(); ++i) {
        const double twist = twist_schedule[i];
        Probe here = probe(theta_prev, twist, pose);
        double theta = theta_prev;
        if (!here.ok) {
            double lo = theta_prev;
            std::optional<double> hi;
            Probe at_hi;
            for (double t = theta_prev + options.grid_step;; t += options.grid_step) {
                const double tt = std::min(t, result.theta_limit);
                Probe p = probe(tt, twist, pose);
                if (p.ok) {
                    hi = tt;
                    at_hi = std::move(p);
                    break;
                }
                lo = tt;
                if (tt >= result.theta_limit) break;
            }
            if (!hi) {
                std::ostringstream msg;
                msg << "no feasible fold up to " << rad_to_deg(result.theta_limit) << " deg at twist " << twist << " rad";
                result.stop_reason = msg.str();
                return result;
            }
            for (int it = 0; it < 200 && *hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + *hi);
                if (mid <= lo || mid >= *hi) break;
                Probe p = probe(mid, twist, at_hi.pose);
                if (p.ok) {
                    hi = mid;
                    at_hi = std::move(p);
                    if (at_hi.violation > -0.01 * options.taut_tolerance) break;
                } else {
                    lo = mid;
                }
            }
            theta = *hi;
            here = std::move(at_hi);
        }
        pose = here.pose;
        theta_prev = theta;
        record(i, twist, theta, std::move(here));
    }
    result.completed = true;
    result.stop_reason = "schedule completed";
    return result;
}

StringScenario miura_folding_scenario() {
    StringScenario sc;
    const double beta = deg_to_rad(75.0);
    sc.design.start = Vec2::Zero();
    sc.design.lengths.assign(6, 20.0);
    sc.design.shape_angles.assign(5, beta);
    sc.design.first_flag = EntryFlag::Mountain;
    sc.pattern = synthesize_pattern(sc.design, 30.0, 4);

    const std::size_t columns = sc.design.lengths.size();
    auto hole = [&](std::size_t row, std::size_t col) {
        const PanelId p = row * columns + col;
        return Waypoint{AnchoredPoint{p, polygon_centroid(sc.pattern.panel_polygon(p))}, StringSide::Below};
    };
    // Each string enters in the top row and bends once; the second pair mirrors the first.
    for (std::size_t k : {1, 2}) {
        StringRoute s;
        s.pair = 0;
        s.waypoints = {hole(0, k), hole(2, k + 1), hole(3, k + 1)};
        sc.plan.strings.push_back(s);
    }
    for (std::size_t k : {3, 4}) {
        StringRoute s;
        s.pair = 1;
        s.waypoints = {hole(0, k), hole(1, k), hole(3, k - 1)};
        sc.plan.strings.push_back(s);
    }
    sc.plan = assign_sides(sc.plan, sc.pattern);

    double cx = 0.0;
    for (const auto& s : sc.plan.strings) cx += s.waypoints.front().hole.flat_position.x();
    sc.config.rotation_center = Vec2(cx / static_cast<double>(sc.plan.strings.size()), 70.0);
    sc.config.rotation_diameter = 10.0;
    sc.config.first_hole_gap = 0.0;
    sc.config.string_width = 1.0;
    sc.config.strings_per_unit = 4;
    return sc;
}

double waypoint_angle(const StringState& string, std::size_t k) {
    const auto& h = string.hole_positions;
    if (k == 0 || k + 1 >= h.size()) throw DomainError("waypoint angle needs an interior waypoint");
    const Vec3 a = h[k - 1] - h[k];
    const Vec3 b = h[k + 1] - h[k];
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

std::string simulation_trace_csv(const SimulationResult& result) {
    std::ostringstream out;
    out.precision(17);
    out << "state,twist,fold_theta";
    const std::size_t n = result.states.empty() ? 0 : result.states.front().strings.size();
    for (std::size_t s = 0; s < n; ++s) out << ",slack_" << s;
    out << '\n';
    for (const auto& st : result.states) {
        out << st.index << ',' << st.twist << ',' << st.fold_theta;
        for (const auto& s : st.strings) out << ',' << s.slack;
        out << '\n';
    }
    return out.str();
}

}  // namespace origami
