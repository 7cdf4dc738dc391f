#include "origami/json_io.hpp"

#include "origami/errors.hpp"

#include <cmath>

namespace origami::io {

namespace {

const char* flag_name(EntryFlag f) { return f == EntryFlag::Mountain ? "mountain" : "valley"; }

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
    return *it;
}

const json* optional_field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
    return v;
}

double number_field(const json& j, const char* key, const std::string& path) {
    return number(field(j, key, path), path + "/" + key);
}

std::size_t index(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw SchemaError(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    return j;
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

EntryFlag flag_from(const json& j, const std::string& path) {
    const auto s = text(j, path);
    if (s == "mountain") return EntryFlag::Mountain;
    if (s == "valley") return EntryFlag::Valley;
    throw SchemaError(path, "expected \"mountain\" or \"valley\"");
}

CreaseKind kind_from(const json& j, const std::string& path) {
    const auto s = text(j, path);
    if (s == "mountain") return CreaseKind::Mountain;
    if (s == "valley") return CreaseKind::Valley;
    if (s == "border") return CreaseKind::Border;
    throw SchemaError(path, "expected \"mountain\", \"valley\" or \"border\"");
}

std::vector<double> numbers(const json& j, const std::string& path) {
    std::vector<double> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
    return out;
}

std::vector<Vec2> points(const json& j, const std::string& path) {
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(vec2_from(j[i], path + "/" + std::to_string(i)));
    return out;
}

json points_json(const std::vector<Vec2>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(to_json(p));
    return a;
}

json anchor_json(const AnchoredPoint& a) { return {{"panel", a.panel}, {"position", to_json(a.flat_position)}}; }

AnchoredPoint anchor_from(const json& j, const std::string& path) {
    return {index(field(j, "panel", path), path + "/panel"), vec2_from(field(j, "position", path), path + "/position")};
}

}  // namespace

json to_json(const Vec2& v) { return json::array({v.x(), v.y()}); }
json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const TransitionGraphDesign& d) {
    return {{"start", to_json(d.start)},
            {"lengths", d.lengths},
            {"shape_angles", d.shape_angles},
            {"first_flag", flag_name(d.first_flag)}};
}

json to_json(const CreasePattern& p) {
    json creases = json::array();
    for (const auto& c : p.creases)
        creases.push_back({{"a", c.a}, {"b", c.b}, {"kind", to_string(c.kind)},
                           {"group", c.group == FoldGroup::Main ? "main" : "zigzag"}});
    json flags = json::array();
    for (auto f : p.main_flags) flags.push_back(flag_name(f));
    return {{"vertices", points_json(p.vertices)},
            {"creases", creases},
            {"panels", p.panels},
            {"unit_width", p.unit_width},
            {"copy_count", p.copy_count},
            {"main_flags", flags},
            {"design_line", p.design_line},
            {"design_start", to_json(p.design_start)}};
}

json to_json(const Region& r) {
    json planes = json::array();
    for (const auto& h : r.half_planes) planes.push_back({{"normal", to_json(h.normal)}, {"offset", h.offset}});
    return {{"half_planes", planes}, {"polygon", points_json(r.polygon)}};
}

json to_json(const DesignTask& t) {
    json warn = json::array(), prohibited = json::array();
    for (const auto& r : t.warning_regions) warn.push_back(to_json(r));
    for (const auto& r : t.prohibited_regions) prohibited.push_back(to_json(r));
    return {{"start_anchor", to_json(t.start_anchor)},
            {"waypoints", points_json(t.waypoints)},
            {"warning_regions", warn},
            {"prohibited_regions", prohibited},
            {"reward_weight", t.reward_weight},
            {"unit_count", t.unit_count}};
}

json to_json(const FabricationParams& f) {
    return {{"inner_bias", f.inner_bias},
            {"panel_height", f.panel_height},
            {"membrane_thickness", f.membrane_thickness},
            {"hole_radius", f.hole_radius},
            {"midlayer_extra_bias", f.midlayer_extra_bias},
            {"hole_margin", f.hole_margin},
            {"hole_segments", f.hole_segments}};
}

json to_json(const Hole& h) {
    json j = anchor_json(h.anchor);
    j["radius"] = h.radius;
    return j;
}

json to_json(const TsaConfig& c) {
    return {{"rotation_center", to_json(c.rotation_center)},
            {"rotation_diameter", c.rotation_diameter},
            {"first_hole_gap", c.first_hole_gap},
            {"string_width", c.string_width},
            {"strings_per_unit", c.strings_per_unit}};
}

json to_json(const RoutingPlan& plan) {
    json strings = json::array();
    for (const auto& s : plan.strings) {
        json wps = json::array();
        for (const auto& w : s.waypoints) {
            json wj = anchor_json(w.hole);
            wj["side"] = to_string(w.side);
            wps.push_back(wj);
        }
        json sj = {{"pair", s.pair}, {"waypoints", wps}};
        sj["initial_length"] = std::isnan(s.initial_length) ? json(nullptr) : json(s.initial_length);
        strings.push_back(sj);
    }
    return {{"strings", strings}};
}

json to_json(const PlanarState& s) {
    return {{"theta", s.theta}, {"endpoint", to_json(s.endpoint)}, {"polyline", points_json(s.polyline())}};
}

json to_json(const FitnessBreakdown& f) {
    return {{"fitness", f.fitness},
            {"start_distance", f.start_distance},
            {"end_distance", f.end_distance},
            {"intermediate_distances", f.intermediate_distances},
            {"improper_count", f.improper_count},
            {"prohibited_hit", f.prohibited_hit},
            {"degenerate", f.degenerate}};
}

json to_json(const ValidationReport& r) { return {{"ok", r.ok}, {"violations", r.violations}}; }

json to_json(const RoutingReport& r) {
    json issues = json::array();
    for (const auto& i : r.issues)
        issues.push_back({{"string", i.string}, {"segment", i.segment}, {"creases", i.creases}, {"message", i.message}});
    return {{"ok", r.ok}, {"issues", issues}};
}

json to_json(const MeshReport& r) {
    return {{"watertight", r.watertight},
            {"boundary_edges", r.boundary_edges},
            {"non_manifold_edges", r.non_manifold_edges},
            {"inconsistent_edges", r.inconsistent_edges},
            {"signed_volume", r.signed_volume},
            {"inverted", r.inverted},
            {"bbox_min", to_json(r.bbox_min)},
            {"bbox_max", to_json(r.bbox_max)}};
}

json to_json(const EvolutionRun& run, bool with_history) {
    json j = {{"seed", run.seed},
              {"first_flag", flag_name(run.first_flag)},
              {"evaluations", run.evaluations},
              {"generations", run.best_fitness.size()},
              {"best", to_json(run.best_breakdown)},
              {"design", to_json(run.best_design)}};
    if (with_history) j["best_so_far"] = run.best_fitness;
    return j;
}

json to_json(const DesignArmResult& r) {
    json runs = json::array();
    for (const auto& run : r.runs) runs.push_back(to_json(run, true));
    return {{"ranking", r.ranking}, {"diagnostic", r.diagnostic}, {"runs", runs}};
}

json fold_snapshot(const FoldedGeometry& f) {
    json placements = json::array();
    for (const auto& p : f.placements) {
        json rot = json::array();
        for (int r = 0; r < 3; ++r) rot.push_back({p.rotation(r, 0), p.rotation(r, 1), p.rotation(r, 2)});
        placements.push_back({{"rotation", rot}, {"translation", to_json(Vec3(p.translation))}});
    }
    json panels = json::array();
    for (PanelId p = 0; p < f.pattern.panels.size(); ++p) {
        json pts = json::array();
        for (VertexId v : f.pattern.panels[p]) pts.push_back(to_json(f.vertex_position(p, v)));
        panels.push_back(pts);
    }
    return {{"theta", f.theta},
            {"fold_angles", f.fold_angles},
            {"max_closure_residual", f.max_closure_residual},
            {"placements", placements},
            {"panels", panels}};
}

json to_json(const SimulationResult& r) {
    json states = json::array();
    for (const auto& s : r.states) {
        json strings = json::array();
        for (const auto& st : s.strings) {
            json holes = json::array();
            for (const auto& h : st.hole_positions) holes.push_back(to_json(h));
            strings.push_back({{"tsa_side_length", st.tsa_side_length},
                               {"segment_lengths", st.segment_lengths},
                               {"slack", st.slack},
                               {"taut", st.taut},
                               {"holes", holes}});
        }
        states.push_back({{"index", s.index},
                          {"twist", s.twist},
                          {"fold_theta", s.fold_theta},
                          {"pose", {s.pose.dx, s.pose.dy, s.pose.rotation}},
                          {"strings", strings}});
    }
    return {{"completed", r.completed},
            {"final_index", r.states.empty() ? json(nullptr) : json(r.states.back().index)},
            {"theta_limit", r.theta_limit},
            {"stop_reason", r.stop_reason},
            {"warnings", r.warnings},
            {"states", states}};
}

Vec2 vec2_from(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [x, y]");
    return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

TransitionGraphDesign design_from(const json& j, const std::string& path) {
    TransitionGraphDesign d;
    d.start = vec2_from(field(j, "start", path), path + "/start");
    d.lengths = numbers(field(j, "lengths", path), path + "/lengths");
    d.shape_angles = numbers(field(j, "shape_angles", path), path + "/shape_angles");
    d.first_flag = flag_from(field(j, "first_flag", path), path + "/first_flag");
    return d;
}

CreasePattern pattern_from(const json& j, const std::string& path) {
    CreasePattern p;
    p.vertices = points(field(j, "vertices", path), path + "/vertices");
    const auto& creases = array(field(j, "creases", path), path + "/creases");
    for (std::size_t i = 0; i < creases.size(); ++i) {
        const std::string cp = path + "/creases/" + std::to_string(i);
        Crease c;
        c.a = index(field(creases[i], "a", cp), cp + "/a");
        c.b = index(field(creases[i], "b", cp), cp + "/b");
        if (c.a >= p.vertices.size()) throw SchemaError(cp + "/a", "vertex index out of range");
        if (c.b >= p.vertices.size()) throw SchemaError(cp + "/b", "vertex index out of range");
        c.kind = kind_from(field(creases[i], "kind", cp), cp + "/kind");
        c.group = FoldGroup::Zigzag;
        if (const json* g = optional_field(creases[i], "group", cp)) {
            const auto s = text(*g, cp + "/group");
            if (s == "main") c.group = FoldGroup::Main;
            else if (s != "zigzag") throw SchemaError(cp + "/group", "expected \"main\" or \"zigzag\"");
        }
        p.creases.push_back(c);
    }
    const auto& panels = array(field(j, "panels", path), path + "/panels");
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const std::string pp = path + "/panels/" + std::to_string(i);
        std::vector<VertexId> cyc;
        for (std::size_t k = 0; k < array(panels[i], pp).size(); ++k) {
            const VertexId v = index(panels[i][k], pp + "/" + std::to_string(k));
            if (v >= p.vertices.size()) throw SchemaError(pp + "/" + std::to_string(k), "vertex index out of range");
            cyc.push_back(v);
        }
        p.panels.push_back(std::move(cyc));
    }
    if (const json* w = optional_field(j, "unit_width", path)) p.unit_width = number(*w, path + "/unit_width");
    if (const json* c = optional_field(j, "copy_count", path)) p.copy_count = static_cast<int>(index(*c, path + "/copy_count"));
    if (const json* f = optional_field(j, "main_flags", path))
        for (std::size_t i = 0; i < array(*f, path + "/main_flags").size(); ++i)
            p.main_flags.push_back(flag_from((*f)[i], path + "/main_flags/" + std::to_string(i)));
    if (const json* d = optional_field(j, "design_line", path))
        for (std::size_t i = 0; i < array(*d, path + "/design_line").size(); ++i)
            p.design_line.push_back(index((*d)[i], path + "/design_line/" + std::to_string(i)));
    if (const json* s = optional_field(j, "design_start", path)) p.design_start = vec2_from(*s, path + "/design_start");
    return p;
}

Region region_from(const json& j, const std::string& path) {
    Region r;
    if (const json* hp = optional_field(j, "half_planes", path)) {
        for (std::size_t i = 0; i < array(*hp, path + "/half_planes").size(); ++i) {
            const std::string p = path + "/half_planes/" + std::to_string(i);
            r.half_planes.push_back({vec2_from(field((*hp)[i], "normal", p), p + "/normal"),
                                     number_field((*hp)[i], "offset", p)});
        }
    }
    if (const json* poly = optional_field(j, "polygon", path)) r.polygon = points(*poly, path + "/polygon");
    return r;
}

DesignTask task_from(const json& j, const std::string& path) {
    DesignTask t;
    t.start_anchor = vec2_from(field(j, "start_anchor", path), path + "/start_anchor");
    t.waypoints = points(field(j, "waypoints", path), path + "/waypoints");
    for (const char* key : {"warning_regions", "prohibited_regions"}) {
        auto& target = std::string(key) == "warning_regions" ? t.warning_regions : t.prohibited_regions;
        if (const json* regions = optional_field(j, key, path))
            for (std::size_t i = 0; i < array(*regions, path + "/" + key).size(); ++i)
                target.push_back(region_from((*regions)[i], path + "/" + key + "/" + std::to_string(i)));
    }
    if (const json* w = optional_field(j, "reward_weight", path)) t.reward_weight = number(*w, path + "/reward_weight");
    if (const json* n = optional_field(j, "unit_count", path)) t.unit_count = index(*n, path + "/unit_count");
    return t;
}

FabricationParams fab_params_from(const json& j, const std::string& path) {
    FabricationParams f;
    f.inner_bias = number_field(j, "inner_bias", path);
    f.panel_height = number_field(j, "panel_height", path);
    f.membrane_thickness = number_field(j, "membrane_thickness", path);
    if (const json* v = optional_field(j, "hole_radius", path)) f.hole_radius = number(*v, path + "/hole_radius");
    if (const json* v = optional_field(j, "midlayer_extra_bias", path))
        f.midlayer_extra_bias = number(*v, path + "/midlayer_extra_bias");
    if (const json* v = optional_field(j, "hole_margin", path)) f.hole_margin = number(*v, path + "/hole_margin");
    if (const json* v = optional_field(j, "hole_segments", path))
        f.hole_segments = static_cast<int>(index(*v, path + "/hole_segments"));
    return f;
}

Hole hole_from(const json& j, const std::string& path) {
    return {anchor_from(j, path), number_field(j, "radius", path)};
}

TsaConfig tsa_from(const json& j, const std::string& path) {
    TsaConfig c;
    c.rotation_center = vec2_from(field(j, "rotation_center", path), path + "/rotation_center");
    c.rotation_diameter = number_field(j, "rotation_diameter", path);
    if (const json* v = optional_field(j, "first_hole_gap", path)) c.first_hole_gap = number(*v, path + "/first_hole_gap");
    c.string_width = number_field(j, "string_width", path);
    if (const json* v = optional_field(j, "strings_per_unit", path))
        c.strings_per_unit = static_cast<int>(index(*v, path + "/strings_per_unit"));
    return c;
}

RoutingPlan routing_from(const json& j, const std::string& path) {
    RoutingPlan plan;
    const auto& strings = array(field(j, "strings", path), path + "/strings");
    for (std::size_t i = 0; i < strings.size(); ++i) {
        const std::string sp = path + "/strings/" + std::to_string(i);
        StringRoute s;
        if (const json* pr = optional_field(strings[i], "pair", sp)) s.pair = static_cast<int>(index(*pr, sp + "/pair"));
        if (const json* l = optional_field(strings[i], "initial_length", sp)) s.initial_length = number(*l, sp + "/initial_length");
        const auto& wps = array(field(strings[i], "waypoints", sp), sp + "/waypoints");
        for (std::size_t k = 0; k < wps.size(); ++k) {
            const std::string wp = sp + "/waypoints/" + std::to_string(k);
            Waypoint w;
            w.hole = anchor_from(wps[k], wp);
            const auto side = text(field(wps[k], "side", wp), wp + "/side");
            if (side == "above") w.side = StringSide::Above;
            else if (side == "below") w.side = StringSide::Below;
            else throw SchemaError(wp + "/side", "expected \"above\" or \"below\"");
            s.waypoints.push_back(w);
        }
        plan.strings.push_back(std::move(s));
    }
    return plan;
}

}  // namespace origami::io
