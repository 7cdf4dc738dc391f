#include "origami/app.hpp"

#include "origami/errors.hpp"

namespace origami::app {

namespace {

const TransitionGraphDesign& need_design(const Project& p) {
    if (!p.design) throw SchemaError("/design", "project has no design section");
    return *p.design;
}

const CreasePattern& need_pattern(const Project& p) {
    if (!p.pattern) throw SchemaError("/pattern", "project has no pattern section");
    return *p.pattern;
}

const DesignTask& need_task(const Project& p) {
    if (!p.task) throw SchemaError("/task", "project has no task section");
    return *p.task;
}

const RoutingSection& need_routing(const Project& p) {
    if (!p.routing) throw SchemaError("/routing", "project has no routing section");
    return *p.routing;
}

io::json mesh_entry(const TriangleMesh& mesh) {
    io::json j = io::to_json(mesh_diagnostics(mesh));
    j["triangles"] = mesh.triangles.size();
    return j;
}

const char* error_type(const std::exception& e) {
    if (dynamic_cast<const IoError*>(&e)) return "io";
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const SchemaError*>(&e)) return "schema";
    if (dynamic_cast<const ReferenceError*>(&e)) return "reference";
    if (dynamic_cast<const SetupError*>(&e)) return "setup";
    if (dynamic_cast<const KinematicError*>(&e)) return "kinematic";
    if (dynamic_cast<const GeometryError*>(&e)) return "geometry";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    return "error";
}

}  // namespace

io::json error_json(const std::exception& e) {
    io::json j = {{"type", error_type(e)}, {"message", e.what()}};
    if (const auto* s = dynamic_cast<const SchemaError*>(&e)) j["path"] = s->path();
    if (const auto* p = dynamic_cast<const ParseError*>(&e)) j["offset"] = p->offset();
    return j;
}

io::json synthesize(Project& project, double unit_width, int copies) {
    const auto pattern = synthesize_pattern(need_design(project), unit_width, copies);
    const auto report = validate_pattern(pattern);
    project.pattern = pattern;
    return {{"vertices", pattern.vertices.size()},
            {"creases", pattern.creases.size()},
            {"panels", pattern.panels.size()},
            {"validation", io::to_json(report)}};
}

io::json evaluate(const Project& project) {
    const auto& design = need_design(project);
    return io::to_json(evaluate_fitness(design, need_task(project)));
}

DesignArmResult optimize(Project& project, const DesignOptions& options) {
    auto result = design_arm(need_task(project), options);
    if (!result.ranking.empty()) {
        project.design = result.runs[result.ranking.front()].best_design;
        project.pattern.reset();
    }
    return result;
}

io::json fold(const Project& project, double theta) {
    const auto& pattern = need_pattern(project);
    const auto folded = embed_fold(pattern, theta);
    io::json j = io::fold_snapshot(folded);
    if (!pattern.design_line.empty()) {
        const auto line = projected_design_line(folded);
        j["projected_endpoint"] = io::to_json(line.back());
        if (project.design && project.design->vector_count() + 1 == pattern.design_line.size())
            j["planar_endpoint"] = io::to_json(fold_state(*project.design, theta).endpoint);
    }
    return j;
}

io::json check_routing(const Project& project) {
    return io::to_json(validate_routing(need_routing(project).plan, need_pattern(project)));
}

SimulationResult simulate(const Project& project, const SimulationRequest& request) {
    const auto& pattern = need_pattern(project);
    const auto& routing = need_routing(project);
    const auto report = validate_routing(routing.plan, pattern);
    if (!report.ok) {
        const auto& issue = report.issues.front();
        throw SetupError("string " + std::to_string(issue.string) + " segment " + std::to_string(issue.segment) +
                         ": " + issue.message);
    }
    if (!(request.twist_step > 0.0) || !(request.twist_max >= 0.0)) throw DomainError("invalid twist schedule");
    std::vector<double> schedule;
    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * request.twist_step;
        if (t > request.twist_max + 1e-12) break;
        if (request.max_states && schedule.size() >= request.max_states) break;
        schedule.push_back(t);
    }
    SimulationOptions options;
    options.pose_mode = request.pose_mode;
    options.on_state = request.on_state;
    const FabricationParams fab = project.fab ? project.fab->params : FabricationParams{};
    return solve_quasi_static(pattern, routing.plan, routing.tsa, schedule, fab, options);
}

Fabrication fabricate(const Project& project, bool auto_holes) {
    const auto& pattern = need_pattern(project);
    const FabricationParams params = project.fab ? project.fab->params : FabricationParams{};
    std::vector<Hole> holes = project.fab ? project.fab->holes : std::vector<Hole>{};
    std::vector<std::string> warnings;
    if (auto_holes) {
        auto plan = place_holes(pattern, params, HoleMode::AutoCenter);
        holes = std::move(plan.holes);
        warnings = std::move(plan.warnings);
    }
    Fabrication out;
    out.model = generate_meshes(pattern, params, holes);
    warnings.insert(warnings.end(), out.model.warnings.begin(), out.model.warnings.end());
    out.report = {{"max_fold_angle", out.model.max_fold_angle},
                  {"max_fold_angle_deg", rad_to_deg(out.model.max_fold_angle)},
                  {"max_folding_ratio", out.model.max_fold_angle / kPi},
                  {"holes", out.model.holes.size()},
                  {"warnings", warnings},
                  {"meshes",
                   {{"infills", mesh_entry(out.model.infills)},
                    {"mid_layers", mesh_entry(out.model.mid_layers)},
                    {"shells", mesh_entry(out.model.shells)},
                    {"creases", mesh_entry(out.model.creases)}}}};
    return out;
}

Project template_project(const std::string& name) {
    Project p;
    p.provenance = {{"created_by", "origami"}, {"template", name}};
    if (name == "empty") return p;
    if (name == "arm") {
        p.task = reference_arm_task();
        TransitionGraphDesign d;
        d.lengths.assign(p.task->unit_count + 1, 50.0);
        d.shape_angles.assign(p.task->unit_count, deg_to_rad(60.0));
        p.design = d;
        return p;
    }
    if (name == "miura") {
        const auto sc = miura_folding_scenario();
        p.design = sc.design;
        p.pattern = sc.pattern;
        FabricationSection fab;
        fab.params = sc.fab;
        fab.holes = place_holes(sc.pattern, sc.fab, HoleMode::AutoCenter).holes;
        p.fab = fab;
        p.routing = RoutingSection{sc.config, sc.plan};
        return p;
    }
    throw DomainError("unknown template '" + name + "' (expected empty, arm or miura)");
}

}  // namespace origami::app
