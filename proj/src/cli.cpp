#include "origami/app.hpp"

#include "origami/dxf.hpp"
#include "origami/errors.hpp"
#include "origami/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace origami::app {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("failed writing " + path);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transition-graph origami design, folding, simulation and fabrication", "origami"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    std::string report_path;
    app.add_option("--seed", seed, "Seed for every random choice");
    app.add_option("--report", report_path, "Write a JSON report to this path");

    io::json result;
    std::function<void()> action;

    std::string project_path, output_path;
    auto load = [&] { return load_project_file(project_path); };
    auto save = [&](const Project& p) { save_project_file(p, output_path.empty() ? project_path : output_path); };

    // init
    std::string template_name = "empty";
    auto* init = app.add_subcommand("init", "Write a starter project");
    init->add_option("template", template_name, "empty, arm or miura")->required();
    init->add_option("-o,--output", output_path, "Project file to create")->required();
    init->callback([&] {
        action = [&] {
            const auto p = template_project(template_name);
            save_project_file(p, output_path);
            result = {{"template", template_name}, {"output", output_path}};
            out << "wrote " << output_path << '\n';
        };
    });

    // design
    double unit_width = 20.0;
    int copies = 2;
    auto* design = app.add_subcommand("design", "Synthesize the crease pattern of the project's design");
    design->add_option("project", project_path)->required();
    design->add_option("--width", unit_width, "Strip width w in mm");
    design->add_option("--copies", copies, "Number of stacked strip rows");
    design->add_option("-o,--output", output_path, "Write the updated project here instead of in place");
    design->callback([&] {
        action = [&] {
            auto p = load();
            result = synthesize(p, unit_width, copies);
            save(p);
            out << "pattern: " << result["panels"] << " panels, " << result["creases"] << " creases, valid="
                << result["validation"]["ok"] << '\n';
        };
    });

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score the project's design against its task");
    evaluate_cmd->add_option("project", project_path)->required();
    evaluate_cmd->callback([&] {
        action = [&] {
            result = evaluate(load());
            out << "fitness " << result["fitness"] << " (improper states " << result["improper_count"] << ")\n";
        };
    });

    // optimize
    DesignOptions design_options;
    std::string log_dir;
    auto* optimize_cmd = app.add_subcommand("optimize", "Search designs for the project's task");
    optimize_cmd->add_option("project", project_path)->required();
    optimize_cmd->add_option("--runs", design_options.runs, "Independent runs");
    optimize_cmd->add_option("--generations", design_options.max_generations, "Generation budget per run");
    optimize_cmd->add_option("--evaluations", design_options.max_evaluations, "Evaluation budget per run");
    optimize_cmd->add_option("--threads", design_options.threads, "Worker threads (0: all cores)");
    optimize_cmd->add_option("--log-dir", log_dir, "Write one generation CSV per run");
    optimize_cmd->add_option("-o,--output", output_path, "Write the updated project here instead of in place");
    optimize_cmd->callback([&] {
        action = [&] {
            auto p = load();
            design_options.seed = seed;
            const auto arm = optimize(p, design_options);
            result = io::to_json(arm);
            if (!log_dir.empty()) {
                std::filesystem::create_directories(log_dir);
                for (std::size_t k = 0; k < arm.runs.size(); ++k)
                    write_file(log_dir + "/run_" + std::to_string(k) + ".csv", generation_log_csv(arm.runs[k]));
            }
            save(p);
            if (arm.ranking.empty()) {
                out << arm.diagnostic << '\n';
            } else {
                const auto& best = arm.runs[arm.ranking.front()].best_breakdown;
                out << "best fitness " << best.fitness << " (end distance " << best.end_distance << " mm, "
                    << best.improper_count << " improper states)\n";
            }
        };
    });

    // fold
    double theta = 0.0;
    bool degrees = false;
    auto* fold_cmd = app.add_subcommand("fold", "Rigidly fold the project's pattern");
    fold_cmd->add_option("project", project_path)->required();
    fold_cmd->add_option("--theta", theta, "Main crease fold angle (radians unless --degrees)")->required();
    fold_cmd->add_flag("--degrees", degrees, "Read --theta in degrees");
    fold_cmd->callback([&] {
        action = [&] {
            result = fold(load(), degrees ? deg_to_rad(theta) : theta);
            out << "folded " << result["panels"].size() << " panels, closure residual "
                << result["max_closure_residual"] << '\n';
        };
    });

    // simulate
    SimulationRequest sim;
    bool free_pose = false;
    std::string trace_path;
    auto* simulate_cmd = app.add_subcommand("simulate", "Quasi-static string folding simulation");
    simulate_cmd->add_option("project", project_path)->required();
    simulate_cmd->add_option("--twist-max", sim.twist_max, "Last twist angle in radians");
    simulate_cmd->add_option("--twist-step", sim.twist_step, "Twist increment in radians");
    simulate_cmd->add_option("--max-states", sim.max_states, "Stop after this many scheduled states");
    simulate_cmd->add_flag("--free-pose", free_pose, "Let the sheet slide and rotate on the rail");
    simulate_cmd->add_option("--trace", trace_path, "Write the state trace as CSV");
    simulate_cmd->callback([&] {
        action = [&] {
            sim.pose_mode = free_pose ? PoseMode::Free : PoseMode::Pinned;
            const auto res = simulate(load(), sim);
            result = io::to_json(res);
            if (!trace_path.empty()) write_file(trace_path, simulation_trace_csv(res));
            out << res.states.size() << " states, final fold " << rad_to_deg(res.states.back().fold_theta)
                << " deg; " << res.stop_reason << '\n';
        };
    });

    // fabricate
    std::string out_dir = ".";
    bool auto_holes = false;
    auto* fabricate_cmd = app.add_subcommand("fabricate", "Write the four printable STL meshes");
    fabricate_cmd->add_option("project", project_path)->required();
    fabricate_cmd->add_option("--out-dir", out_dir, "Directory for the STL files");
    fabricate_cmd->add_flag("--auto-holes", auto_holes, "Put one hole at each panel centre");
    fabricate_cmd->callback([&] {
        action = [&] {
            const auto fab = fabricate(load(), auto_holes);
            std::filesystem::create_directories(out_dir);
            const std::pair<const char*, const TriangleMesh*> parts[] = {{"infills", &fab.model.infills},
                                                                          {"mid_layers", &fab.model.mid_layers},
                                                                          {"shells", &fab.model.shells},
                                                                          {"creases", &fab.model.creases}};
            io::json files = io::json::array();
            for (const auto& [name, mesh] : parts) {
                const std::string path = (std::filesystem::path(out_dir) / (std::string(name) + ".stl")).string();
                write_stl_file(*mesh, path);
                files.push_back(path);
            }
            result = fab.report;
            result["files"] = files;
            out << "wrote 4 STL files to " << out_dir << "; max fold angle " << result["max_fold_angle_deg"]
                << " deg\n";
        };
    });

    // import-dxf
    std::string dxf_path;
    auto* import_cmd = app.add_subcommand("import-dxf", "Read a DXF crease pattern into a project");
    import_cmd->add_option("dxf", dxf_path)->required();
    import_cmd->add_option("-o,--output", output_path, "Project file to write")->required();
    import_cmd->add_option("--into", project_path, "Existing project to update");
    import_cmd->callback([&] {
        action = [&] {
            Project p = project_path.empty() ? template_project("empty") : load();
            const auto imported = parse_dxf(read_file(dxf_path));
            p.pattern = imported.pattern;
            p.design.reset();
            save_project_file(p, output_path);
            const auto check = validate_pattern(imported.pattern);
            result = {{"vertices", imported.pattern.vertices.size()},
                      {"creases", imported.pattern.creases.size()},
                      {"panels", imported.pattern.panels.size()},
                      {"warnings", imported.warnings},
                      {"validation", io::to_json(check)}};
            for (const auto& w : imported.warnings) err << "warning: " << w << '\n';
            out << "imported " << imported.pattern.creases.size() << " creases, " << imported.pattern.panels.size()
                << " panels\n";
        };
    });

    // export-svg / export-dxf
    auto* svg_cmd = app.add_subcommand("export-svg", "Draw the project's pattern as SVG");
    svg_cmd->add_option("project", project_path)->required();
    svg_cmd->add_option("-o,--output", output_path, "SVG file")->required();
    svg_cmd->callback([&] {
        action = [&] {
            const auto p = load();
            if (!p.pattern) throw SchemaError("/pattern", "project has no pattern section");
            write_file(output_path, export_svg(*p.pattern));
            result = {{"output", output_path}, {"creases", p.pattern->creases.size()}};
            out << "wrote " << output_path << '\n';
        };
    });
    auto* dxf_cmd = app.add_subcommand("export-dxf", "Write the project's pattern as DXF");
    dxf_cmd->add_option("project", project_path)->required();
    dxf_cmd->add_option("-o,--output", output_path, "DXF file")->required();
    dxf_cmd->callback([&] {
        action = [&] {
            const auto p = load();
            if (!p.pattern) throw SchemaError("/pattern", "project has no pattern section");
            write_file(output_path, export_dxf(*p.pattern));
            result = {{"output", output_path}, {"creases", p.pattern->creases.size()}};
            out << "wrote " << output_path << '\n';
        };
    });

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check the pattern and the string routing");
    validate_cmd->add_option("project", project_path)->required();
    validate_cmd->callback([&] {
        action = [&] {
            const auto p = load();
            check_references(p);
            result = io::json::object();
            bool ok = true;
            if (p.pattern) {
                const auto r = validate_pattern(*p.pattern);
                result["pattern"] = io::to_json(r);
                ok = ok && r.ok;
            }
            if (p.pattern && p.routing) {
                const auto r = validate_routing(p.routing->plan, *p.pattern);
                result["routing"] = io::to_json(r);
                ok = ok && r.ok;
            }
            out << (ok ? "valid" : "invalid") << '\n';
            if (!ok) throw SetupError("project failed validation");
        };
    });

    // serve
    std::string host = "127.0.0.1";
    int port = 8765;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the project over local HTTP");
    serve_cmd->add_option("--project", project_path, "Project to load at start");
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port);
    serve_cmd->callback([&] {
        action = [&] {
            Service service(project_path.empty() ? Project{} : load());
            out << "serving on http://" << host << ':' << port << '\n' << std::flush;
            if (!service.listen(host, port)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
        };
    });

    std::vector<std::string> storage = args;
    if (storage.empty()) storage.push_back("origami");
    std::vector<char*> argv;
    for (auto& a : storage) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 1;
    }

    std::string command;
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();
    io::json report = {{"command", command}, {"seed", seed}};
    int code = 0;
    try {
        action();
        report["ok"] = true;
        report["result"] = result;
    } catch (const std::exception& e) {
        const bool io_failure = dynamic_cast<const IoError*>(&e) ||
                                dynamic_cast<const std::filesystem::filesystem_error*>(&e) ||
                                dynamic_cast<const std::ios_base::failure*>(&e);
        code = io_failure ? 2 : 1;
        report["ok"] = false;
        if (!result.is_null()) report["result"] = result;
        report["error"] = error_json(e);
        err << "error: " << e.what() << '\n';
    }
    if (!report_path.empty()) {
        try {
            write_file(report_path, report.dump(2) + "\n");
        } catch (const IoError& e) {
            err << "error: " << e.what() << '\n';
            return 2;
        }
    }
    return code;
}

}  // namespace origami::app
