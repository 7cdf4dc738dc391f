// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include "origami/app.hpp"
#include "origami/dxf.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

using namespace origami;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome fold_angle_limit() {
    Outcome o;
    const FabricationParams p{.inner_bias = 3.0, .panel_height = 2.2, .membrane_thickness = 0.4};
    const double deg = rad_to_deg(max_fold_angle(p));
    const double ratio = 100.0 * max_fold_angle(p) / kPi;
    o.require(std::abs(deg - 146.6) <= 0.05, "theta_max " + fmt("%.4f", deg));
    o.require(std::abs(ratio - 81.4) <= 0.1, "p_max " + fmt("%.3f", ratio));
    o.detail = "theta_max " + fmt("%.4f", deg) + " deg, p_max " + fmt("%.3f", ratio) + "% " + o.detail;
    return o;
}

Outcome angle_round_trip() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> beta(0.0, kPi), ratio(0.0, 1.0);
    double worst = 0.0;
    int samples = 0;
    while (samples < 10000) {
        const double b = beta(rng);
        const double p = ratio(rng);
        if (b <= 0.0 || p <= 0.0 || b == kPi / 2) continue;
        const EntryFlag f = rng() % 2 ? EntryFlag::Mountain : EntryFlag::Valley;
        worst = std::max(worst, std::abs(shape_angle(transition_delta(b, p * kPi, f), p, f) - b));
        ++samples;
    }
    const double secs = seconds_since(t0);
    o.require(worst < 1e-9, "worst error " + fmt("%.3g", worst));
    o.require(secs < 1.0, "took " + fmt("%.2f", secs) + " s");
    o.detail = "10000 samples, worst " + fmt("%.2e", worst) + " rad in " + fmt("%.3f", secs) + " s " + o.detail;
    return o;
}

Outcome trajectory_sampling() {
    Outcome o;
    std::mt19937_64 rng(3);
    const auto d = testsupport::random_design(rng, 6);
    const auto states = sample_trajectory(d, deg_to_rad(4.0));
    o.require(states.size() == 46, std::to_string(states.size()) + " states");
    const auto& flat = states.front();
    o.require(flat.vectors[0].absolute_angle == 0.0, "alpha_0 at theta=0 is not 0");
    for (std::size_t i = 1; i < flat.vectors.size(); ++i)
        o.require(flat.vectors[i].absolute_angle - flat.vectors[i - 1].absolute_angle == 0.0,
                  "nonzero turn at theta=0");
    o.require(states.back().theta == kPi && states.back().vectors[0].absolute_angle == kPi / 2,
              "alpha_0 at theta=pi is not pi/2");
    o.detail = std::to_string(states.size()) + " states; flat turns 0; alpha_0(pi) = pi/2 " + o.detail;
    return o;
}

Outcome fitness_arithmetic() {
    Outcome o;
    const double base = fitness_formula(120.0, 0.0, 0.0, 0);
    o.require(std::abs(base - 60.0) <= 1e-15 * 60.0, "f = " + fmt("%.17g", base));
    double worst = 0.0;
    for (int n = 0; n < 45; ++n)
        worst = std::max(worst, std::abs(fitness_formula(120.0, 0.0, 0.0, n + 1) - fitness_formula(120.0, 0.0, 0.0, n) + 4.0));
    o.require(worst <= 1e-13, "penalty step off by " + fmt("%.3g", worst));
    o.detail = "f(0,0,N=0) = " + fmt("%.17g", base) + ", penalty step error " + fmt("%.1e", worst) + " " + o.detail;
    return o;
}

Outcome arm_task_regression() {
    Outcome o;
    const auto task = reference_arm_task();
    o.require(task.start_anchor == Vec2(0, 0) && task.waypoints.front() == Vec2(250, 0) &&
                  task.waypoints.back() == Vec2(50, 133.3) && task.reward_weight == 120.0,
              "task constants differ");
    o.require(task.warning_regions[0].contains({140, 30}) && !task.warning_regions[0].contains({139.9, 30}) &&
                  task.prohibited_regions[0].contains({150, 40}) && !task.prohibited_regions[0].contains({150, 39.9}),
              "region bounds differ");
    DesignOptions opt;
    opt.runs = 10;
    opt.seed = 7;
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = design_arm(task, opt);
    const double secs = seconds_since(t0);
    o.require(secs < 600.0, "took " + fmt("%.1f", secs) + " s");
    bool monotone = true;
    for (const auto& run : result.runs)
        for (std::size_t g = 1; g < run.best_fitness.size(); ++g) monotone = monotone && run.best_fitness[g] >= run.best_fitness[g - 1];
    o.require(monotone, "a best-so-far curve decreases");
    int good = 0;
    double best_end = 1e9;
    for (const auto& run : result.runs) {
        const auto& b = run.best_breakdown;
        if (b.improper_count == 0 && !b.prohibited_hit) best_end = std::min(best_end, b.end_distance);
        if (b.improper_count == 0 && b.end_distance < 25.0 && !b.prohibited_hit) ++good;
    }
    o.require(good > 0, "no run reaches N=0 with end distance < 25 mm");
    const auto& top = result.runs[result.ranking.front()].best_breakdown;
    o.detail = "10 runs in " + fmt("%.1f", secs) + " s; " + std::to_string(good) + " runs with N=0 and end < 25 mm (best " +
               fmt("%.2f", best_end) + " mm); top fitness " + fmt("%.3f", top.fitness) + " " + o.detail;
    return o;
}

Outcome cma_es_sphere() {
    Outcome o;
    o.require(default_population(4) == 8, "lambda(4) = " + std::to_string(default_population(4)));
    for (std::size_t d : {2u, 10u, 50u})
        o.require(default_population(d) == 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(double(d)))),
                  "lambda rule differs at d=" + std::to_string(d));
    auto sphere = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return s;
    };
    double worst = 0.0;
    std::size_t most = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        CmaEsOptions opt;
        opt.max_generations = 200;
        opt.seed = seed;
        const std::vector<double> x0{1.0, -2.0, 3.0, 0.5};
        const auto r = cma_es_minimize(sphere, x0, 1.0, opt);
        worst = std::max(worst, r.best_value);
        most = std::max(most, r.history.size());
    }
    o.require(worst < 1e-8, "best value " + fmt("%.3g", worst));
    o.require(most <= 200, std::to_string(most) + " generations");
    o.detail = "5 seeds, worst best value " + fmt("%.2e", worst) + " within " + std::to_string(most) +
               " generations, lambda(4) = 8 " + o.detail;
    return o;
}

Outcome planar_consistency() {
    Outcome o;
    std::mt19937_64 rng(77);
    double worst_end = 0.0, worst_closure = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = testsupport::random_design(rng, 2 + trial % 5);
        const auto cp = synthesize_pattern(d, 10.0, 2);
        for (double theta : {0.2, 0.8, 1.4, 2.1, 2.9}) {
            const auto g = embed_fold(cp, theta);
            const Vec2 projected = projected_design_line(g).back();
            worst_end = std::max(worst_end, (projected - fold_state(d, theta).endpoint).norm());
            worst_closure = std::max(worst_closure, closure_residual(cp, g.fold_angles));
        }
    }
    o.require(worst_end < 1e-6, "endpoint error " + fmt("%.3g", worst_end));
    o.require(worst_closure < 1e-9, "closure residual " + fmt("%.3g", worst_closure));
    o.detail = "100 samples, endpoint error " + fmt("%.2e", worst_end) + " mm, closure " + fmt("%.2e", worst_closure) +
               " " + o.detail;
    return o;
}

Outcome string_folding() {
    Outcome o;
    const auto sc = miura_folding_scenario();
    double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
    for (const Vec2& v : sc.pattern.vertices) {
        xmin = std::min(xmin, v.x());
        xmax = std::max(xmax, v.x());
        ymin = std::min(ymin, v.y());
        ymax = std::max(ymax, v.y());
    }
    o.require(std::abs(xmax - xmin - 120) < 1e-9 && std::abs(ymax - ymin - 120) < 1e-9, "pattern is not 120 x 120 mm");
    o.require(sc.pattern.panels.size() == 24 && sc.plan.strings.size() == 4, "not a 6x4 pattern with 4 strings");
    for (const auto& s : sc.plan.strings)
        for (const auto& w : s.waypoints)
            o.require((w.hole.flat_position - polygon_centroid(sc.pattern.panel_polygon(w.hole.panel))).norm() < 1e-12,
                      "hole off its panel center");

    const auto t0 = std::chrono::steady_clock::now();
    const auto res = solve_quasi_static(sc.pattern, sc.plan, sc.config, default_twist_schedule(), sc.fab);
    const double secs = seconds_since(t0);
    o.require(secs < 120.0, "took " + fmt("%.1f", secs) + " s");
    o.require(!res.states.empty(), "no states");
    if (res.states.empty()) return o;

    // Oracle: rebuild every string length from the reported hole positions.
    const Vec3 center(sc.config.rotation_center.x(), sc.config.rotation_center.y(), 0.0);
    auto used = [&](const QuasiStaticState& st, std::size_t s) {
        const auto& h = st.strings[s].hole_positions;
        const auto& m = st.strings[s ^ 1u].hole_positions;
        double len = testsupport::tsa_oracle((0.5 * (h[0] + m[0]) - center).norm(), st.twist, sc.config.rotation_diameter,
                                             (h[0] - m[0]).norm(), sc.config.string_width);
        for (std::size_t k = 0; k + 1 < h.size(); ++k) len += (h[k + 1] - h[k]).norm();
        return len;
    };
    std::vector<double> l0;
    for (std::size_t s = 0; s < 4; ++s) {
        std::vector<Vec3> flat, mate;
        for (const auto& w : sc.plan.strings[s].waypoints) flat.emplace_back(w.hole.flat_position.x(), w.hole.flat_position.y(), 0.0);
        const Vec2 m = sc.plan.strings[s ^ 1u].waypoints[0].hole.flat_position;
        const Vec3 mv(m.x(), m.y(), 0.0);
        double len = testsupport::tsa_oracle((0.5 * (flat[0] + mv) - center).norm(), 0.0, sc.config.rotation_diameter,
                                             (flat[0] - mv).norm(), sc.config.string_width);
        for (std::size_t k = 0; k + 1 < flat.size(); ++k) len += (flat[k + 1] - flat[k]).norm();
        l0.push_back(len);
    }
    double worst_taut = 0.0, worst_over = 0.0;
    std::size_t taut_checks = 0;
    bool monotone = true;
    for (std::size_t i = 0; i < res.states.size(); ++i) {
        const auto& st = res.states[i];
        if (i > 0) monotone = monotone && st.fold_theta >= res.states[i - 1].fold_theta;
        for (std::size_t s = 0; s < 4; ++s) {
            const double slack = l0[s] - used(st, s);
            worst_over = std::max(worst_over, -slack);
            if (st.strings[s].taut) {
                worst_taut = std::max(worst_taut, std::abs(slack));
                ++taut_checks;
            }
        }
    }
    o.require(worst_taut < 1e-6, "(a) taut conservation error " + fmt("%.3g", worst_taut));
    o.require(worst_over < 1e-6, "(a) a string is overstretched by " + fmt("%.3g", worst_over));
    o.require(monotone, "(b) fold angle decreases");

    const auto& first = res.states.front();
    const double x = (0.5 * (first.strings[0].hole_positions[0] + first.strings[1].hole_positions[0]) - center).norm();
    const double d2 = (first.strings[0].hole_positions[0] - first.strings[1].hole_positions[0]).norm();
    const double jump = std::abs(tsa_segment_length(sc.config, x, kPi, d2) -
                                 tsa_segment_length(sc.config, x, std::nextafter(kPi, 0.0), d2));
    o.require(jump < 1e-9, "(c) jump at pi " + fmt("%.3g", jump));
    bool tsa_monotone = true;
    double prev = 0.0;
    for (double t = 0.0; t <= 20.0 * kPi; t += 0.01) {
        const double l = tsa_segment_length(sc.config, x, t, d2);
        tsa_monotone = tsa_monotone && l >= prev;
        prev = l;
    }
    o.require(tsa_monotone, "(c) twisted length decreases");

    std::string angles;
    for (std::size_t s = 0; s < 4; ++s) {
        const double a0 = rad_to_deg(waypoint_angle(first.strings[s], 1));
        const double a1 = rad_to_deg(waypoint_angle(res.states.back().strings[s], 1));
        o.require(a1 > a0, "(d) string " + std::to_string(s) + " angle " + fmt("%.2f", a0) + " -> " + fmt("%.2f", a1));
        if (s == 0) angles = fmt("%.2f", a0) + " -> " + fmt("%.2f", a1);
    }
    o.detail = std::to_string(res.states.size()) + " states in " + fmt("%.1f", secs) + " s (" + res.stop_reason +
               "), final fold " + fmt("%.2f", rad_to_deg(res.states.back().fold_theta)) + " deg; taut error " +
               fmt("%.1e", worst_taut) + " over " + std::to_string(taut_checks) + " checks; B-C-D " + angles + " deg " +
               o.detail;
    return o;
}

Outcome fabrication_meshes() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "origami-acceptance-stl";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto cube = testsupport::read_binary_stl(write_stl(make_box(Vec3::Zero(), Vec3::Ones())));
    const std::string cube_bytes = write_stl(make_box(Vec3::Zero(), Vec3::Ones()));
    o.require(cube_bytes.size() == 684 && cube.triangles.size() == 12 && std::abs(cube.volume() - 1.0) < 1e-6,
              "cube STL is " + std::to_string(cube_bytes.size()) + " bytes");

    const auto cp = synthesize_pattern(testsupport::miura_design(2, 20.0, 70.0), 20.0, 2);
    const FabricationParams params{.inner_bias = 3.0, .panel_height = 2.2, .membrane_thickness = 0.4};
    const auto holes = place_holes(cp, params, HoleMode::AutoCenter);
    o.require(cp.panels.size() == 4 && holes.holes.size() == 4, "expected four panels with one hole each");
    const auto model = generate_meshes(cp, params, holes.holes);
    const std::pair<const char*, const TriangleMesh*> parts[] = {
        {"infills", &model.infills}, {"mid_layers", &model.mid_layers}, {"shells", &model.shells}, {"creases", &model.creases}};
    for (const auto& [name, mesh] : parts) {
        write_stl_file(*mesh, (dir / (std::string(name) + ".stl")).string());
        o.require(mesh_diagnostics(*mesh).watertight, std::string(name) + " is not watertight");
    }
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".stl";
    o.require(files == 4, std::to_string(files) + " STL files");
    for (const auto& [name, mesh] : parts) {
        const auto stl = testsupport::read_binary_stl(slurp(dir / (std::string(name) + ".stl")));
        o.require(stl.closed_and_oriented(), std::string(name) + ".stl does not close");
    }

    double analytic = 0.0;
    const double hole = kPi * params.hole_radius * params.hole_radius;
    for (PanelId p = 0; p < cp.panels.size(); ++p)
        analytic += (testsupport::inset_area_oracle(cp.panel_polygon(p), params.inner_bias) - hole) *
                    (params.panel_height - params.membrane_thickness);
    const double volume = testsupport::read_binary_stl(slurp(dir / "infills.stl")).volume();
    const double rel = std::abs(volume / analytic - 1.0);
    o.require(rel < 1e-3, "infill volume off by " + fmt("%.3g", 100 * rel) + "%");
    fs::remove_all(dir);
    o.detail = "4 watertight STL files, infill " + fmt("%.3f", volume) + " vs " + fmt("%.3f", analytic) + " mm^3 (" +
               fmt("%.4f", 100 * rel) + "%), cube 684 bytes " + o.detail;
    return o;
}

Outcome interchange_round_trips() {
    Outcome o;
    std::mt19937_64 rng(10);
    std::size_t creases = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto cp = synthesize_pattern(testsupport::random_design(rng, 2 + trial % 4), 10.0, 1 + trial % 3);
        const auto back = parse_dxf(export_dxf(cp)).pattern;
        o.require(back.creases.size() == cp.creases.size(), "DXF crease count changed");
        for (const auto& c : cp.creases) {
            bool found = false;
            for (const auto& b : back.creases) {
                if (b.kind != c.kind) continue;
                const Vec2 p = back.vertices[b.a], q = back.vertices[b.b];
                const Vec2 u = cp.vertices[c.a], v = cp.vertices[c.b];
                found = found || ((p - u).norm() < 1e-3 && (q - v).norm() < 1e-3) ||
                        ((p - v).norm() < 1e-3 && (q - u).norm() < 1e-3);
            }
            o.require(found, "DXF lost a crease");
        }
        creases += cp.creases.size();
    }

    Project p = app::template_project("miura");
    p.task = reference_arm_task();
    const std::string saved = save_project(p);
    const Project loaded = load_project(saved);
    o.require(loaded == p && save_project(loaded) == saved, "project save/load is not an identity");

    const fs::path dir = fs::temp_directory_path() / "origami-acceptance-cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    save_project_file(app::template_project("arm"), (dir / "arm.json").string());
    auto run = [&](const std::string& report) {
        std::ostringstream out, err;
        return app::run_cli({"origami", "--seed", "7", "--report", (dir / report).string(), "optimize",
                             (dir / "arm.json").string(), "--runs", "10", "--generations", "40", "-o",
                             (dir / (report + ".project")).string()},
                            out, err);
    };
    const int a = run("a.json");
    const int b = run("b.json");
    o.require(a == 0 && b == 0, "CLI optimize failed");
    o.require(slurp(dir / "a.json") == slurp(dir / "b.json") && !slurp(dir / "a.json").empty(), "CLI reports differ");
    fs::remove_all(dir);
    o.detail = "DXF " + std::to_string(creases) + " creases kept, project identity, seeded CLI reports identical " + o.detail;
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"fold-angle limit and folding ratio", fold_angle_limit},
        {"shape-angle / turn-angle round trip", angle_round_trip},
        {"trajectory sampling", trajectory_sampling},
        {"fitness arithmetic", fitness_arithmetic},
        {"robot-arm task regression", arm_task_regression},
        {"CMA-ES sphere", cma_es_sphere},
        {"3D/planar consistency", planar_consistency},
        {"string folding properties", string_folding},
        {"fabrication meshes", fabrication_meshes},
        {"interchange round trips", interchange_round_trips},
    };
    int failures = 0;
    int index = 1;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("threw: ") + e.what();
        }
        failures += !o.pass;
        std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
