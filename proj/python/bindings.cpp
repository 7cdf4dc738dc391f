#include "origami/app.hpp"
#include "origami/errors.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace origami;

namespace {

EntryFlag flag_from(const std::string& s) {
    if (s == "M" || s == "mountain") return EntryFlag::Mountain;
    if (s == "V" || s == "valley") return EntryFlag::Valley;
    throw DomainError("entry flag must be 'M' or 'V', got '" + s + "'");
}

// Documents cross the boundary as JSON text; the Python wrapper turns them into dicts.
Project project_from(const std::string& text) { return load_project(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Transition-graph origami design, folding and fabrication";

    static py::exception<Error> error(m, "OrigamiError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), app::error_json(e).dump()).ptr());
        }
    });

    m.def("initial_alpha", &initial_alpha, py::arg("theta"));
    m.def("transition_delta",
          [](double beta, double theta, const std::string& flag) { return transition_delta(beta, theta, flag_from(flag)); },
          py::arg("beta"), py::arg("theta"), py::arg("prev_flag"));
    m.def("shape_angle",
          [](double delta, double p, const std::string& flag) { return shape_angle(delta, p, flag_from(flag)); },
          py::arg("delta_alpha"), py::arg("p"), py::arg("prev_flag"));
    m.def("max_fold_angle",
          [](double b, double h, double t) {
              FabricationParams params{.inner_bias = b, .panel_height = h, .membrane_thickness = t};
              params.validate();
              return max_fold_angle(params);
          },
          py::arg("inner_bias"), py::arg("panel_height"), py::arg("membrane_thickness"));
    m.def("fitness_formula", &fitness_formula, py::arg("reward_weight"), py::arg("start_distance"),
          py::arg("end_distance"), py::arg("improper_count"));

    m.def("template_project", [](const std::string& name) { return save_project(app::template_project(name)); },
          py::arg("name"));
    m.def("normalize_project", [](const std::string& text) { return save_project(project_from(text)); },
          py::arg("project"));
    m.def("evaluate", [](const std::string& text) { return app::evaluate(project_from(text)).dump(); },
          py::arg("project"));
    m.def("fold", [](const std::string& text, double theta) { return app::fold(project_from(text), theta).dump(); },
          py::arg("project"), py::arg("theta"));
    m.def("check_routing", [](const std::string& text) { return app::check_routing(project_from(text)).dump(); },
          py::arg("project"));
    m.def("synthesize",
          [](const std::string& text, double unit_width, int copies) {
              Project p = project_from(text);
              const auto report = app::synthesize(p, unit_width, copies);
              return py::make_tuple(save_project(p), report.dump());
          },
          py::arg("project"), py::arg("unit_width"), py::arg("copies"));
    m.def("optimize",
          [](const std::string& text, std::size_t runs, std::size_t generations, std::uint64_t seed) {
              Project p = project_from(text);
              DesignOptions opt;
              opt.runs = runs;
              opt.seed = seed;
              opt.max_generations = generations;
              DesignArmResult result;
              {
                  py::gil_scoped_release release;
                  result = app::optimize(p, opt);
              }
              return py::make_tuple(save_project(p), io::to_json(result).dump());
          },
          py::arg("project"), py::arg("runs") = 10, py::arg("generations") = 300, py::arg("seed") = 0);
    m.def("simulate",
          [](const std::string& text, std::size_t max_states) {
              const Project p = project_from(text);
              app::SimulationRequest request;
              request.max_states = max_states;
              SimulationResult result;
              {
                  py::gil_scoped_release release;
                  result = app::simulate(p, request);
              }
              return io::to_json(result).dump();
          },
          py::arg("project"), py::arg("max_states") = 0);
    m.def("run_cli",
          [](std::vector<std::string> args) {
              args.insert(args.begin(), "origami");
              std::ostringstream out, err;
              int code = 0;
              {
                  py::gil_scoped_release release;
                  code = app::run_cli(args, out, err);
              }
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"));
}
