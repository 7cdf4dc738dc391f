#include "origami/app.hpp"

#include "origami/dxf.hpp"
#include "origami/errors.hpp"
#include "origami/svg.hpp"

#include <httplib.h>

namespace origami::app {

struct Service::Server {
    httplib::Server http;
};

namespace {

Response json_response(const io::json& j, int status = 200) { return {status, j.dump(), "application/json"}; }

Response error_response(const std::exception& e) {
    int status = 422;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const SchemaError*>(&e)) status = 400;
    return json_response({{"error", error_json(e)}}, status);
}

Response not_found(const std::string& what) {
    return json_response({{"error", {{"type", "not_found"}, {"message", what}}}}, 404);
}

template <typename T>
T value_or(const io::json& body, const char* key, T fallback) {
    auto it = body.find(key);
    if (it == body.end() || it->is_null()) return fallback;
    try {
        return it->get<T>();
    } catch (const io::json::exception&) {
        throw SchemaError(std::string("/") + key, "wrong type");
    }
}

}  // namespace

Service::Service(Project project) : project_(std::move(project)), server_(std::make_unique<Server>()) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        const Response r = handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    server_->http.Get(R"(/.*)", handler);
    server_->http.Post(R"(/.*)", handler);
    server_->http.Put(R"(/.*)", handler);
}

Service::~Service() {
    stop();
    for (auto& w : workers_)
        if (w.joinable()) w.join();
}

bool Service::listen(const std::string& host, int port) { return server_->http.listen(host, port); }

int Service::start_background(const std::string& host) {
    const int port = server_->http.bind_to_any_port(host);
    if (port <= 0) throw IoError("cannot bind a port on " + host);
    server_thread_ = std::thread([this] { server_->http.listen_after_bind(); });
    server_->http.wait_until_ready();
    return port;
}

void Service::stop() {
    server_->http.stop();
    if (server_thread_.joinable()) server_thread_.join();
}

Project Service::project() const {
    std::shared_lock lock(project_mutex_);
    return project_;
}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) {
    try {
        if (method == "PUT" && path == "/api/project") {
            Project p = load_project(body);
            check_references(p);
            std::unique_lock lock(project_mutex_);
            project_ = std::move(p);
            return json_response({{"ok", true}});
        }
        io::json parsed = io::json::object();
        if (!body.empty()) {
            try {
                parsed = io::json::parse(body);
            } catch (const io::json::parse_error& e) {
                throw ParseError(std::string("malformed request body: ") + e.what(), e.byte);
            }
            if (!parsed.is_object()) throw SchemaError("", "request body must be an object");
        }
        return route(method, path, parsed);
    } catch (const std::exception& e) {
        return error_response(e);
    }
}

std::shared_ptr<Service::Job> Service::start_job(const std::string& kind, std::size_t total,
                                                 std::function<io::json(Job&)> work) {
    auto job = std::make_shared<Job>();
    job->kind = kind;
    job->total = total;
    {
        std::lock_guard lock(jobs_mutex_);
        job->id = "job-" + std::to_string(next_job_++);
        jobs_[job->id] = job;
        workers_.emplace_back([job, work = std::move(work)] {
            io::json result, error;
            try {
                result = work(*job);
            } catch (const std::exception& e) {
                error = error_json(e);
            }
            std::lock_guard jl(job->mutex);
            if (error.is_null()) {
                job->status = "done";
                job->result = std::move(result);
            } else {
                job->status = "failed";
                job->error = std::move(error);
            }
        });
    }
    return job;
}

Response Service::job_status(const std::string& id) const {
    std::shared_ptr<Job> job;
    {
        std::lock_guard lock(jobs_mutex_);
        auto it = jobs_.find(id);
        if (it == jobs_.end()) return not_found("no job " + id);
        job = it->second;
    }
    std::lock_guard jl(job->mutex);
    io::json j = {{"id", job->id},
                  {"kind", job->kind},
                  {"status", job->status},
                  {"progress", job->progress.load()},
                  {"total", job->total}};
    if (job->status == "done") j["result"] = job->result;
    if (job->status == "failed") j["error"] = job->error;
    return json_response(j);
}

Response Service::route(const std::string& method, const std::string& path, const io::json& body) {
    auto snapshot = [this] {
        std::shared_lock lock(project_mutex_);
        return project_;
    };

    if (method == "GET" && path == "/api/health") return json_response({{"status", "ok"}});
    if (method == "GET" && path == "/api/project") {
        const Project p = snapshot();
        return {200, save_project(p), "application/json"};
    }
    if (method == "GET" && path.rfind("/api/jobs/", 0) == 0) return job_status(path.substr(10));

    if (method == "POST" && path == "/api/synthesize") {
        const double width = value_or(body, "unit_width", 20.0);
        const int copies = value_or(body, "copies", 2);
        std::unique_lock lock(project_mutex_);
        Project draft = project_;
        if (body.contains("design")) draft.design = io::design_from(body["design"], "/design");
        io::json result = synthesize(draft, width, copies);
        project_ = std::move(draft);
        return json_response(result);
    }
    if (method == "POST" && path == "/api/fitness") {
        Project p = snapshot();
        if (body.contains("design")) p.design = io::design_from(body["design"], "/design");
        if (body.contains("task")) p.task = io::task_from(body["task"], "/task");
        if (body.contains("reward_weight")) {
            if (!p.task) throw SchemaError("/task", "project has no task section");
            p.task->reward_weight = value_or(body, "reward_weight", p.task->reward_weight);
        }
        return json_response(evaluate(p));
    }
    if (method == "POST" && path == "/api/fold") {
        const Project p = snapshot();
        double theta = value_or(body, "theta", 0.0);
        if (body.contains("theta_deg")) theta = deg_to_rad(value_or(body, "theta_deg", 0.0));
        return json_response(fold(p, theta));
    }
    if (method == "POST" && path == "/api/routing/validate") return json_response(check_routing(snapshot()));
    if (method == "POST" && path == "/api/fabricate") {
        const auto fab = fabricate(snapshot(), value_or(body, "auto_holes", false));
        return json_response(fab.report);
    }
    if (method == "POST" && path == "/api/optimize") {
        Project p = snapshot();
        if (!p.task) throw SchemaError("/task", "project has no task section");
        DesignOptions options;
        options.runs = value_or<std::size_t>(body, "runs", 10);
        options.seed = value_or<std::uint64_t>(body, "seed", 0);
        options.max_generations = value_or<std::size_t>(body, "max_generations", options.max_generations);
        options.max_evaluations = value_or<std::size_t>(body, "max_evaluations", options.max_evaluations);
        options.threads = value_or<std::size_t>(body, "threads", 0);
        auto job = start_job("optimize", options.runs, [this, p, options](Job& j) mutable {
            options.on_run_done = [&j](std::size_t) { ++j.progress; };
            const auto result = optimize(p, options);
            if (!result.ranking.empty()) {
                std::unique_lock lock(project_mutex_);
                project_.design = p.design;
                project_.pattern.reset();
            }
            return io::to_json(result);
        });
        return json_response({{"job", job->id}}, 202);
    }
    if (method == "POST" && (path == "/api/simulate" || path == "/api/simulate/step")) {
        const Project p = snapshot();
        SimulationRequest req;
        req.twist_max = value_or(body, "twist_max", req.twist_max);
        req.twist_step = value_or(body, "twist_step", req.twist_step);
        req.max_states = value_or<std::size_t>(body, "max_states", 0);
        req.pose_mode = value_or(body, "free_pose", false) ? PoseMode::Free : PoseMode::Pinned;
        if (path == "/api/simulate/step") {
            const auto index = value_or<std::size_t>(body, "index", 0);
            req.max_states = index + 1;
            const auto res = simulate(p, req);
            io::json all = io::to_json(res);
            io::json out = {{"requested_index", index},
                            {"reached", !res.states.empty() && res.states.back().index == index},
                            {"state", all["states"].back()},
                            {"stop_reason", res.stop_reason}};
            return json_response(out);
        }
        std::size_t total = static_cast<std::size_t>(std::floor(req.twist_max / req.twist_step + 1e-9)) + 1;
        if (req.max_states) total = std::min(total, req.max_states);
        auto job = start_job("simulate", total, [p, req](Job& j) mutable {
            req.on_state = [&j](std::size_t) { ++j.progress; };
            return io::to_json(simulate(p, req));
        });
        return json_response({{"job", job->id}}, 202);
    }
    if (method == "GET" && path.rfind("/api/export/", 0) == 0) {
        const Project p = snapshot();
        const std::string what = path.substr(12);
        if (what == "project") return {200, save_project(p), "application/json"};
        if (!p.pattern) throw SchemaError("/pattern", "project has no pattern section");
        if (what == "svg") return {200, export_svg(*p.pattern), "image/svg+xml"};
        if (what == "dxf") return {200, export_dxf(*p.pattern), "application/dxf"};
        if (what.rfind("stl/", 0) == 0) {
            const std::string part = what.substr(4);
            const auto fab = fabricate(p, false);
            const TriangleMesh* mesh = part == "infills"      ? &fab.model.infills
                                       : part == "mid_layers" ? &fab.model.mid_layers
                                       : part == "shells"     ? &fab.model.shells
                                       : part == "creases"    ? &fab.model.creases
                                                              : nullptr;
            if (!mesh) return not_found("no mesh part " + part);
            return {200, write_stl(*mesh), "model/stl"};
        }
        return not_found("no export " + what);
    }
    return not_found("no route " + method + " " + path);
}

}  // namespace origami::app
