#pragma once

#include "origami/project.hpp"

#include <atomic>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

namespace origami::app {

// Verbs shared by the command line and the service so both produce the same results.

/// Pattern from the project's design; stores it in the project.
io::json synthesize(Project& project, double unit_width, int copies);
io::json evaluate(const Project& project);
/// Multi-run design search on the project's task; stores the best ranked design.
DesignArmResult optimize(Project& project, const DesignOptions& options);
io::json fold(const Project& project, double theta);
io::json check_routing(const Project& project);

struct SimulationRequest {
    double twist_max = 20.0 * kPi;
    double twist_step = kPi / 36.0;
    std::size_t max_states = 0;  // 0: whole schedule
    PoseMode pose_mode = PoseMode::Pinned;
    std::function<void(std::size_t)> on_state;
};

SimulationResult simulate(const Project& project, const SimulationRequest& request);

struct Fabrication {
    FabricationModel model;
    io::json report;
};

/// Uses the project's holes, or one hole per panel centre when `auto_holes` is set.
Fabrication fabricate(const Project& project, bool auto_holes);

/// {"type", "message"} plus "path" for schema errors and "offset" for parse errors.
io::json error_json(const std::exception& e);

/// Starter projects: "empty", "arm" (design task) or "miura" (folding scenario).
Project template_project(const std::string& name);

/// Exit codes: 0 success, 1 validation failure, 2 I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// Local HTTP service over one project. Reads run concurrently, writes are serialized, and
/// optimize/simulate run as background jobs polled through /api/jobs/<id>.
class Service {
public:
    explicit Service(Project project = {});
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    Response handle(const std::string& method, const std::string& path, const std::string& body);

    /// Blocks until stop(). Returns false when the socket cannot be bound.
    bool listen(const std::string& host, int port);
    /// Binds an ephemeral port and serves on a background thread; returns the port.
    int start_background(const std::string& host = "127.0.0.1");
    void stop();

    Project project() const;

private:
    struct Job {
        std::string id;
        std::string kind;
        std::atomic<std::size_t> progress{0};
        std::size_t total = 0;
        mutable std::mutex mutex;
        std::string status = "running";
        io::json result;
        io::json error;
    };

    Response route(const std::string& method, const std::string& path, const io::json& body);
    Response job_status(const std::string& id) const;
    std::shared_ptr<Job> start_job(const std::string& kind, std::size_t total,
                                   std::function<io::json(Job&)> work);

    mutable std::shared_mutex project_mutex_;
    Project project_;
    mutable std::mutex jobs_mutex_;
    std::map<std::string, std::shared_ptr<Job>> jobs_;
    std::vector<std::thread> workers_;
    std::size_t next_job_ = 1;
    struct Server;
    std::unique_ptr<Server> server_;
    std::thread server_thread_;
};

}  // namespace origami::app
