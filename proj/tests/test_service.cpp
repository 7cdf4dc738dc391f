#include "origami/app.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <chrono>
#include <thread>

using namespace origami;
using app::Service;

namespace {

io::json body(const app::Response& r) { return io::json::parse(r.body); }

io::json wait_job(Service& s, const std::string& id) {
    for (int i = 0; i < 6000; ++i) {
        auto j = body(s.handle("GET", "/api/jobs/" + id, ""));
        if (j["status"] != "running") return j;
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    return {};
}

Project designed_arm() {
    Project p = app::template_project("arm");
    app::synthesize(p, 20, 2);
    return p;
}

}  // namespace

TEST(Service, HealthAndUnknownRoutes) {
    Service s;
    auto r = s.handle("GET", "/api/health", "");
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(body(r)["status"], "ok");
    r = s.handle("GET", "/api/nothing", "");
    EXPECT_EQ(r.status, 404);
    EXPECT_EQ(body(r)["error"]["type"], "not_found");
    EXPECT_EQ(s.handle("GET", "/api/jobs/job-99", "").status, 404);
}

TEST(Service, ProjectGetPutRoundTrip) {
    Service s(designed_arm());
    const auto got = s.handle("GET", "/api/project", "");
    EXPECT_EQ(got.body, save_project(designed_arm()));
    Service other;
    EXPECT_EQ(other.handle("PUT", "/api/project", got.body).status, 200);
    EXPECT_EQ(other.handle("GET", "/api/project", "").body, got.body);

    auto bad = other.handle("PUT", "/api/project", "{\"version\": ");
    EXPECT_EQ(bad.status, 400);
    EXPECT_EQ(body(bad)["error"]["type"], "parse");
    bad = other.handle("PUT", "/api/project", "{\"version\": 1, \"design\": {\"lengths\": \"x\"}}");
    EXPECT_EQ(bad.status, 400);
    EXPECT_EQ(body(bad)["error"]["type"], "schema");
    EXPECT_EQ(body(bad)["error"]["path"].get<std::string>().rfind("/design", 0), 0u);
    // A rejected write leaves the stored project untouched.
    EXPECT_EQ(other.handle("GET", "/api/project", "").body, got.body);
}

TEST(Service, FitnessMatchesCliVerb) {
    Service s(designed_arm());
    const auto r = s.handle("POST", "/api/fitness", "{}");
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(body(r), app::evaluate(designed_arm()));
    const auto none = Service().handle("POST", "/api/fitness", "{}");
    EXPECT_EQ(none.status, 400);
    EXPECT_EQ(body(none)["error"]["path"], "/design");
}

TEST(Service, FoldAtZeroIsFlat) {
    Service s(designed_arm());
    const auto r = s.handle("POST", "/api/fold", "{\"theta\": 0}");
    ASSERT_EQ(r.status, 200);
    for (const auto& pl : body(r)["placements"]) {
        EXPECT_EQ(pl["rotation"], io::json::parse("[[1,0,0],[0,1,0],[0,0,1]]"));
        EXPECT_EQ(pl["translation"], io::json::parse("[0,0,0]"));
    }
    const auto deg = s.handle("POST", "/api/fold", "{\"theta_deg\": 90}");
    EXPECT_EQ(body(deg), app::fold(designed_arm(), kPi / 2));
    EXPECT_EQ(s.handle("POST", "/api/fold", "{\"theta\": 4}").status, 422);
    EXPECT_EQ(s.handle("POST", "/api/fold", "[1]").status, 400);
}

TEST(Service, SynthesizeMutatesProject) {
    Service s(app::template_project("arm"));
    EXPECT_FALSE(s.project().pattern.has_value());
    const auto r = s.handle("POST", "/api/synthesize", "{\"unit_width\": 15, \"copies\": 3}");
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(body(r)["panels"], 18);
    ASSERT_TRUE(s.project().pattern.has_value());
    EXPECT_EQ(s.project().pattern->copy_count, 3);
    EXPECT_EQ(s.handle("POST", "/api/synthesize", "{\"copies\": \"many\"}").status, 400);
}

TEST(Service, OptimizeJobReportsProgress) {
    Service s(app::template_project("arm"));
    const auto r = s.handle("POST", "/api/optimize", "{\"runs\": 3, \"max_generations\": 15, \"seed\": 4}");
    ASSERT_EQ(r.status, 202);
    const std::string id = body(r)["job"];
    EXPECT_EQ(id.rfind("job-", 0), 0u);
    const auto done = wait_job(s, id);
    ASSERT_EQ(done["status"], "done");
    EXPECT_EQ(done["progress"], 3);
    EXPECT_EQ(done["total"], 3);

    Project p = app::template_project("arm");
    DesignOptions opt;
    opt.runs = 3;
    opt.max_generations = 15;
    opt.seed = 4;
    EXPECT_EQ(done["result"], io::to_json(app::optimize(p, opt)));
    ASSERT_TRUE(s.project().design && p.design);
    EXPECT_EQ(io::to_json(*s.project().design), io::to_json(*p.design));
    EXPECT_FALSE(s.project().pattern);
}

TEST(Service, SimulateJobAndStep) {
    Service s(app::template_project("miura"));
    const auto r = s.handle("POST", "/api/simulate", "{\"max_states\": 10}");
    ASSERT_EQ(r.status, 202);
    const auto done = wait_job(s, body(r)["job"]);
    ASSERT_EQ(done["status"], "done");
    EXPECT_EQ(done["progress"], 10);
    EXPECT_EQ(done["result"]["states"].size(), 10u);

    const auto step = s.handle("POST", "/api/simulate/step", "{\"index\": 6}");
    ASSERT_EQ(step.status, 200);
    EXPECT_TRUE(body(step)["reached"]);
    EXPECT_EQ(body(step)["state"], done["result"]["states"][6]);

    Service bare(designed_arm());
    const auto failed = wait_job(bare, body(bare.handle("POST", "/api/simulate", "{}"))["job"]);
    EXPECT_EQ(failed["status"], "failed");
    EXPECT_EQ(failed["error"]["type"], "schema");
}

TEST(Service, RoutingAndFabrication) {
    Service s(app::template_project("miura"));
    const auto r = s.handle("POST", "/api/routing/validate", "");
    ASSERT_EQ(r.status, 200);
    EXPECT_TRUE(body(r)["ok"]);
    const auto fab = s.handle("POST", "/api/fabricate", "{}");
    ASSERT_EQ(fab.status, 200);
    EXPECT_NEAR(body(fab)["max_fold_angle_deg"].get<double>(), 146.6015, 1e-4);
    for (const char* part : {"infills", "mid_layers", "shells", "creases"}) {
        const auto stl = s.handle("GET", std::string("/api/export/stl/") + part, "");
        ASSERT_EQ(stl.status, 200);
        EXPECT_EQ(stl.content_type, "model/stl");
        EXPECT_TRUE(testsupport::read_binary_stl(stl.body).closed_and_oriented()) << part;
    }
    EXPECT_EQ(s.handle("GET", "/api/export/stl/hats", "").status, 404);
    EXPECT_EQ(s.handle("GET", "/api/export/svg", "").content_type, "image/svg+xml");
    EXPECT_NE(s.handle("GET", "/api/export/dxf", "").body.find("ENTITIES"), std::string::npos);
    EXPECT_EQ(s.handle("GET", "/api/export/project", "").body, s.handle("GET", "/api/project", "").body);
}

TEST(Service, OverHttpWithConcurrentClients) {
    Service s(designed_arm());
    const int port = s.start_background();
    ASSERT_GT(port, 0);
    const std::string project_text = save_project(designed_arm());
    std::atomic<int> ok{0};
    std::vector<std::thread> clients;
    for (int c = 0; c < 4; ++c) {
        clients.emplace_back([&, c] {
            httplib::Client cli("127.0.0.1", port);
            for (int i = 0; i < 5; ++i) {
                if (c == 0) {
                    auto res = cli.Put("/api/project", project_text, "application/json");
                    if (res && res->status == 200) ++ok;
                } else {
                    auto res = cli.Post("/api/fold", "{\"theta\": 1.0}", "application/json");
                    if (res && res->status == 200 && io::json::parse(res->body)["panels"].size() == 12) ++ok;
                }
            }
        });
    }
    for (auto& t : clients) t.join();
    EXPECT_EQ(ok.load(), 20);
    httplib::Client cli("127.0.0.1", port);
    auto res = cli.Get("/api/health");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    res = cli.Get("/api/missing");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 404);
    s.stop();
}
