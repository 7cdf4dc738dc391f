#include "origami/errors.hpp"
#include "origami/fold_kinematics.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace origami;

namespace {

double folded_area(const FoldedGeometry& g) {
    double area = 0.0;
    for (PanelId p = 0; p < g.pattern.panels.size(); ++p) {
        const auto& cyc = g.pattern.panels[p];
        const Vec3 o = g.vertex_position(p, cyc[0]);
        for (std::size_t k = 1; k + 1 < cyc.size(); ++k)
            area += 0.5 * (g.vertex_position(p, cyc[k]) - o).cross(g.vertex_position(p, cyc[k + 1]) - o).norm();
    }
    return area;
}

}  // namespace

TEST(EmbedFold, FlatStateIsIdentity) {
    const auto cp = synthesize_pattern(testsupport::miura_design(3, 20, 70), 15, 2);
    const auto g = embed_fold(cp, 0.0);
    for (PanelId p = 0; p < cp.panels.size(); ++p)
        for (VertexId v : cp.panels[p]) {
            const Vec3 x = g.vertex_position(p, v);
            EXPECT_NEAR((x.head<2>() - cp.vertices[v]).norm(), 0.0, 1e-12);
            EXPECT_NEAR(x.z(), 0.0, 1e-12);
        }
}

TEST(EmbedFold, ProjectionMatchesPlanarModel) {
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        auto d = testsupport::random_design(rng, 2 + trial % 5);
        const auto cp = synthesize_pattern(d, 10, 2);
        for (double theta : {0.3, 0.9, 1.5, 2.2, 2.9}) {
            const auto g = embed_fold(cp, theta);
            const auto line = projected_design_line(g);
            const auto pts = fold_state(d, theta).polyline();
            ASSERT_EQ(line.size(), pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, (line[i] - pts[i]).norm());
            EXPECT_LT(g.max_closure_residual, 1e-9);
        }
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(EmbedFold, PreservesPanelShapesAndArea) {
    std::mt19937_64 rng(32);
    const auto d = testsupport::random_design(rng, 5);
    const auto cp = synthesize_pattern(d, 10, 3);
    const double flat = cp.panel_area_sum();
    for (double theta : {0.5, 1.7, 3.0}) {
        const auto g = embed_fold(cp, theta);
        EXPECT_NEAR(folded_area(g), flat, 1e-6 * flat);
        for (PanelId p = 0; p < cp.panels.size(); ++p) {
            const auto& cyc = cp.panels[p];
            for (std::size_t a = 0; a < cyc.size(); ++a)
                for (std::size_t b = a + 1; b < cyc.size(); ++b)
                    EXPECT_NEAR((g.vertex_position(p, cyc[a]) - g.vertex_position(p, cyc[b])).norm(),
                                (cp.vertices[cyc[a]] - cp.vertices[cyc[b]]).norm(), 1e-9);
        }
    }
}

TEST(EmbedFold, SharedVerticesCoincide) {
    const auto cp = synthesize_pattern(testsupport::miura_design(4, 25, 65), 12, 3);
    const auto g = embed_fold(cp, 2.0);
    for (VertexId v = 0; v < cp.vertices.size(); ++v) {
        std::vector<Vec3> seen;
        for (PanelId p = 0; p < cp.panels.size(); ++p)
            if (std::find(cp.panels[p].begin(), cp.panels[p].end(), v) != cp.panels[p].end())
                seen.push_back(g.vertex_position(p, v));
        for (const auto& x : seen) EXPECT_LT((x - seen.front()).norm(), 1e-9);
    }
}

TEST(EmbedFold, MainCreasesFoldByTheta) {
    const auto cp = synthesize_pattern(testsupport::miura_design(3, 20, 70), 15, 3);
    const double theta = 1.1;
    const auto g = embed_fold(cp, theta);
    for (std::size_t i = 0; i < cp.creases.size(); ++i) {
        const auto& c = cp.creases[i];
        if (c.kind == CreaseKind::Border) continue;
        if (c.group == FoldGroup::Main) {
            EXPECT_NEAR(std::abs(g.fold_angles[i]), theta, 1e-12);
        }
        EXPECT_EQ(g.fold_angles[i] > 0.0, c.kind == CreaseKind::Valley);
    }
    EXPECT_NEAR(closure_residual(cp, g.fold_angles), g.max_closure_residual, 1e-15);
}

TEST(EmbedFold, ContinuousInTheta) {
    std::mt19937_64 rng(33);
    const auto cp = synthesize_pattern(testsupport::random_design(rng, 4), 10, 2);
    for (double theta : {0.2, 1.0, 2.0, 2.8}) {
        const auto a = embed_fold(cp, theta);
        const auto b = embed_fold(cp, theta + 1e-6);
        double worst = 0.0;
        for (PanelId p = 0; p < cp.panels.size(); ++p)
            for (VertexId v : cp.panels[p]) worst = std::max(worst, (a.vertex_position(p, v) - b.vertex_position(p, v)).norm());
        EXPECT_LT(worst, 1e-3);
    }
}

TEST(EmbedFold, RejectsNonFlatFoldableVertex) {
    auto cp = synthesize_pattern(testsupport::miura_design(3, 20, 70), 15, 3);
    // Nudging one interior vertex breaks the alternating-angle condition there.
    const auto report = validate_pattern(cp);
    ASSERT_FALSE(report.vertices.empty());
    cp.vertices[report.vertices.front().vertex] += Vec2(2.0, 0.5);
    EXPECT_THROW(embed_fold(cp, 1.0), KinematicError);
}

TEST(EmbedFold, DomainChecks) {
    const auto cp = synthesize_pattern(testsupport::miura_design(2, 20, 70), 15, 2);
    EXPECT_THROW(embed_fold(cp, kPi), DomainError);
    EXPECT_THROW(embed_fold(cp, -0.1), DomainError);
    EXPECT_THROW(embed_fold(CreasePattern{}, 0.5), DomainError);
}

TEST(LocatePoints, FollowsPanelsAndChecksReferences) {
    const auto cp = synthesize_pattern(testsupport::miura_design(3, 20, 70), 15, 2);
    const auto g = embed_fold(cp, 1.3);
    // Panel 1 sits between two zigzags, so it is a parallelogram whose centroid is its vertex mean.
    const auto c = panel_center(cp, 1);
    const auto pts = locate_points(g, {c});
    Vec3 mean = Vec3::Zero();
    for (VertexId v : cp.panels[1]) mean += g.vertex_position(1, v);
    mean /= static_cast<double>(cp.panels[1].size());
    EXPECT_LT((pts[0] - mean).norm(), 1e-9);
    EXPECT_THROW(locate_points(g, {AnchoredPoint{99, Vec2::Zero()}}), ReferenceError);
}
