#include "origami/errors.hpp"
#include "origami/mesh.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace origami;

TEST(Box, IsClosedWithPositiveVolume) {
    const auto box = make_box(Vec3(0, 0, 0), Vec3(2, 3, 4));
    const auto r = mesh_diagnostics(box);
    EXPECT_TRUE(r.watertight);
    EXPECT_FALSE(r.inverted);
    EXPECT_EQ(box.triangles.size(), 12u);
    EXPECT_NEAR(r.signed_volume, 24.0, 1e-12);
    EXPECT_EQ(r.bbox_max, Vec3(2, 3, 4));
}

TEST(Diagnostics, FindsHolesAndFlips) {
    auto box = make_box(Vec3::Zero(), Vec3::Ones());
    auto open = box;
    open.triangles.pop_back();
    auto r = mesh_diagnostics(open);
    EXPECT_FALSE(r.watertight);
    EXPECT_EQ(r.boundary_edges, 3u);

    auto flipped = box;
    for (auto& t : flipped.triangles) std::swap(t[1], t[2]);
    r = mesh_diagnostics(flipped);
    EXPECT_TRUE(r.inverted);
    EXPECT_LT(r.signed_volume, 0.0);

    auto one_flipped = box;
    std::swap(one_flipped.triangles[0][1], one_flipped.triangles[0][2]);
    EXPECT_GT(mesh_diagnostics(one_flipped).inconsistent_edges, 0u);

    auto doubled = box;
    doubled.triangles.push_back(box.triangles[0]);
    EXPECT_GT(mesh_diagnostics(doubled).non_manifold_edges, 0u);
}

TEST(Extrude, ConvexPrismVolume) {
    const std::vector<Vec2> hex = circle_polygon(Vec2(1, 2), 3.0, 6);
    const auto m = extrude_convex(hex, 0.5, 2.0);
    const auto r = mesh_diagnostics(m);
    EXPECT_TRUE(r.watertight);
    EXPECT_NEAR(r.signed_volume, testsupport::shoelace(hex) * 1.5, 1e-9);
    EXPECT_NEAR(testsupport::shoelace(hex), 1.5 * std::sqrt(3.0) * 9.0, 1e-9);
}

TEST(Extrude, RingAroundHole) {
    const std::vector<Vec2> outer{{0, 0}, {10, 0}, {12, 6}, {2, 6}};
    const auto hole = circle_polygon(Vec2(6, 3), 1.5, 48);
    const auto m = extrude_ring(outer, hole, Vec2(6, 3), 0.0, 0.9);
    const auto r = mesh_diagnostics(m);
    EXPECT_TRUE(r.watertight);
    EXPECT_FALSE(r.inverted);
    EXPECT_NEAR(r.signed_volume, (60.0 - testsupport::shoelace(hole)) * 0.9, 1e-9);
}

TEST(Extrude, RingBetweenNestedPolygons) {
    const std::vector<Vec2> outer{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    const std::vector<Vec2> inner{{2, 2}, {8, 2}, {8, 8}, {2, 8}};
    const auto m = extrude_ring(outer, inner, Vec2(5, 5), 1.0, 2.0);
    EXPECT_TRUE(mesh_diagnostics(m).watertight);
    EXPECT_NEAR(mesh_diagnostics(m).signed_volume, 64.0, 1e-9);
}

TEST(Stl, CubeIs684BytesAndReadsBack) {
    const auto cube = make_box(Vec3::Zero(), Vec3(1, 1, 1));
    const std::string bytes = write_stl(cube, "cube");
    ASSERT_EQ(bytes.size(), 684u);
    const auto f = testsupport::read_binary_stl(bytes);
    EXPECT_EQ(f.header.substr(0, 4), "cube");
    EXPECT_EQ(f.triangles.size(), 12u);
    EXPECT_TRUE(f.closed_and_oriented());
    EXPECT_NEAR(f.volume(), 1.0, 1e-6);
    for (std::size_t i = 0; i < f.normals.size(); ++i) {
        const auto& n = f.normals[i];
        const Vec3 expect = cube.triangle_normal(i);
        EXPECT_NEAR(n[0], expect.x(), 1e-6);
        EXPECT_NEAR(n[1], expect.y(), 1e-6);
        EXPECT_NEAR(n[2], expect.z(), 1e-6);
    }
}

TEST(Stl, LittleEndianCountAtOffset80) {
    TriangleMesh m;
    for (int i = 0; i < 300; ++i) m.append(make_box(Vec3(i, 0, 0), Vec3(i + 0.5, 1, 1)));
    const std::string bytes = write_stl(m);
    EXPECT_EQ(static_cast<unsigned char>(bytes[80]), 3600 % 256);
    EXPECT_EQ(static_cast<unsigned char>(bytes[81]), 3600 / 256);
    EXPECT_EQ(bytes[82], 0);
    EXPECT_EQ(bytes.size(), 84u + 50u * 3600u);
}

TEST(Stl, UnwritablePathThrows) {
    EXPECT_THROW(write_stl_file(make_box(Vec3::Zero(), Vec3::Ones()), "/nonexistent-dir/x.stl"), IoError);
}
