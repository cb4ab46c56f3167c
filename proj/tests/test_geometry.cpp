#include <doctest.h>

#include "test_util.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "scmag/errors.hpp"
#include "scmag/geometry.hpp"

using namespace scmag;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("strip geometry validation") {
    CHECK_THROWS_AS((StripGeometry{0.0, 1.0, 0.1}.validate()), InvalidGeometry);
    CHECK_THROWS_AS((StripGeometry{1.0, 0.1, 0.06}.validate()), InvalidGeometry);
    CHECK_NOTHROW((StripGeometry{1.0, 0.1, 0.05}.validate()));
    CHECK(StripGeometry::with_default_rounding(1.0, 0.08).cornerRadius == Rel(1.0 / 32));
    CHECK_THROWS_AS(mesh_rounded_rectangle({1.0, 0.1, 0.0}, 64), InvalidGeometry);
    CHECK_THROWS_AS(mesh_rounded_rectangle({1.0, 0.1, 0.02}, 16), InvalidGeometry);
    CHECK_THROWS_AS(mesh_circle({-1.0}, 64), InvalidGeometry);
}

TEST_CASE("rounded rectangle mesh: perimeter, enclosed area, outward normals") {
    const double w = 1.0, d = 0.08, r = 0.031;
    SurfaceMesh m = mesh_rounded_rectangle({w, d, r}, 420);
    CHECK(m.size() == 420);
    const double P = 4 * w + 2 * d - (8 - 2 * pi) * r;
    CHECK(m.perimeter() == Rel(P).epsilon(1e-12));

    // Area by the divergence theorem on the true boundary (arcs integrated exactly
    // by sampling each panel finely).
    double area = 0.0;
    for (const auto& p : m) {
        const int k = 50;
        for (int i = 0; i < k; ++i) {
            double s = -0.5 * p.length + (i + 0.5) * p.length / k;
            Vec2 n;
            Vec2 q = p.point_at(s, &n);
            area += 0.5 * dot(q, n) * p.length / k;
        }
    }
    const double exact = 2 * w * d - (4 - pi) * r * r;
    CHECK(area == Rel(exact).epsilon(1e-6));

    for (const auto& p : m) {
        CHECK(norm(p.normal) == Rel(1.0));
        CHECK(dot(p.normal, p.tangent) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK_FALSE(m.contains(p.midpoint + 1e-4 * p.normal));
        CHECK(m.contains(p.midpoint - 1e-4 * p.normal));
    }
}

TEST_CASE("rounded rectangle mesh is mirror symmetric about x = 0") {
    SurfaceMesh m = mesh_rounded_rectangle({1.0, 0.08, 0.031}, 420);
    for (const auto& p : m) {
        Vec2 mirror{-p.midpoint.x, p.midpoint.z};
        bool found = false;
        for (const auto& q : m)
            if (norm(q.midpoint - mirror) < 1e-12 && std::abs(q.length - p.length) < 1e-12) found = true;
        CHECK(found);
    }
}

TEST_CASE("distance to the surface and containment") {
    SurfaceMesh m = mesh_rounded_rectangle({1.0, 0.2, 0.05}, 128);
    // Top face at z = 0, bottom at z = -0.2.
    CHECK(m.distance_to_surface({0.0, 0.5}) == Rel(0.5).epsilon(1e-12));
    CHECK(m.distance_to_surface({1.5, -0.1}) == Rel(0.5).epsilon(1e-12));
    // Diagonal off a rounded corner: centre at (0.95, -0.05).
    Vec2 c{0.95, -0.05};
    Vec2 q = c + 0.3 * Vec2{std::sqrt(0.5), std::sqrt(0.5)};
    CHECK(m.distance_to_surface(q) == Rel(0.25).epsilon(1e-12));
    CHECK(m.contains({0.0, -0.1}));
    CHECK_FALSE(m.contains({0.0, 0.1}));
    CHECK_FALSE(m.contains({0.0, -0.3}));
}

TEST_CASE("circle mesh") {
    SurfaceMesh m = mesh_circle({2.0}, 64);
    CHECK(m.perimeter() == Rel(4 * pi).epsilon(1e-12));
    CHECK(std::atan2(m[0].midpoint.z, m[0].midpoint.x) == Rel(pi / 64));
    for (const auto& p : m) {
        CHECK(norm(p.midpoint) == Rel(2.0));
        CHECK(p.curvatureRadius == Rel(2.0));
    }
    CHECK(m.distance_to_surface({0.0, 5.0}) == Rel(3.0).epsilon(1e-12));
}

TEST_CASE("mesh CSV dump has a units line and one row per panel") {
    SurfaceMesh m = mesh_circle({1.0}, 16);
    std::ostringstream os;
    m.write_csv(os);
    std::string s = os.str();
    CHECK(s.rfind("# units:", 0) == 0);
    CHECK(s.find("x,z,nx,nz,da,curvature") != std::string::npos);
    CHECK(std::count(s.begin(), s.end(), '\n') == 18);
}
