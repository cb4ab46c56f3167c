#include <doctest.h>

#include "test_util.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "scmag/errors.hpp"
#include "scmag/field_source.hpp"
#include "scmag/physical_core.hpp"
#include "scmag/sheet_models.hpp"

using namespace scmag;
using cd = std::complex<double>;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double mu0 = constants::mu0;

// W = Bz + i Bx is analytic in zeta = x + i z outside the sheet. Closed forms:
// Meissner strip      W = -(mu0 I / 2 pi) / sqrt(zeta^2 - w^2)
// screened Bz bias    W = B0 zeta / sqrt(zeta^2 - w^2)
// uniform current     W = -(mu0 I / 2 pi) log((zeta + w) / (zeta - w)) / 2w
cd root(cd zeta, double w) { return std::sqrt(zeta - w) * std::sqrt(zeta + w); }

Vec2 from_W(cd W) { return {W.imag(), W.real()}; }

Vec2 meissner_exact(double I, double w, Vec2 p) {
    return from_W(-(mu0 * I / (2 * pi)) / root({p.x, p.z}, w));
}
Vec2 screen_exact(double B0, double w, Vec2 p) {
    cd zeta{p.x, p.z};
    return from_W(B0 * zeta / root(zeta, w));
}
Vec2 normal_exact(double I, double w, Vec2 p) {
    cd zeta{p.x, p.z};
    return from_W(-(mu0 * I / (2 * pi)) * std::log((zeta + w) / (zeta - w)) / (2 * w));
}

const std::vector<Vec2> kPoints{{0.0, 1e-3}, {0.0, 0.76}, {0.3, 0.05}, {-0.99, 0.01}, {1.0, 1e-4},
                                {1.2, 0.3},  {-2.0, 1.5}, {0.5, -0.2}, {5.0, 5.0}};
}  // namespace

TEST_CASE("every profile carries its nominal current") {
    const double w = 1e-3;
    for (double I : {1.0, 0.2, -3.0}) {
        CHECK(meissner_profile(I, w).integrated_current() == Rel(I).epsilon(1e-10));
        CHECK(normal_profile(I, w).integrated_current() == Rel(I).epsilon(1e-12));
    }
    CHECK(std::abs(vertical_screen_profile(1e-3, w).integrated_current()) < 1e-12);
    std::vector<double> xs{-w, 0.0, w}, J{500.0, 500.0, 500.0};
    CHECK(tabulated_profile(w, xs, J).integrated_current() == Rel(1.0).epsilon(1e-12));
}

TEST_CASE("Meissner strip field matches the analytic complex potential") {
    const double I = 0.7, w = 1.0;
    auto p = meissner_profile(I, w);
    for (Vec2 q : kPoints) {
        Vec2 B = field_from_profile(p, q).B, E = meissner_exact(I, w, q);
        CAPTURE(q.x);
        CAPTURE(q.z);
        CHECK(norm(B - E) <= 1e-8 * norm(E));
    }
    CHECK(field_from_profile(p, {0.0, 0.4}).B.x == Rel(on_axis_meissner(I, w, 0.4)).epsilon(1e-10));
}

TEST_CASE("normal strip field matches the uniform-current closed form") {
    const double I = 1.3, w = 2.0;
    auto p = normal_profile(I, w);
    for (Vec2 q : kPoints) {
        Vec2 s{2 * q.x, 2 * q.z};
        Vec2 B = field_from_profile(p, s).B, E = normal_exact(I, w, s);
        CHECK(norm(B - E) <= 1e-8 * norm(E));
    }
    CHECK(on_axis_normal(I, w, 0.5) == Rel(mu0 * I / (2 * pi * w) * std::atan(w / 0.5)));
}

TEST_CASE("vertical bias is screened: zero at the strip, B0 far away") {
    const double B0 = 1e-3, w = 1.0;
    SheetSource src(meissner_profile(0.0, w), std::nullopt, true);
    for (Vec2 q : kPoints) {
        Vec2 B = src.field(q, {0.0, B0}), E = screen_exact(B0, w, q);
        CHECK(norm(B - E) <= 1e-8 * norm(E));
    }
    for (double z : {0.01, 0.5, 1.5, 10.0}) {
        Vec2 B = src.field({0.0, z}, {0.0, B0});
        CHECK(B.z == Rel(B0 * z / std::sqrt(z * z + w * w)).epsilon(1e-9));
        CHECK(std::abs(B.x) < 1e-12 * B0);
    }
    // Without screening the bias passes straight through.
    SheetSource open(normal_profile(0.0, w));
    CHECK(open.field({0.0, 0.01}, {0.0, B0}).z == Rel(B0));
}

TEST_CASE("far field approaches a line current") {
    for (auto p : {meissner_profile(1.0, 1.0), normal_profile(1.0, 1.0)}) {
        Vec2 B = field_from_profile(p, {300.0, 400.0}).B;
        double line = mu0 / (2 * pi * 500.0);
        CHECK(norm(B) == Rel(line).epsilon(1e-5));
    }
}

TEST_CASE("tabulated profile reproduces the analytic normal-strip field") {
    const double w = 1.0;
    std::vector<double> xs, J;
    for (int i = 0; i <= 20; ++i) {
        xs.push_back(-w + 2 * w * i / 20.0);
        J.push_back(0.5);
    }
    auto p = tabulated_profile(w, xs, J);
    Vec2 q{0.2, 0.3};
    CHECK(norm(field_from_profile(p, q).B - normal_exact(1.0, w, q)) < 1e-9 * norm(normal_exact(1.0, w, q)));
    CHECK_THROWS_AS(tabulated_profile(w, {0.0, -0.5}, {1.0, 1.0}), InvalidArgument);
}

TEST_CASE("observation points on the sheet are rejected") {
    auto p = meissner_profile(1.0, 1.0);
    CHECK_THROWS_AS(field_from_profile(p, {0.2, 0.0}), InvalidArgument);
    CHECK_NOTHROW(field_from_profile(p, {1.5, 0.0}));
    CHECK_THROWS_AS(meissner_profile(1.0, -1.0), InvalidArgument);
}

TEST_CASE("field map: serial and parallel execution agree bit for bit") {
    SheetSource src(meissner_profile(1.0, 1e-3));
    Grid g{-3e-3, 3e-3, 31, 1e-5, 3e-3, 21};
    auto a = field_map(src, {-1e-4, 0.0}, g, Execution::Serial);
    auto b = field_map(src, {-1e-4, 0.0}, g, Execution::Parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].B.x == b[i].B.x);
        CHECK(a[i].B.z == b[i].B.z);
    }
    CHECK_THROWS_AS((Grid{0, 1, 1, 0, 1, 2}.validate()), InvalidArgument);
}
