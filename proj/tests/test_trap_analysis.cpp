#include <doctest.h>

#include "test_util.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "scmag/errors.hpp"
#include "scmag/field_source.hpp"
#include "scmag/sheet_models.hpp"
#include "scmag/trap_analysis.hpp"

using namespace scmag;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double mu0 = constants::mu0;

TrapScene scene_for(std::shared_ptr<const FieldSource> src, Vec2 bias, bool gravity) {
    TrapScene s;
    s.source = std::move(src);
    s.bias = bias;
    s.gravity = gravity;
    return s;
}
}  // namespace

TEST_CASE("required bias equals the on-axis wire field for thin strips") {
    const double w = 5e-6, I = 0.02;
    auto m = std::make_shared<SheetSource>(meissner_profile(I, w));
    auto n = std::make_shared<SheetSource>(normal_profile(I, w));
    for (double z : {1e-3 * w, 0.76 * w, 10 * w}) {
        CHECK(required_bias(scene_for(m, {}, true), z) == Rel(on_axis_meissner(I, w, z)).epsilon(1e-9));
        CHECK(required_bias(scene_for(n, {}, true), z) == Rel(on_axis_normal(I, w, z)).epsilon(1e-9));
    }
}

TEST_CASE("find_trap lands on the requested height without gravity") {
    const double w = 1e-3, I = 1.0;
    auto src = std::make_shared<SheetSource>(meissner_profile(I, w));
    TrapScene s = scene_for(src, {-2.5 * field_unit(I, w), 0.0}, false);
    TrapReport r = find_trap(s);
    // Zero of mu0 I / (2 pi sqrt(w^2 + z^2)) = 2.5 mu0 I / (2 pi^2 w): z = w sqrt((pi/2.5)^2 - 1)
    const double zt = w * std::sqrt(std::pow(pi / 2.5, 2) - 1);
    CHECK(r.height == Rel(zt).epsilon(1e-6));
    CHECK(std::abs(r.position.x) < 1e-9 * w);
    CHECK(r.fieldAtMin < 1e-8 * 2.5 * field_unit(I, w));
    CHECK(r.biasUsed.x == s.bias.x);
}

TEST_CASE("cylinder: trap height, gradient and depth agree with the line-current picture") {
    const double R = 1e-6, I = 0.01;
    auto src = std::make_shared<CylinderSource>(R, I, WireState::Normal);
    const double zt = 20 * R, r0 = R + zt;
    const double B0 = mu0 * I / (2 * pi * r0);
    TrapScene s = scene_for(src, {-B0, 0.0}, false);
    TrapReport rep = find_trap(s);
    CHECK(rep.height == Rel(zt).epsilon(1e-6));
    // Quadrupole of a line current plus bias: |dB/dz| = |dB/dx| = B0 / r0.
    CHECK(rep.gradientZ == Rel(B0 / r0).epsilon(1e-4));
    CHECK(rep.gradientX == Rel(B0 / r0).epsilon(1e-4));
    // Without gravity the lowest escape is sideways or away, approaching |B| = B0.
    double ceiling = rubidium87_f2_m2().magnetic_moment() * B0 / constants::kB;
    CHECK(rep.depth <= ceiling * (1 + 1e-9));
    CHECK(rep.depth > 0.5 * ceiling);
}

TEST_CASE("superconducting cylinder trap matches the closed-form height") {
    const double R = 1e-6, I = 0.01;
    auto src = std::make_shared<CylinderSource>(R, I, WireState::Superconducting);
    const double B0 = 0.3 * mu0 * I / (2 * pi * R);
    TrapReport rep = find_trap(scene_for(src, {-B0, 0.0}, false));
    CHECK(rep.height == Rel(trap_height_superconducting(I, B0, R)).epsilon(1e-6));
}

TEST_CASE("gravity tilts the trap and can remove it") {
    const double w = 5e-6, I = 0.02;
    auto src = std::make_shared<SheetSource>(meissner_profile(I, w));
    const double B0 = required_bias(scene_for(src, {}, true), w);
    TrapReport off = find_trap(scene_for(src, {-B0, 0.0}, false));
    TrapReport on = find_trap(scene_for(src, {-B0, 0.0}, true));
    // |B| has a cusp at its zero, so a modest gravity does not shift the minimum;
    // it lowers the barrier away from the chip and raises the one toward it.
    CHECK(on.height == Rel(off.height).epsilon(1e-8));
    CHECK(on.depthDetail.barrierAway < off.depthDetail.barrierAway);
    CHECK(on.depthDetail.barrierToward > off.depthDetail.barrierToward);
    CHECK(on.depthDetail.barrierLateral == Rel(off.depthDetail.barrierLateral).epsilon(1e-9));

    // A microamp wire cannot hold Rb against gravity.
    auto weak = std::make_shared<SheetSource>(meissner_profile(1e-7, w));
    const double b = required_bias(scene_for(weak, {}, true), 50 * w);
    CHECK_THROWS_AS(find_trap(scene_for(weak, {-b, 0.0}, true)), NoTrapError);
}

TEST_CASE("bias along +x leaves no minimum") {
    auto src = std::make_shared<SheetSource>(normal_profile(0.02, 5e-6));
    CHECK_THROWS_AS(find_trap(scene_for(src, {1e-3, 0.0}, true)), NoTrapError);
    CHECK_THROWS_AS(required_bias(scene_for(std::make_shared<SheetSource>(normal_profile(-0.02, 5e-6)), {}, true), 1e-6),
                    NoTrapError);
}

TEST_CASE("field_gradient is the norm of the vector derivative") {
    auto src = std::make_shared<CylinderSource>(1.0, 0.0, WireState::Normal);
    TrapScene s = scene_for(src, {0.0, 0.0}, false);
    FieldGradient g = field_gradient(s, {0.0, 3.0}, 1e-3);
    CHECK(g.dx == 0.0);
    CHECK(g.dz == 0.0);
    CHECK_THROWS_AS(field_gradient(s, {0.0, 3.0}, 0.0), InvalidArgument);
}

TEST_CASE("Meissner validity flags critical current and Bc1") {
    const Material& nb = lookup_material("Nb");
    const double w = 5e-6, d = 300e-9;
    auto ok = std::make_shared<SheetSource>(meissner_profile(1e-3, w), d);
    auto verdict = meissner_validity(scene_for(ok, {-1e-4, 0.0}, true), nb);
    CHECK(verdict.valid);
    CHECK(verdict.criticalCurrent == Rel(2 * w * d * nb.jc));

    auto over = std::make_shared<SheetSource>(meissner_profile(2.0, w), d);
    auto bad = meissner_validity(scene_for(over, {-1e-4, 0.0}, true), nb);
    CHECK_FALSE(bad.valid);
    REQUIRE(bad.reasons.size() == 2);
    CHECK(bad.reasons[0] == "critical current exceeded");
    CHECK(bad.maxSurfaceField > nb.Bc1);

    auto unknown = meissner_validity(nb, std::nullopt, 1e-3, std::nullopt);
    CHECK(unknown.valid);
    CHECK(unknown.reasons.size() == 2);
}

TEST_CASE("trap scan: serial and parallel rows agree and failures are recorded") {
    const double w = 5e-6, I = 0.2;
    auto src = std::make_shared<SheetSource>(meissner_profile(I, w), 300e-9);
    TrapScene s = scene_for(src, {}, true);
    std::vector<double> zs{0.1e-6, 1e-6, 10e-6, 100e-6};
    ScanOptions serial, parallel;
    serial.exec = Execution::Serial;
    serial.material = parallel.material = lookup_material("YBCO");
    auto a = scan_trap_parameters(s, zs, serial), b = scan_trap_parameters(s, zs, parallel);
    REQUIRE(a.size() == zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        REQUIRE(a[i].report.has_value());
        REQUIRE(b[i].report.has_value());
        CHECK(a[i].report->height == b[i].report->height);
        CHECK(a[i].report->depth == b[i].report->depth);
        CHECK(a[i].report->valid.has_value());
    }
    CHECK_THROWS_AS(scan_trap_parameters(s, {2e-6, 1e-6}), InvalidArgument);

    // A microamp wire fails at large heights but the scan still returns every row.
    auto weak = std::make_shared<SheetSource>(meissner_profile(1e-6, w));
    auto rows = scan_trap_parameters(scene_for(weak, {}, true), {1e-6, 1e-3});
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[1].report.has_value());
    CHECK_FALSE(rows[1].error.empty());
}
