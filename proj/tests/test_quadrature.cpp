#include <doctest.h>

#include "test_util.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "scmag/errors.hpp"
#include "scmag/quadrature.hpp"

using namespace scmag;

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1 exactly") {
    for (std::size_t n = 2; n <= 16; ++n) {
        GaussRule g = gauss_legendre(n);
        REQUIRE(g.nodes.size() == n);
        for (std::size_t p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], static_cast<double>(p));
            double exact = p % 2 ? 0.0 : 2.0 / static_cast<double>(p + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));  // O(1) moments: absolute slack is fine
        }
    }
    CHECK_THROWS_AS(gauss_legendre(1), InvalidArgument);
    CHECK_THROWS_AS(gauss_legendre(17), InvalidArgument);
}

TEST_CASE("smooth and vector integrands") {
    auto r = integrate([](double x) { return Vec2{std::sin(x), std::cos(x) * std::cos(x)}; }, 0.0, std::numbers::pi);
    CHECK(r.value.x == Rel(2.0).epsilon(1e-12));
    CHECK(r.value.z == Rel(std::numbers::pi / 2).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity converges") {
    double v = integrate_scalar([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {}, {1e-10, 5000});
    CHECK(v == Rel(2.0).epsilon(1e-8));
    double l = integrate_scalar([](double x) { return std::log(x); }, 0.0, 1.0);
    CHECK(l == Rel(-1.0).epsilon(1e-8));
}

TEST_CASE("breakpoints at kinks keep the rule on smooth pieces") {
    std::vector<double> bp{0.3};
    auto r = integrate([](double x) { return Vec2{std::abs(x - 0.3), 0.0}; }, 0.0, 1.0, bp);
    CHECK(r.value.x == Rel(0.5 * (0.09 + 0.49)).epsilon(1e-14));
    CHECK(r.intervals <= 4);
}

TEST_CASE("cancelling integrals converge to ~0 instead of chasing relative accuracy") {
    auto r = integrate([](double x) { return Vec2{std::sin(x), 0.0}; }, -1.0, 1.0);
    CHECK(std::abs(r.value.x) < 1e-14);
    CHECK(std::abs(r.value.z) == 0.0);
}

TEST_CASE("divergent integrals hit the subdivision cap") {
    CHECK_THROWS_AS(integrate_scalar([](double x) { return 1.0 / x; }, 0.0, 1.0, {}, {1e-10, 200}), NumericalError);
}
