#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "scmag/vec2.hpp"

namespace scmag {

struct QuadratureOptions {
    double relTol = 1e-8;
    std::size_t maxSubdivisions = 2000;
};

struct QuadratureResult {
    Vec2 value;
    double errorEstimate = 0.0;
    std::size_t intervals = 0;
};

// Globally adaptive 15-point Gauss-Kronrod integration of a 2-vector integrand
// over [a, b]. Interior breakpoints (sorted or not, outside points ignored)
// seed the initial partition so kinks and peaks sit on interval ends.
// Converges when the summed error is below relTol * |I|, or below a few
// hundred ulps of the integral of |f| when the result cancels to ~0.
// Throws NumericalError when the subdivision cap is hit first.
QuadratureResult integrate(const std::function<Vec2(double)>& f, double a, double b,
                           std::span<const double> breakpoints = {}, const QuadratureOptions& opt = {});

// Scalar convenience wrapper.
double integrate_scalar(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> breakpoints = {}, const QuadratureOptions& opt = {});

// Nodes and weights of n-point Gauss-Legendre on [-1, 1], n in {2..16}.
struct GaussRule {
    std::span<const double> nodes;
    std::span<const double> weights;
};
GaussRule gauss_legendre(std::size_t n);

}  // namespace scmag
