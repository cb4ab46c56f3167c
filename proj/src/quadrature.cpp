#include "scmag/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "scmag/errors.hpp"

namespace scmag {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b;
    Vec2 value;
    double err;
    double absValue;  // integral of |f|, componentwise summed
    bool operator<(const Interval& o) const { return err < o.err; }
};

Interval kronrod(const std::function<Vec2(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Vec2 fc = f(c);
    Vec2 resK = wgk[7] * fc;
    Vec2 resG = wg[3] * fc;
    double absK = wgk[7] * (std::abs(fc.x) + std::abs(fc.z));
    for (int j = 0; j < 7; ++j) {
        double dx = h * xgk[j];
        Vec2 f1 = f(c - dx), f2 = f(c + dx);
        resK += wgk[j] * (f1 + f2);
        absK += wgk[j] * (std::abs(f1.x) + std::abs(f1.z) + std::abs(f2.x) + std::abs(f2.z));
        if (j % 2 == 1) resG += wg[j / 2] * (f1 + f2);
    }
    Interval out;
    out.a = a;
    out.b = b;
    out.value = h * resK;
    out.err = norm(h * (resK - resG));
    out.absValue = std::abs(h) * absK;
    return out;
}

}  // namespace

QuadratureResult integrate(const std::function<Vec2(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& opt) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw InvalidArgument("integration limits must be finite");
    if (a == b) return {};
    const double lo = std::min(a, b), hi = std::max(a, b);
    std::vector<double> cuts{lo};
    for (double p : breakpoints)
        if (p > lo && p < hi) cuts.push_back(p);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Interval> heap;
    Vec2 total;
    double err = 0.0, absTotal = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Interval iv = kronrod(f, cuts[i], cuts[i + 1]);
        total += iv.value;
        err += iv.err;
        absTotal += iv.absValue;
        heap.push(iv);
    }
    const double eps = std::numeric_limits<double>::epsilon();
    auto converged = [&] { return err <= opt.relTol * norm(total) || err <= 200 * eps * absTotal; };
    while (!converged()) {
        if (heap.size() >= opt.maxSubdivisions)
            throw NumericalError("quadrature did not converge within " + std::to_string(opt.maxSubdivisions) +
                                 " subintervals (error estimate " + std::to_string(err) + ")");
        Interval worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw NumericalError("quadrature interval collapsed to machine precision");
        Interval l = kronrod(f, worst.a, mid), r = kronrod(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.err + r.err - worst.err;
        absTotal += l.absValue + r.absValue - worst.absValue;
        heap.push(l);
        heap.push(r);
    }
    // Recompute the sum from the leaves to shed accumulated update roundoff.
    Vec2 sum;
    double esum = 0.0;
    std::size_t n = heap.size();
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().err;
        heap.pop();
    }
    if (a > b) sum = -sum;
    return {sum, esum, n};
}

double integrate_scalar(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> breakpoints, const QuadratureOptions& opt) {
    return integrate([&](double t) { return Vec2{f(t), 0.0}; }, a, b, breakpoints, opt).value.x;
}

namespace {
struct GaussTable {
    std::array<std::vector<double>, 17> nodes, weights;
    GaussTable() {
        for (std::size_t n = 2; n <= 16; ++n) {
            nodes[n].resize(n);
            weights[n].resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                // Newton on P_n from the Chebyshev-like initial guess.
                double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
                double dp = 1.0;
                for (int it = 0; it < 100; ++it) {
                    double p0 = 1.0, p1 = x;
                    for (std::size_t k = 2; k <= n; ++k) {
                        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                        p0 = p1;
                        p1 = pk;
                    }
                    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
                    double dx = p1 / dp;
                    x -= dx;
                    if (std::abs(dx) < 1e-16) break;
                }
                nodes[n][i] = -x;  // ascending
                weights[n][i] = 2.0 / ((1.0 - x * x) * dp * dp);
            }
        }
    }
};
}  // namespace

GaussRule gauss_legendre(std::size_t n) {
    static const GaussTable table;
    if (n < 2 || n > 16) throw InvalidArgument("Gauss-Legendre order must be in 2..16");
    return {table.nodes[n], table.weights[n]};
}

}  // namespace scmag
