#include "nlifo/quadrature.hpp"

#include <cmath>

#include "nlifo/constants.hpp"

namespace nlifo {

namespace {

GaussLegendre64 compute_gl64() {
    GaussLegendre64 gl{};
    constexpr int n = 64;
    for (int i = 0; i < n / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p2 = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            p2 = n * (x * p1 - p0) / (x * x - 1.0);  // P_n'(x)
            double dx = p1 / p2;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        gl.node[i] = -x;
        gl.node[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * p2 * p2);
        gl.weight[i] = w;
        gl.weight[n - 1 - i] = w;
    }
    return gl;
}

}  // namespace

const GaussLegendre64& GaussLegendre64::instance() {
    static const GaussLegendre64 gl = compute_gl64();
    return gl;
}

RefinedNodes::RefinedNodes(double a, double b) {
    const auto& gl = GaussLegendre64::instance();
    z.reserve(128);
    w.reserve(128);
    const double mid = 0.5 * (a + b);
    const double pairs[2][2] = {{a, mid}, {mid, b}};
    for (const auto& seg : pairs) {
        const double half = 0.5 * (seg[1] - seg[0]);
        const double center = 0.5 * (seg[0] + seg[1]);
        for (int i = 0; i < 64; ++i) {
            z.push_back(center + half * gl.node[i]);
            w.push_back(half * gl.weight[i]);
        }
    }
}

double integrate_gl64(const std::function<double(double)>& f, double a, double b) {
    const auto& gl = GaussLegendre64::instance();
    const double half = 0.5 * (b - a);
    const double center = 0.5 * (a + b);
    double acc = 0.0;
    for (int i = 0; i < 64; ++i) acc += gl.weight[i] * f(center + half * gl.node[i]);
    return half * acc;
}

double integrate_refined(const std::function<double(double)>& f, double a, double b,
                         double rel_tol) {
    const double coarse = integrate_gl64(f, a, b);
    const RefinedNodes nodes(a, b);
    double fine = 0.0;
    for (std::size_t i = 0; i < nodes.z.size(); ++i) fine += nodes.w[i] * f(nodes.z[i]);
    const double scale = std::max(std::abs(fine), 1e-300);
    const double achieved = std::abs(fine - coarse) / scale;
    if (achieved > rel_tol)
        throw QuadratureError("quadrature did not converge (achieved " +
                                  std::to_string(achieved) + ", requested " +
                                  std::to_string(rel_tol) + ")",
                              achieved);
    return fine;
}

}  // namespace nlifo
