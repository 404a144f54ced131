#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace nlifo {

struct QuadratureError : std::runtime_error {
    double achieved;
    QuadratureError(const std::string& msg, double achieved_tol)
        : std::runtime_error(msg), achieved(achieved_tol) {}
};

// 64-point Gauss-Legendre rule on [-1, 1]; nodes/weights computed once by
// Newton iteration on P_64 and cached.
struct GaussLegendre64 {
    std::array<double, 64> node;
    std::array<double, 64> weight;
    static const GaussLegendre64& instance();
};

// Fixed node set used for every distributed-loss integral: GL64 applied on
// the two halves of [a, b]. Exposing the nodes lets different integrands
// share them bit-for-bit.
struct RefinedNodes {
    std::vector<double> z;  // 128 abscissae, ascending
    std::vector<double> w;  // matching weights
    RefinedNodes(double a, double b);
};

double integrate_gl64(const std::function<double(double)>& f, double a, double b);

// One refinement pass: accept the two-half value when it agrees with the
// single-panel value to rel_tol, otherwise throw QuadratureError carrying the
// achieved tolerance.
double integrate_refined(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-10);

}  // namespace nlifo
