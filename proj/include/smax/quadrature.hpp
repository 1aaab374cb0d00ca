#pragma once

#include <Eigen/Dense>
#include <complex>

#include "smax/errors.hpp"

namespace smax {

// Gauss-Legendre rule on [-1, 1]. Weights sum to 2 (the interval length).
struct QuadratureRule {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
    int count = 0;
};

// Cached Gauss-Legendre rule with `m` nodes (thread-safe).
const QuadratureRule& gauss_legendre(int m);

// Node count for an oscillatory integrand whose phase varies over
// `phase_range` radians across the interval: 8 + 4*range/pi, rounded up to
// the next power of two and clamped below by `floor_nodes`. Throws
// NodeBudgetExceeded past `cap`.
int phase_nodes(double phase_range, int floor_nodes, long cap);

// Compensated (Kahan) accumulation of w_k * f(x_k) mapped to [a, b].
template <typename F>
std::complex<double> integrate(const QuadratureRule& rule, double a, double b, F&& f) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::complex<double> sum{0.0, 0.0}, comp{0.0, 0.0};
    for (int k = 0; k < rule.count; ++k) {
        const std::complex<double> term =
            (half * rule.weights[k]) * f(mid + half * rule.nodes[k]);
        const std::complex<double> y = term - comp;
        const std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

template <typename F>
double integrate_real(const QuadratureRule& rule, double a, double b, F&& f) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0, comp = 0.0;
    for (int k = 0; k < rule.count; ++k) {
        const double term = (half * rule.weights[k]) * f(mid + half * rule.nodes[k]);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace smax
