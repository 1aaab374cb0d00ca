#include "smax/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace smax {
namespace {

QuadratureRule build_gauss_legendre(int m) {
    QuadratureRule rule;
    rule.count = m;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    // Newton iteration on P_m; roots come in symmetric pairs.
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one final polish
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= m; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / dp;
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[m - 1 - i] = x;
        rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int m) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) {
        it = cache.emplace(m, std::make_unique<QuadratureRule>(build_gauss_legendre(m)))
                 .first;
    }
    return *it->second;
}

int phase_nodes(double phase_range, int floor_nodes, long cap) {
    const double need = 8.0 + 4.0 * std::abs(phase_range) / M_PI;
    if (need > static_cast<double>(cap))
        throw NodeBudgetExceeded("phase-resolution rule requires " +
                                 std::to_string(static_cast<long>(need)) +
                                 " nodes, cap is " + std::to_string(cap));
    int m = floor_nodes;
    while (m < need) m *= 2;
    return m;
}

}  // namespace smax
