#include "smax/propagator.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "smax/errors.hpp"

namespace smax {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

// (2pi)^{-1/2} sum_k w_k phi_hat(n_k) e^{i(n_k u + n_k^2 v)}, compensated.
// This is the shared oscillatory kernel of both axis factors.
std::complex<double> band_integral(const QuadratureRule& rule, const Eigen::ArrayXd& fhat,
                                   double u, double v) {
    std::complex<double> sum{0.0, 0.0}, comp{0.0, 0.0};
    for (int k = 0; k < rule.count; ++k) {
        const double lam = rule.nodes[k];
        const double phase = lam * u + lam * lam * v;
        const double w = rule.weights[k] * fhat[k];
        const std::complex<double> term{w * std::cos(phase), w * std::sin(phase)};
        const std::complex<double> y = term - comp;
        const std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return kInvSqrt2Pi * sum;
}

int transverse_node_count(const InitialDatum& d, double xj, double t, const EvolutionQuery& q) {
    const Params& p = d.params;
    const double a = d.profile->a;
    const long lmax = std::max(std::labs(p.lattice_lo), std::labs(p.lattice_hi));
    const double umax = (std::abs(xj) + 2.0 * p.D * lmax * std::abs(t)) / a;
    const double range = 2.0 * umax + 4.0 * std::abs(t) / (a * a);
    // phi_hat itself needs ~256 Gauss nodes for machine accuracy before any
    // oscillation is added; see the floor in longitudinal_node_count.
    const int floor_nodes = std::max(256, q.min_transverse_nodes) * q.node_multiplier;
    return phase_nodes(range * q.node_multiplier, floor_nodes, q.node_cap);
}

}  // namespace

const Eigen::ArrayXd& phi_hat_at_nodes(int m) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Eigen::ArrayXd>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) {
        const auto& rule = gauss_legendre(m);
        auto vals = std::make_unique<Eigen::ArrayXd>(m);
        for (int k = 0; k < m; ++k) (*vals)[k] = phi_hat_direct(rule.nodes[k]);
        it = cache.emplace(m, std::move(vals)).first;
    }
    return *it->second;
}

int longitudinal_node_count(const InitialDatum& d, double x1, double t, int multiplier,
                            long cap) {
    const Params& p = d.params;
    const double sqrtR = std::sqrt(p.R);
    const double ubound = sqrtR * (std::abs(x1) + 2.0 * p.R * std::abs(t) + 1.0);
    const double range = 2.0 * ubound + 4.0 * p.R * std::abs(t);
    // floor 256: the smooth factor phi_hat alone is resolved to machine
    // precision only from ~256 Gauss nodes up
    return phase_nodes(range * multiplier, 256 * multiplier, cap);
}

std::complex<double> axis_factor_longitudinal(const InitialDatum& d, double x1, double t,
                                              const QuadratureRule& rule) {
    const Params& p = d.params;
    const double sqrtR = std::sqrt(p.R);
    const double u = sqrtR * (x1 + 2.0 * p.R * t);
    const double v = p.R * t;
    const std::complex<double> inner = band_integral(rule, phi_hat_at_nodes(rule.count), u, v);
    const double phase = p.R * x1 + p.R * p.R * t;
    return std::complex<double>(std::cos(phase), std::sin(phase)) * inner;
}

std::complex<double> axis_factor_transverse(const InitialDatum& d, double xj, double t,
                                            const QuadratureRule& rule) {
    const Params& p = d.params;
    const double a = d.profile->a;
    const Eigen::ArrayXd& fhat = phi_hat_at_nodes(rule.count);
    const double v = t / (a * a);
    std::complex<double> sum{0.0, 0.0};
    for (long l = p.lattice_lo; l <= p.lattice_hi; ++l) {
        const double phase = p.D * l * xj + p.D * p.D * static_cast<double>(l) * l * t;
        const double u = (xj + 2.0 * p.D * l * t) / a;
        sum += std::complex<double>(std::cos(phase), std::sin(phase)) *
               band_integral(rule, fhat, u, v);
    }
    return sum;
}

std::complex<double> propagate(const InitialDatum& d, const EvolutionQuery& q) {
    const Params& p = d.params;
    if (q.x.size() != p.n) throw Error("propagate: point dimension mismatch");
    const int m1 = longitudinal_node_count(d, q.x[0], q.t, q.node_multiplier, q.node_cap);
    std::complex<double> val = axis_factor_longitudinal(d, q.x[0], q.t, gauss_legendre(m1));
    for (int j = 1; j < p.n; ++j) {
        const int mt = transverse_node_count(d, q.x[j], q.t, q);
        val *= axis_factor_transverse(d, q.x[j], q.t, gauss_legendre(mt));
    }
    return val;
}

std::complex<double> propagate(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> x,
                               double t) {
    EvolutionQuery q;
    q.x = x;
    q.t = t;
    return propagate(d, q);
}

std::complex<double> lattice_sum(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> xprime,
                                 double t) {
    if (xprime.size() != d.params.n - 1) throw Error("lattice_sum: dimension mismatch");
    std::complex<double> prod{1.0, 0.0};
    for (Eigen::Index j = 0; j < xprime.size(); ++j) prod *= lattice_axis_sum(d, xprime[j], t);
    return prod;
}

double propagate_approx(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> x, double t,
                        double c) {
    const Params& p = d.params;
    if (x.size() != p.n) throw Error("propagate_approx: point dimension mismatch");
    if (!(std::abs(t) < c / p.R) || !(x.norm() < c))
        throw OutOfApproximationRange("propagate_approx requires |t| < c/R and |x| < c");
    const double env = phi_eval(*d.profile, std::sqrt(p.R) * (x[0] + 2.0 * p.R * t));
    return env * std::abs(lattice_sum(d, x.tail(p.n - 1), t));
}

double approx_deviation(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> x, double t,
                        double c) {
    const double approx = propagate_approx(d, x, t, c);
    const double exact = std::abs(propagate(d, x, t));
    return std::abs(exact - approx) / std::max(approx, 1e-12);
}

}  // namespace smax
