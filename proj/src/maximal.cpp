#include "smax/maximal.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "smax/errors.hpp"

namespace smax {
namespace {

constexpr double kTwoPi = 6.283185307179586476925;

// wrap to (-pi, pi]
double wrap_pi(double d) {
    double r = std::fmod(d, kTwoPi);
    if (r > M_PI) r -= kTwoPi;
    if (r <= -M_PI) r += kTwoPi;
    return r;
}

}  // namespace

TimeSelection predicted_time(const OmegaSpec& spec, Eigen::Ref<const Eigen::VectorXd> x,
                             const RationalApprox& approx) {
    const Params& p = spec.params;
    if (!(x[0] < 0.0)) throw PreconditionViolated("predicted_time requires x_1 < 0");
    const TorusPoint y = torus_map(p, x);
    const double s = wrap_pi(kTwoPi * approx.a1 / approx.q - y.y1);
    if (!(std::abs(s) <= spec.c * p.sigma))
        throw WindowViolated("predicted_time: |s| exceeds c*sigma");
    TimeSelection sel;
    sel.s_shift = s;
    sel.tau = s / (p.D * p.D);
    sel.t_star = -x[0] / (2.0 * p.R) + sel.tau;
    sel.source = TimeSelection::Source::Predicted;
    if (!(sel.t_star > 0.0 && sel.t_star < 1.0))
        throw TimeOutOfRange("predicted_time: t* outside (0, 1)");
    if (std::abs(sel.tau) > p.tau_halfwidth)
        throw WindowViolated("predicted_time: |tau| exceeds tau_halfwidth");
    return sel;
}

MaximalEstimate sup_estimate(const InitialDatum& d, const OmegaSpec& spec,
                             Eigen::Ref<const Eigen::VectorXd> x, Strategy strategy, int budget) {
    if (budget < 1) throw PreconditionViolated("sup_estimate requires budget >= 1");
    const Params& p = d.params;
    std::vector<double> times;

    if (strategy == Strategy::Predicted || strategy == Strategy::Combined) {
        if (x[0] < 0.0) {
            const TorusPoint y = torus_map(p, x);
            const double w1 = spec.c * p.sigma;
            for (long q = spec.q_lo | 1; q <= spec.q_hi; q += 2) {
                for (long a1 : {std::lround(q * y.y1 / kTwoPi) % q,
                                (std::lround(q * y.y1 / kTwoPi) + 1) % q,
                                (std::lround(q * y.y1 / kTwoPi) + q - 1) % q}) {
                    if (a1 < 0) a1 += q;
                    if (std::gcd(a1, q) != 1) continue;
                    const double s = wrap_pi(kTwoPi * a1 / q - y.y1);
                    if (!(std::abs(s) <= w1)) continue;
                    const double t = -x[0] / (2.0 * p.R) + s / (p.D * p.D);
                    if (t > 0.0 && t < 1.0) times.push_back(t);
                }
            }
            // nested dyadic grid across the tau-window around the base time
            const double base = -x[0] / (2.0 * p.R);
            for (int i = 0; i <= budget; ++i) {
                const double tau = p.tau_halfwidth * (2.0 * i / budget - 1.0);
                const double t = base + tau;
                if (t > 0.0 && t < 1.0) times.push_back(t);
            }
        }
    }
    if (strategy == Strategy::WindowGrid || strategy == Strategy::Combined) {
        for (int i = 1; i <= budget; ++i) {
            const double t = spec.c / p.R * static_cast<double>(i) / budget;
            if (t > 0.0 && t < 1.0) times.push_back(t);
        }
    }
    if (times.empty()) times.push_back(std::min(p.tau_halfwidth, 0.5));

    MaximalEstimate est;
    est.strategy = strategy;
    for (double t : times) {
        const double v = std::abs(propagate(d, x, t));
        ++est.evaluations;
        if (v > est.value) {
            est.value = v;
            est.argmax_t = t;
        }
    }
    return est;
}

double pointwise_ratio(const InitialDatum& d, const OmegaSpec& spec,
                       Eigen::Ref<const Eigen::VectorXd> x, Strategy strategy, int budget) {
    return sup_estimate(d, spec, x, strategy, budget).value / l2_norm(d);
}

}  // namespace smax
