#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "smax/maximal.hpp"
#include "smax/rng.hpp"

using namespace smax;

namespace {
const InitialDatum& datum_2_4096() {
    static const InitialDatum d = make_datum(2, 4096.0, 4096);
    return d;
}
const OmegaSpec& spec_2_4096() {
    static const OmegaSpec s = OmegaSpec::make(datum_2_4096().params, 0.05);
    return s;
}
}  // namespace

TEST_CASE("predicted_time: algebraic identities on pullback samples") {
    const auto& spec = spec_2_4096();
    const Params& p = spec.params;
    for (int i = 0; i < 50; ++i) {
        const OmegaSample s = sample_omega_pullback(spec, 7000 + i);
        const TimeSelection sel = predicted_time(spec, s.x, s.approx);
        CHECK(sel.t_star ==
              doctest::Approx(-s.x[0] / (2.0 * p.R) + sel.s_shift / (p.D * p.D)).epsilon(1e-12));
        CHECK(sel.tau == doctest::Approx(sel.s_shift / (p.D * p.D)).epsilon(1e-12));
        CHECK(std::abs(sel.s_shift) <= spec.c * p.sigma * (1.0 + 1e-9));
        CHECK(std::abs(sel.tau) <= p.tau_halfwidth * (1.0 + 1e-9));
        CHECK(sel.t_star > 0.0);
        CHECK(sel.t_star < 1.0);
        // deficit consistency with the torus map
        const TorusPoint y = torus_map(p, s.x);
        const double s_direct = 2.0 * M_PI * s.approx.a1 / s.approx.q - y.y1;
        CHECK(circle_dist(sel.s_shift - s_direct) <= 1e-10);
    }
}

TEST_CASE("predicted_time: rejection paths") {
    const auto& spec = spec_2_4096();
    Eigen::VectorXd x(2);
    x << 0.1, 0.0;
    RationalApprox ap{5, 2, {3}};
    CHECK_THROWS_AS(predicted_time(spec, x, ap), PreconditionViolated);

    // a deliberately wrong numerator puts the deficit far outside the window
    const OmegaSample s = sample_omega_pullback(spec, 99);
    RationalApprox bad = s.approx;
    bad.a1 = (bad.a1 + 2) % bad.q;
    CHECK_THROWS_AS(predicted_time(spec, s.x, bad), WindowViolated);
}

TEST_CASE("sup_estimate: reported value is a realized evaluation") {
    const auto& d = datum_2_4096();
    const auto& spec = spec_2_4096();
    for (int i = 0; i < 10; ++i) {
        const OmegaSample s = sample_omega_pullback(spec, 300 + i);
        for (Strategy strat : {Strategy::Predicted, Strategy::WindowGrid, Strategy::Combined}) {
            const MaximalEstimate est = sup_estimate(d, spec, s.x, strat, 32);
            CHECK(est.value >= 0.0);
            CHECK(est.evaluations > 0);
            const double recheck = std::abs(propagate(d, s.x, est.argmax_t));
            CHECK(recheck == doctest::Approx(est.value).epsilon(1e-10));
        }
    }
}

TEST_CASE("sup_estimate: combination and nested-budget monotonicity") {
    const auto& d = datum_2_4096();
    const auto& spec = spec_2_4096();
    for (int i = 0; i < 10; ++i) {
        const OmegaSample s = sample_omega_pullback(spec, 500 + i);
        const double vp = sup_estimate(d, spec, s.x, Strategy::Predicted, 32).value;
        const double vg = sup_estimate(d, spec, s.x, Strategy::WindowGrid, 32).value;
        const double vc = sup_estimate(d, spec, s.x, Strategy::Combined, 32).value;
        CHECK(vc >= std::max(vp, vg) * (1.0 - 1e-12));

        for (Strategy strat : {Strategy::Predicted, Strategy::WindowGrid}) {
            const double lo = sup_estimate(d, spec, s.x, strat, 16).value;
            const double hi = sup_estimate(d, spec, s.x, strat, 64).value;
            CHECK(hi >= lo * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("sup_estimate: production budget tracks a 10x denser search") {
    const auto& d = datum_2_4096();
    const auto& spec = spec_2_4096();
    int good = 0;
    const int m = 30;
    for (int i = 0; i < m; ++i) {
        const OmegaSample s = sample_omega_pullback(spec, 900 + i);
        const double v = sup_estimate(d, spec, s.x, Strategy::Combined, 64).value;
        const double dense = sup_estimate(d, spec, s.x, Strategy::Combined, 640).value;
        if (v >= 0.9 * dense) ++good;
    }
    CHECK(good >= (9 * m) / 10);
}

TEST_CASE("pointwise_ratio: normalization") {
    const auto& d = datum_2_4096();
    const auto& spec = spec_2_4096();
    const OmegaSample s = sample_omega_pullback(spec, 1234);
    const MaximalEstimate est = sup_estimate(d, spec, s.x, Strategy::Combined, 32);
    const double r = pointwise_ratio(d, spec, s.x, Strategy::Combined, 32);
    CHECK(r == doctest::Approx(est.value / l2_norm(d)).epsilon(1e-12));
}

TEST_CASE("predicted times realize Gauss-sum sized lattice factors") {
    const auto& d = datum_2_4096();
    const auto& spec = spec_2_4096();
    const Params& p = spec.params;
    std::vector<double> scaled;
    for (int i = 0; i < 100; ++i) {
        const OmegaSample s = sample_omega_pullback(spec, 2000 + i);
        const MaximalEstimate est = sup_estimate(d, spec, s.x, Strategy::Predicted, 64);
        const double ls = std::abs(lattice_sum(d, s.x.tail(p.n - 1), est.argmax_t));
        scaled.push_back(ls * std::sqrt(static_cast<double>(s.approx.q)) / p.N);
    }
    std::sort(scaled.begin(), scaled.end());
    const double median = scaled[scaled.size() / 2];
    CHECK(median >= 0.2);
    CHECK(median <= 5.0);
}
