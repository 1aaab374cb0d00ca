#include "smax/numbertheory.hpp"

#include <cmath>
#include <numeric>

#include "smax/errors.hpp"
#include "smax/rng.hpp"

namespace smax {
namespace {

constexpr double kTwoPi = 6.283185307179586476925;

double mod_2pi(double v) {
    double r = std::fmod(v, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

long mod_pos(long v, long q) {
    long r = v % q;
    if (r < 0) r += q;
    return r;
}

}  // namespace

double circle_dist(double d) {
    double r = std::abs(std::fmod(d, kTwoPi));
    if (r > M_PI) r = kTwoPi - r;
    return r;
}

std::complex<double> gauss_sum(long q, long a, long b) {
    if (q < 1) throw PreconditionViolated("gauss_sum requires q >= 1");
    const long am = mod_pos(a, q);
    const long bm = mod_pos(b, q);
    std::complex<double> sum{0.0, 0.0};
    for (long l = 0; l < q; ++l) {
        const long l2 = (l * l) % q;
        const long r = (am * l2 % q + bm * l % q) % q;
        const double phase = kTwoPi * static_cast<double>(r) / static_cast<double>(q);
        sum += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return sum;
}

double gauss_modulus_check(long q, long a, long b) {
    if (q < 1 || q % 2 == 0) throw PreconditionViolated("gauss_modulus_check requires odd q");
    if (std::gcd(mod_pos(a, q), q) != 1)
        throw PreconditionViolated("gauss_modulus_check requires gcd(a, q) = 1");
    return std::abs(std::abs(gauss_sum(q, a, b)) - std::sqrt(static_cast<double>(q)));
}

IncompleteSum incomplete_gauss_sum(long lo, long hi, long q, long a, long b) {
    if (q < 1) throw PreconditionViolated("incomplete_gauss_sum requires q >= 1");
    if (lo >= hi) throw PreconditionViolated("incomplete_gauss_sum requires lo < hi");
    const long am = mod_pos(a, q);
    const long bm = mod_pos(b, q);
    IncompleteSum out;
    const long count = hi - lo - 1;
    if (count <= 0) return out;
    out.blocks = count / q;
    out.remainder = count % q;
    std::complex<double> sum{0.0, 0.0};
    for (long l = lo + 1; l < hi; ++l) {
        const long lm = mod_pos(l, q);
        const long l2 = (lm * lm) % q;
        const long r = (am * l2 % q + bm * lm % q) % q;
        const double phase = kTwoPi * static_cast<double>(r) / static_cast<double>(q);
        sum += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    out.value = sum;
    return out;
}

TorusPoint torus_map(const Params& p, Eigen::Ref<const Eigen::VectorXd> x) {
    if (x.size() != p.n) throw Error("torus_map: point dimension mismatch");
    TorusPoint y;
    y.y1 = mod_2pi(-p.D * p.D * x[0] / (2.0 * p.R));
    y.yprime.resize(p.n - 1);
    for (int j = 1; j < p.n; ++j) y.yprime[j - 1] = mod_2pi(p.D * x[j]);
    return y;
}

OmegaSpec OmegaSpec::make(const Params& p, double c) {
    OmegaSpec spec;
    spec.params = p;
    spec.c = c;
    spec.q_lo = std::max<long>(3, std::lround(p.Q));
    spec.q_hi = 2 * spec.q_lo;
    return spec;
}

std::optional<RationalApprox> rational_approx(const OmegaSpec& spec, const TorusPoint& y) {
    const Params& p = spec.params;
    const double w1 = spec.c * p.sigma;
    const double wp = spec.c * p.D / p.R;
    std::optional<RationalApprox> best;
    double best_deficit = 0.0;
    for (long q = spec.q_lo | 1; q <= spec.q_hi; q += 2) {
        const long a1 = mod_pos(std::lround(q * y.y1 / kTwoPi), q);
        if (std::gcd(a1, q) != 1) continue;
        const double d1 = circle_dist(y.y1 - kTwoPi * a1 / q);
        if (!(d1 < w1)) continue;
        RationalApprox cand;
        cand.q = q;
        cand.a1 = a1;
        bool ok = true;
        for (Eigen::Index j = 0; j < y.yprime.size(); ++j) {
            const long aj = mod_pos(std::lround(q * y.yprime[j] / kTwoPi), q);
            if (!(circle_dist(y.yprime[j] - kTwoPi * aj / q) < wp)) {
                ok = false;
                break;
            }
            cand.aprime.push_back(aj);
        }
        if (!ok) continue;
        if (!best || d1 < best_deficit) {
            best = std::move(cand);
            best_deficit = d1;
        }
    }
    return best;
}

bool omega_contains(const OmegaSpec& spec, const TorusPoint& y) {
    return rational_approx(spec, y).has_value();
}

MeasureEstimate omega_measure_estimate(const OmegaSpec& spec, std::uint64_t seed, long m) {
    if (m < 100) throw PreconditionViolated("omega_measure_estimate requires m >= 100");
    const int n = spec.params.n;
    long hits = 0;
    for (long i = 0; i < m; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        TorusPoint y;
        y.y1 = rng.uniform(0.0, kTwoPi);
        y.yprime.resize(n - 1);
        for (int j = 0; j < n - 1; ++j) y.yprime[j] = rng.uniform(0.0, kTwoPi);
        if (omega_contains(spec, y)) ++hits;
    }
    MeasureEstimate est;
    est.fraction = static_cast<double>(hits) / static_cast<double>(m);
    est.stderr_ = std::sqrt(std::max(est.fraction * (1.0 - est.fraction), 0.25 / m) / m);
    return est;
}

OmegaSample sample_omega_pullback(const OmegaSpec& spec, std::uint64_t seed, double x_radius) {
    const Params& p = spec.params;
    const int n = p.n;
    const double r1 = x_radius / std::sqrt(static_cast<double>(n));  // per-axis box inside the ball
    const double w1 = spec.c * p.sigma;
    const double wp = spec.c * p.D / p.R;
    const double y1_cap = r1 * p.D * p.D / (2.0 * p.R);  // reachable Y range for x_1 in (-r1, 0)

    std::vector<long> odd_q;
    for (long q = spec.q_lo | 1; q <= spec.q_hi; q += 2) odd_q.push_back(q);
    if (odd_q.empty()) throw PreconditionViolated("empty odd q block");

    CounterRng rng(seed, 0x6f6d656761ull);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const long q = odd_q[static_cast<std::size_t>(rng.uniform_int(0, odd_q.size() - 1))];
        long a1 = rng.uniform_int(1, q - 1);
        if (std::gcd(a1, q) != 1) continue;
        const double y1 = mod_2pi(kTwoPi * a1 / q + rng.uniform(-w1, w1));

        // branches y1 + 2 pi k landing x_1 in (-r1, 0)
        const long kmax = static_cast<long>(std::floor((y1_cap - y1) / kTwoPi));
        if (kmax < 0) continue;
        const long k = rng.uniform_int(0, kmax);
        const double x1 = -2.0 * p.R * (y1 + kTwoPi * k) / (p.D * p.D);
        if (!(x1 < 0.0) || !(x1 > -r1)) continue;

        Eigen::VectorXd x(n);
        x[0] = x1;
        RationalApprox approx;
        approx.q = q;
        approx.a1 = a1;
        bool ok = true;
        for (int j = 1; j < n; ++j) {
            const long aj = rng.uniform_int(0, q - 1);
            const double yj = mod_2pi(kTwoPi * aj / q + rng.uniform(-wp, wp));
            const long kj_lo = static_cast<long>(std::ceil((-r1 * p.D - yj) / kTwoPi));
            const long kj_hi = static_cast<long>(std::floor((r1 * p.D - yj) / kTwoPi));
            if (kj_lo > kj_hi) {
                ok = false;
                break;
            }
            const long kj = rng.uniform_int(kj_lo, kj_hi);
            x[j] = (yj + kTwoPi * kj) / p.D;
            approx.aprime.push_back(aj);
        }
        if (!ok) continue;
        if (!omega_contains(spec, torus_map(p, x))) continue;  // boundary rounding
        return OmegaSample{std::move(x), std::move(approx)};
    }
    throw NoBranch("sample_omega_pullback: no admissible branch found");
}

}  // namespace smax
