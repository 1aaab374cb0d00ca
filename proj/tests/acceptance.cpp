// End-to-end acceptance suite. Each criterion prints one [PASS]/[FAIL] line;
// the exit code is the number of failed criteria. Tolerances are pinned here
// and never adjusted to fit measurements.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "smax/experiment.hpp"
#include "smax/parallel.hpp"
#include "smax/rng.hpp"

using namespace smax;

namespace {

int failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, what,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

Eigen::VectorXd ball_point(int n, CounterRng& rng, double radius = 1.0) {
    Eigen::VectorXd x(n);
    do {
        for (int j = 0; j < n; ++j) x[j] = rng.uniform(-1.0, 1.0);
    } while (x.norm() >= 1.0);
    return radius * x;
}

void criterion_1() {
    double worst = 0.0;
    bool ok = true;
    CounterRng rng(101, 0);
    for (long q = 3; q <= 999; q += 2) {
        for (int k = 0; k < 20; ++k) {
            long a = rng.uniform_int(1, q - 1);
            while (std::gcd(a, q) != 1) a = rng.uniform_int(1, q - 1);
            const long b = rng.uniform_int(0, q - 1);
            const double dev = std::abs(std::abs(gauss_sum(q, a, b)) - std::sqrt(double(q)));
            worst = std::max(worst, dev / std::sqrt(double(q)));
            ok = ok && dev <= 1e-9 * std::sqrt(double(q));
        }
    }
    double worst0 = 0.0;
    for (long q = 2; q <= 998; q += 4) {
        const double z = std::abs(gauss_sum(q, 1, 0));
        worst0 = std::max(worst0, z);
        ok = ok && z <= 1e-9;
    }
    report(1, "Gauss-sum modulus law, odd q <= 999", ok,
           fmt("max rel dev %.2e, max |G| at q=2 mod 4: %.2e", worst, worst0));
}

void criterion_2() {
    CounterRng rng(102, 0);
    bool ok = true;
    double worst_slack = 1e300;
    for (int i = 0; i < 1000; ++i) {
        const long q = rng.uniform_int(1, 80);
        const long lo = rng.uniform_int(-200, 200);
        const long hi = lo + rng.uniform_int(1, 500);
        const long a = rng.uniform_int(-60, 60);
        const long b = rng.uniform_int(-60, 60);
        const auto s = incomplete_gauss_sum(lo, hi, q, a, b);
        const double dev = std::abs(s.value - double(s.blocks) * gauss_sum(q, a, b));
        const double bound = double(s.remainder + q);
        ok = ok && dev <= bound + 1e-9;
        worst_slack = std::min(worst_slack, bound - dev);
    }
    report(2, "incomplete-sum block bound on 1000 instances", ok,
           fmt("min slack %.3g", worst_slack));
}

void criterion_3(const InitialDatum& d256) {
    // Random points conditioned on a non-vanishing envelope: phi has double
    // zeros where |f| drops to ~1e-8 and any oscillatory quadrature carries
    // an absolute noise floor of ~1e-16, so the relative comparison is only
    // well posed where the envelope stays above ~1e-5.
    CounterRng rng(103, 0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Eigen::VectorXd x;
        do {
            x = ball_point(2, rng);
        } while (phi_eval(*d256.profile, std::sqrt(d256.params.R) * x[0]) *
                     big_phi_eval(*d256.profile, x.tail(1)) <
                 1e-5);
        const auto u = propagate(d256, x, 0.0);
        const auto f = f_eval(d256, x);
        worst = std::max(worst, std::abs(u - f) / std::max(std::abs(f), 1e-300));
    }
    report(3, "t=0 propagator identity, n=2 R=256", worst <= 1e-10,
           fmt("max rel err %.2e", worst));
}

void criterion_4() {
    const InitialDatum d = make_datum(2, 64.0, 2048);
    CounterRng rng(104, 0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        Eigen::VectorXd x(2);
        x << rng.uniform(-0.3, 0.3), rng.uniform(-0.5, 0.5);
        const double t = rng.uniform(0.0, 1e-3);
        const auto fast = propagate(d, x, t);
        const auto brute = oracle::propagate_2d_brute(d, x, t, 512, 512);
        worst = std::max(worst, std::abs(fast - brute) / std::abs(brute));
    }
    report(4, "tensorization vs joint 2-D quadrature, n=2 R=64", worst <= 1e-6,
           fmt("max rel err %.2e", worst));
}

void criterion_5(const InitialDatum& d4096) {
    // Admissible (x,t): times from the two search windows the laboratory
    // actually evaluates (the predicted tau-window around -x1/(2R) and the
    // short-time grid (0, c/R]), at points where the transported envelope
    // does not sit in a double zero of phi. At fully dispersed (x,t) the
    // modulus falls below the 1e-16 absolute quadrature floor and relative
    // stability is not a meaningful quantity.
    const Params& p = d4096.params;
    CounterRng rng(105, 0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        EvolutionQuery q;
        do {
            q.x = ball_point(2, rng);
            q.x[0] = -std::abs(q.x[0]);
            if (rng.uniform() < 0.5) {
                const double tau = rng.uniform(-p.tau_halfwidth, p.tau_halfwidth);
                q.t = -q.x[0] / (2.0 * p.R) + tau;
            } else {
                q.t = rng.uniform(0.0, 0.05 / p.R);
            }
        } while (q.t <= 0.0 ||
                 phi_eval(*d4096.profile,
                          std::sqrt(p.R) * (q.x[0] + 2.0 * p.R * q.t)) < 1e-4);
        q.node_multiplier = 1;
        const auto v1 = propagate(d4096, q);
        q.node_multiplier = 2;
        const auto v2 = propagate(d4096, q);
        worst = std::max(worst, std::abs(v1 - v2) / std::max(std::abs(v2), 1e-300));
    }
    report(5, "node-doubling stability, n=2 R=4096", worst <= 1e-8,
           fmt("max rel change %.2e", worst));
}

void criterion_6() {
    double worst = 0.0;
    for (double R : {256.0, 1024.0, 4096.0}) {
        const InitialDatum d = make_datum(2, R, 2048);
        const double analytic = l2_norm(d);
        const double direct = std::sqrt(oracle::l2_norm_sq_quadrature(d));
        worst = std::max(worst, std::abs(direct - analytic) / analytic);
    }
    report(6, "norm law vs direct |f|^2 quadrature, R in {256,1024,4096}", worst <= 5e-3,
           fmt("max rel dev %.2e", worst));
}

void criterion_7(const InitialDatum& d4096) {
    const double c = 0.01;
    const Params& p = d4096.params;
    CounterRng rng(107, 0);
    std::vector<double> devs;
    for (int i = 0; i < 200; ++i) {
        const Eigen::VectorXd x = ball_point(2, rng, 0.99 * c);
        const double t = rng.uniform(0.0, 0.99 * c / p.R);
        devs.push_back(approx_deviation(d4096, x, t, c));
    }
    const double med = median(devs);
    report(7, "short-time approximation, c=0.01 n=2 R=4096", med <= 0.05,
           fmt("median deviation %.3g over 200 points", med));
}

void criterion_8() {
    bool ok = true;
    std::ostringstream detail;
    double prev_f = -1.0, prev_se = 0.0;
    for (int k : {12, 14, 16}) {
        const Params p = build_params(2, std::pow(2.0, k));
        const auto est = omega_measure_estimate(OmegaSpec::make(p, 0.05), 108, 10000);
        detail << (k == 12 ? "" : ", ") << "2^" << k << ": " << est.fraction;
        if (est.fraction < 0.01) ok = false;
        if (prev_f >= 0.0 && prev_f - est.fraction > 3.0 * std::hypot(prev_se, est.stderr_))
            ok = false;
        prev_f = est.fraction;
        prev_se = est.stderr_;
    }
    report(8, "Omega measure >= 0.01, non-decreasing, c=0.05", ok, detail.str());
}

double omega_median_ratio(const InitialDatum& d, const OmegaSpec& spec, int samples,
                          std::uint64_t seed) {
    std::vector<double> ratios(samples);
    std::vector<long> idx(samples);
    std::iota(idx.begin(), idx.end(), 0);
    parallel_for(samples, 0, [&](long i) {
        const OmegaSample s = sample_omega_pullback(spec, seed + std::uint64_t(i));
        ratios[i] = pointwise_ratio(d, spec, s.x, Strategy::Combined, 64);
    });
    return median(ratios);
}

void criterion_9(std::shared_ptr<const BumpProfile> profile) {
    // kappa calibrated at R = 2^12 with a pinned 0.8 safety factor
    const double med12 = omega_median_ratio(
        make_datum(build_params(2, 4096.0), profile),
        OmegaSpec::make(build_params(2, 4096.0), 0.05), 200, 109000);
    const double kappa = 0.8 * med12 / std::cbrt(4096.0);
    bool ok = true;
    std::ostringstream detail;
    detail << "kappa=" << kappa;
    for (int k : {14, 16}) {
        const double R = std::pow(2.0, k);
        const Params p = build_params(2, R);
        const double med =
            omega_median_ratio(make_datum(p, profile), OmegaSpec::make(p, 0.05), 200,
                               109000 + 1000 * std::uint64_t(k));
        detail << ", 2^" << k << ": " << med << " vs " << kappa * std::cbrt(R);
        if (med < kappa * std::cbrt(R)) ok = false;
    }
    report(9, "pointwise blow-up growth >= kappa R^{1/3}", ok, detail.str());
}

std::vector<SweepRecord> sweep_10;

void criterion_10() {
    SweepConfig cfg;
    cfg.n = 2;
    cfg.R_list = {1024.0, 4096.0, 16384.0, 65536.0, 262144.0};
    cfg.samples_uniform = 2000;  // tightens the L1 standard errors feeding
                                 // the criterion-11 verdicts
    cfg.samples_omega = 500;
    cfg.budget = 64;
    cfg.seed = 110;
    cfg.resolution = 4096;
    sweep_10 = run_sweep(cfg);
    const FitResult fit = fit_exponent(sweep_10, Field::OmegaMedianRatio);
    const bool ok = std::abs(fit.slope - 1.0 / 3.0) <= 0.05;
    report(10, "n=2 exponent recovery, slope within 1/3 +- 0.05", ok,
           fmt("slope %.4f +- %.4f", fit.slope, fit.stderr_));
}

void criterion_11() {
    if (sweep_10.size() < 3) {
        report(11, "divergence verdicts on the n=2 sweep", false, "sweep unavailable");
        return;
    }
    const Verdict lo = divergence_verdict(sweep_10, 0.2833, 2);
    const Verdict hi = divergence_verdict(sweep_10, 0.3833, 2);
    const bool ok =
        lo == Verdict::DivergenceConsistent && hi != Verdict::DivergenceConsistent;
    report(11, "divergence verdicts at s=0.2833 / s=0.3833", ok,
           "got " + to_string(lo) + " / " + to_string(hi));
}

void criterion_12() {
    SweepConfig cfg;
    cfg.n = 3;
    cfg.R_list = {256.0, 1024.0, 4096.0};
    cfg.samples_uniform = 100;
    cfg.samples_omega = 1000;  // >= 200 required; extra samples tame the
                               // median noise at these small R
    cfg.budget = 64;
    cfg.seed = 112;
    cfg.resolution = 2048;
    const auto records = run_sweep(cfg);
    const FitResult fit = fit_exponent(records, Field::OmegaMedianRatio);
    const bool ok = std::abs(fit.slope - 0.375) <= 0.07;
    report(12, "n=3 smoke test, slope within 3/8 +- 0.07", ok,
           fmt("slope %.4f +- %.4f", fit.slope, fit.stderr_));
}

void criterion_13() {
    const auto dir = std::filesystem::temp_directory_path();
    std::vector<std::string> contents;
    for (int threads : {1, 4, 8}) {
        SweepConfig cfg;
        cfg.n = 2;
        cfg.R_list = {1024.0, 4096.0, 16384.0};
        cfg.samples_uniform = 100;
        cfg.samples_omega = 100;
        cfg.budget = 16;
        cfg.seed = 113;
        cfg.resolution = 2048;
        cfg.threads = threads;
        cfg.out_csv = (dir / ("smax_det_" + std::to_string(threads) + ".csv")).string();
        run_sweep(cfg);
        std::ifstream in(cfg.out_csv, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        contents.push_back(ss.str());
        std::filesystem::remove(cfg.out_csv);
    }
    const bool ok = contents[0] == contents[1] && contents[0] == contents[2];
    report(13, "byte-identical sweep CSV at 1/4/8 threads", ok,
           ok ? "identical" : "outputs differ");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    const InitialDatum d256 = make_datum(2, 256.0, 4096);
    criterion_3(d256);
    criterion_4();
    auto profile = std::make_shared<const BumpProfile>(make_profile(2, 4096));
    const InitialDatum d4096 = make_datum(build_params(2, 4096.0), profile);
    criterion_5(d4096);
    criterion_6();
    criterion_7(d4096);
    criterion_8();
    criterion_9(profile);
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
