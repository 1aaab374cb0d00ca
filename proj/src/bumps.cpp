#include "smax/bumps.hpp"

#include <cmath>

#include "smax/errors.hpp"

namespace smax {
namespace {

constexpr double kUMax = 48.0;

// integral of psi_hat over [-1/2, 1/2]
double psi_hat_mass() {
    static const double mass =
        2.0 * integrate_real(gauss_legendre(256), 0.0, 0.5, [](double t) { return psi_hat(t); });
    return mass;
}

// psi(u)/psi(0): normalized cosine transform of psi_hat
double psi_ratio(double u) {
    u = std::abs(u);
    const int m = phase_nodes(u, 256, 1 << 20);
    const double val = 2.0 * integrate_real(gauss_legendre(m), 0.0, 0.5, [u](double t) {
        return psi_hat(t) * std::cos(t * u);
    });
    return val / psi_hat_mass();
}

// local 6-point Lagrange interpolation on a uniform grid over [0, L];
// the function is even, so negative stencil indices reflect through 0.
double interp6(const Eigen::ArrayXd& g, double h, double x) {
    const long count = g.size();
    long j = static_cast<long>(std::floor(x / h));
    if (j < 0) j = 0;
    if (j > count - 2) j = count - 2;
    long base = j - 2;
    if (base > count - 6) base = count - 6;
    double result = 0.0;
    for (long i = base; i < base + 6; ++i) {
        const long idx = i < 0 ? -i : i;
        double li = 1.0;
        for (long k = base; k < base + 6; ++k) {
            if (k == i) continue;
            li *= (x - k * h) / ((i - k) * h);
        }
        result += li * g[idx < count ? idx : count - 1];
    }
    return result;
}

}  // namespace

double psi_hat(double lam) {
    const double z = 2.0 * lam;
    if (std::abs(z) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - z * z));
}

double phi_direct(double u) {
    const double r = psi_ratio(u);
    return r * r;
}

double phi_hat_direct(double lam, int nodes) {
    lam = std::abs(lam);
    if (lam >= 1.0) return 0.0;
    const double lo = lam - 0.5;
    const double conv = integrate_real(gauss_legendre(nodes), lo, 0.5, [lam](double t) {
        return psi_hat(t) * psi_hat(lam - t);
    });
    const double mass = psi_hat_mass();
    return std::sqrt(2.0 * M_PI) * conv / (mass * mass);
}

BumpProfile make_profile(int n, int resolution) {
    if (n < 2) throw DimensionTooSmall("make_profile requires n >= 2");
    if (resolution < 256) throw ResolutionTooLow("make_profile requires resolution >= 256");

    BumpProfile p;
    p.n = n;
    p.resolution = resolution;
    p.a = 2.0 * std::sqrt(static_cast<double>(n - 1));
    p.u_max = kUMax;

    p.phihat_grid.resize(resolution + 1);
    for (int i = 0; i <= resolution; ++i)
        p.phihat_grid[i] = phi_hat_direct(static_cast<double>(i) / resolution);

    const long phi_count = 4L * resolution + 1;
    p.phi_grid.resize(phi_count);
    for (long i = 0; i < phi_count; ++i)
        p.phi_grid[i] = phi_direct(kUMax * static_cast<double>(i) / (phi_count - 1));

    // ||phi||_2 by composite quadrature; the tail beyond u_max is negligible.
    double sq = 0.0;
    const auto& rule = gauss_legendre(48);
    for (double lo = 0.0; lo < kUMax; lo += 2.0)
        sq += integrate_real(rule, lo, lo + 2.0, [&p](double u) {
            const double v = phi_eval(p, u);
            return v * v;
        });
    p.phi_l2 = std::sqrt(2.0 * sq);
    return p;
}

double phi_eval(const BumpProfile& p, double u) {
    u = std::abs(u);
    if (u > p.u_max) return phi_direct(u);
    const double h = p.u_max / (p.phi_grid.size() - 1);
    const double v = interp6(p.phi_grid, h, u);
    return v > 0.0 ? v : 0.0;
}

double phi_hat_eval(const BumpProfile& p, double lam) {
    lam = std::abs(lam);
    if (lam >= 1.0) return 0.0;
    const double h = 1.0 / p.resolution;
    const double v = interp6(p.phihat_grid, h, lam);
    return v > 0.0 ? v : 0.0;
}

double big_phi_eval(const BumpProfile& p, Eigen::Ref<const Eigen::VectorXd> xprime) {
    if (xprime.size() != p.n - 1)
        throw Error("big_phi_eval: expected " + std::to_string(p.n - 1) + " coordinates, got " +
                    std::to_string(xprime.size()));
    double prod = 1.0;
    for (Eigen::Index j = 0; j < xprime.size(); ++j) prod *= phi_eval(p, xprime[j] / p.a);
    return prod;
}

double l2_norm_1d(const BumpProfile& p) { return p.phi_l2; }

}  // namespace smax
