#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "smax/params.hpp"

namespace smax {

// (q, a_1, a') with gcd(a_1, q) = 1 and q odd, approximating a torus point.
struct RationalApprox {
    long q = 0;
    long a1 = 0;
    std::vector<long> aprime;
};

// y in [0, 2pi)^n under the change of variables
//   y_1 = -D^2 x_1 / (2R)  (mod 2pi),   y' = D x'  (mod 2pi).
struct TorusPoint {
    double y1 = 0.0;
    Eigen::VectorXd yprime;
};

// The set Omega: torus points within c*sigma of 2pi a_1/q in y_1 and within
// c*D/R of 2pi a'_j/q in each transverse coordinate, for some odd q in
// [q_lo, q_hi] with gcd(a_1, q) = 1. Distances are taken mod 2pi,
// componentwise (max-norm) in y'.
struct OmegaSpec {
    Params params;
    double c = 0.05;
    long q_lo = 0;
    long q_hi = 0;

    static OmegaSpec make(const Params& p, double c = 0.05);
};

// sum_{l=0}^{q-1} exp(2 pi i (a l^2 + b l) / q), exact integer phase
// arithmetic mod q before any trigonometry.
std::complex<double> gauss_sum(long q, long a, long b);

// | |gauss_sum(q,a,b)| - sqrt(q) |; requires q odd and gcd(a, q) = 1,
// in which case the modulus law makes this vanish.
double gauss_modulus_check(long q, long a, long b);

struct IncompleteSum {
    std::complex<double> value;
    long blocks = 0;     // full residue blocks in the open interval (lo, hi)
    long remainder = 0;  // leftover terms
};

// sum over lo < l < hi of exp(2 pi i (a l^2 + b l)/q). The summand is
// q-periodic in l, so |value - blocks * gauss_sum| <= remainder + q.
IncompleteSum incomplete_gauss_sum(long lo, long hi, long q, long a, long b);

TorusPoint torus_map(const Params& p, Eigen::Ref<const Eigen::VectorXd> x);

// Best admissible rational approximation (minimal y_1 deficit), if any.
std::optional<RationalApprox> rational_approx(const OmegaSpec& spec, const TorusPoint& y);

bool omega_contains(const OmegaSpec& spec, const TorusPoint& y);

struct MeasureEstimate {
    double fraction = 0.0;
    double stderr_ = 0.0;
};

// Monte Carlo fraction of uniform torus points lying in Omega.
MeasureEstimate omega_measure_estimate(const OmegaSpec& spec, std::uint64_t seed, long m);

struct OmegaSample {
    Eigen::VectorXd x;
    RationalApprox approx;
};

// Draw x in B(0, x_radius) with x_1 < 0 whose torus image lies in Omega:
// pick (q, a), a uniform point of its window, then a uniform branch of the
// (2.5)-type pullback. Retries with fresh rationals when no branch fits.
OmegaSample sample_omega_pullback(const OmegaSpec& spec, std::uint64_t seed,
                                  double x_radius = 1.0);

// distance to the nearest multiple of 2pi, in [0, pi]
double circle_dist(double d);

}  // namespace smax
