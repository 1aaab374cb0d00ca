#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>

#include "smax/bumps.hpp"
#include "smax/params.hpp"

namespace smax {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// The initial datum
//   f(x) = e(R x_1) phi(sqrt(R) x_1) Phi(x') prod_j sum_l e^{i D l x_j},
// with the sum over lattice_lo <= l <= lattice_hi on each transverse axis.
struct InitialDatum {
    Params params;
    std::shared_ptr<const BumpProfile> profile;
};

InitialDatum make_datum(const Params& params, std::shared_ptr<const BumpProfile> profile);
InitialDatum make_datum(int n, double R, int resolution = 4096);

std::complex<double> f_eval(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> x);

// Exact L2 norm via Plancherel: the shifted transverse Fourier bumps are
// pairwise disjoint, so
//   ||f||_2 = R^{-1/4} ||phi||_2^n (a N)^{(n-1)/2}.
double l2_norm(const InitialDatum& d);

// [r_min, r_max] bracketing |xi| over the Fourier support box.
Interval fourier_support_bracket(const InitialDatum& d);

// [(1+r_min^2)^{s/2}, (1+r_max^2)^{s/2}] * l2_norm.
Interval hs_norm_bracket(const InitialDatum& d, double s);

// Transverse lattice factor sum_l e^{i D l u} for one axis.
std::complex<double> lattice_axis_sum(const InitialDatum& d, double u, double t = 0.0);

}  // namespace smax
