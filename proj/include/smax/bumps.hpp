#pragma once

#include <Eigen/Dense>

#include "smax/quadrature.hpp"

namespace smax {

// Envelope pair built from the standard mollifier:
//   psi_hat(lam) = exp(-1/(1-(2 lam)^2)) on [-1/2, 1/2], zero outside;
//   phi = (psi / psi(0))^2, so phi >= 0, phi(0) = 1, supp phi_hat = [-1, 1];
//   Phi(x') = prod_j phi(x_j / a) with a = 2 sqrt(n-1), whose Fourier
//   support cube sits strictly inside B(0, 1/2).
//
// phi and phi_hat are precomputed on uniform grids (local 6-point Lagrange
// interpolation) since they sit in the propagator's inner loops. The
// grid-free *_direct paths below are kept as independent references.
struct BumpProfile {
    int n = 0;
    int resolution = 0;      // grid points on [0, 1] for phi_hat
    double a = 0.0;          // transverse tensor scale 2 sqrt(n-1)
    double u_max = 0.0;      // phi grid covers [0, u_max]
    Eigen::ArrayXd phi_grid;     // phi on uniform grid over [0, u_max]
    Eigen::ArrayXd phihat_grid;  // phi_hat on uniform grid over [0, 1]
    double phi_l2 = 0.0;         // ||phi||_2 on the real line
};

BumpProfile make_profile(int n, int resolution);

double phi_eval(const BumpProfile& p, double u);
double phi_hat_eval(const BumpProfile& p, double lam);
double big_phi_eval(const BumpProfile& p, Eigen::Ref<const Eigen::VectorXd> xprime);
double l2_norm_1d(const BumpProfile& p);

// Grid-free reference paths (also used to build the grids).
double psi_hat(double lam);
double phi_direct(double u);                       // cosine transform of psi_hat, squared
double phi_hat_direct(double lam, int nodes = 192);  // normalized self-convolution

}  // namespace smax
