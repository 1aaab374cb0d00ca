#pragma once

#include <Eigen/Dense>
#include <complex>

#include "smax/datum.hpp"

namespace smax {

// One evaluation request for e^{it Delta} f. Node counts follow the
// phase-resolution rule; node_multiplier exists for refinement checks.
struct EvolutionQuery {
    Eigen::VectorXd x;
    double t = 0.0;
    int min_transverse_nodes = 256;  // effective floor is max(256, this)
    int node_multiplier = 1;
    long node_cap = 100000;          // per axis; exceeding it is an error
};

// Longitudinal factor
//   e^{i(R x_1 + R^2 t)} (2pi)^{-1/2} int phi_hat(lam)
//       e^{i(lam sqrt(R)(x_1 + 2Rt) + lam^2 R t)} dlam.
std::complex<double> axis_factor_longitudinal(const InitialDatum& d, double x1, double t,
                                              const QuadratureRule& rule);

// Transverse factor for one axis:
//   sum_l e^{i(D l x_j + D^2 l^2 t)} (2pi)^{-1/2} int phi_hat(mu)
//       e^{i(mu (x_j + 2 D l t)/a + mu^2 t/a^2)} dmu.
std::complex<double> axis_factor_transverse(const InitialDatum& d, double xj, double t,
                                            const QuadratureRule& rule);

// Exact tensorized evaluation of e^{it Delta} f(x).
std::complex<double> propagate(const InitialDatum& d, const EvolutionQuery& q);
std::complex<double> propagate(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> x,
                               double t);

// prod_j sum_l e^{i(D l x_j + D^2 l^2 t)} over the transverse axes.
std::complex<double> lattice_sum(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> xprime,
                                 double t);

// Short-time approximate modulus phi(sqrt(R)(x_1 + 2Rt)) |lattice_sum|,
// valid for |t| < c/R, |x| < c.
double propagate_approx(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> x, double t,
                        double c = 0.01);

// | |propagate| - propagate_approx | / max(propagate_approx, 1e-12)
double approx_deviation(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> x, double t,
                        double c = 0.01);

// phi_hat sampled at the nodes of the cached Gauss-Legendre rule of size m
// (grid-free values, cached per rule size).
const Eigen::ArrayXd& phi_hat_at_nodes(int m);

// Number of longitudinal nodes the phase-resolution rule picks for (x1, t).
int longitudinal_node_count(const InitialDatum& d, double x1, double t, int multiplier = 1,
                            long cap = 100000);

}  // namespace smax
