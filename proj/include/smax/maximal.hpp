#pragma once

#include <Eigen/Dense>

#include "smax/numbertheory.hpp"
#include "smax/propagator.hpp"

namespace smax {

enum class Strategy { Predicted, WindowGrid, Combined };

struct TimeSelection {
    enum class Source { Predicted, GridRefined };
    double t_star = 0.0;
    double s_shift = 0.0;  // s = D^2 tau = 2 pi a_1/q - y_1
    double tau = 0.0;
    Source source = Source::Predicted;
};

struct MaximalEstimate {
    double value = 0.0;     // |e^{it Delta} f(x)| at argmax_t; a lower bound for the sup
    double argmax_t = 0.0;
    Strategy strategy = Strategy::Combined;
    long evaluations = 0;
};

// t* = -x_1/(2R) + s/D^2 with s the y_1 deficit of the approximation.
TimeSelection predicted_time(const OmegaSpec& spec, Eigen::Ref<const Eigen::VectorXd> x,
                             const RationalApprox& approx);

// Structured lower-bound search for sup_{0<t<1} |e^{it Delta} f(x)|:
//   Predicted  — t* for every admissible (q, a_1) plus a nested uniform grid
//                of `budget`+1 points across the tau-window around -x_1/(2R);
//   WindowGrid — nested uniform grid of `budget` points over (0, c/R];
//   Combined   — both.
MaximalEstimate sup_estimate(const InitialDatum& d, const OmegaSpec& spec,
                             Eigen::Ref<const Eigen::VectorXd> x, Strategy strategy, int budget);

double pointwise_ratio(const InitialDatum& d, const OmegaSpec& spec,
                       Eigen::Ref<const Eigen::VectorXd> x, Strategy strategy, int budget);

}  // namespace smax
