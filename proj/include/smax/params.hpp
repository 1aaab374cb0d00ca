#pragma once

#include <numeric>

#include "smax/errors.hpp"

namespace smax {

struct Rational {
    long num = 0;
    long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    Rational reduced() const {
        const long g = std::gcd(num, den);
        return {num / g, den / g};
    }
};

// Every scaling quantity of the construction, derived from (n, R).
struct Params {
    int n = 0;             // dimension, >= 2
    double R = 0.0;        // frequency scale
    double D = 0.0;        // transverse lattice spacing R^{(n+2)/(2(n+1))}
    long lattice_lo = 0;   // smallest integer > R/(2D)
    long lattice_hi = 0;   // largest integer < R/D
    long N = 0;            // lattice count per transverse axis
    double Q = 0.0;        // modulus scale R^{(n-1)/(2(n+1))}
    double sigma = 0.0;    // phase-shift window scale R^{-(n-1)/(2(n+1))}
    double tau_halfwidth = 0.0;  // (1/10) R^{-3/2}
    Rational target_exp;   // n / (2(n+1))
};

// Exact blow-up exponent n/(2(n+1)).
Rational target_exponent(int n);

Params build_params(int n, double R);

}  // namespace smax
