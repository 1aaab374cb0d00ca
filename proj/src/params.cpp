#include "smax/params.hpp"

#include <cmath>
#include <string>

namespace smax {

Rational target_exponent(int n) {
    if (n < 1) throw DimensionTooSmall("target_exponent requires n >= 1");
    return Rational{static_cast<long>(n), 2L * (n + 1)}.reduced();
}

Params build_params(int n, double R) {
    if (n < 2) throw DimensionTooSmall("build_params requires n >= 2");
    if (!(R > 0.0)) throw Error("build_params requires R > 0");

    Params p;
    p.n = n;
    p.R = R;
    const double two_np1 = 2.0 * (n + 1);
    p.D = std::pow(R, (n + 2) / two_np1);
    p.Q = std::pow(R, (n - 1) / two_np1);
    p.sigma = std::pow(R, -(n - 1) / two_np1);
    p.tau_halfwidth = 0.1 * std::pow(R, -1.5);
    p.target_exp = target_exponent(n);

    // Open interval R/(2D) < l < R/D; boundary integers are excluded. The
    // edges are snapped to nearby integers first so that dyadic R, where the
    // edges are exact powers of two up to rounding in pow(), excludes them.
    auto snap = [](double v) {
        const double r = std::round(v);
        return std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(r)) ? r : v;
    };
    const double lo_edge = snap(R / (2.0 * p.D));
    const double hi_edge = snap(R / p.D);
    p.lattice_lo = static_cast<long>(std::floor(lo_edge)) + 1;
    p.lattice_hi = static_cast<long>(std::ceil(hi_edge)) - 1;
    p.N = p.lattice_hi - p.lattice_lo + 1;
    if (p.N < 1)
        throw EmptyLattice("no integer strictly between R/(2D)=" + std::to_string(lo_edge) +
                           " and R/D=" + std::to_string(hi_edge));
    return p;
}

}  // namespace smax
