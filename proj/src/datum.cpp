#include "smax/datum.hpp"

#include <cmath>

#include "smax/errors.hpp"

namespace smax {

InitialDatum make_datum(const Params& params, std::shared_ptr<const BumpProfile> profile) {
    if (!profile) throw Error("make_datum: null profile");
    if (profile->n != params.n) throw Error("make_datum: profile dimension mismatch");
    return InitialDatum{params, std::move(profile)};
}

InitialDatum make_datum(int n, double R, int resolution) {
    Params p = build_params(n, R);
    return InitialDatum{p, std::make_shared<const BumpProfile>(make_profile(n, resolution))};
}

std::complex<double> lattice_axis_sum(const InitialDatum& d, double u, double t) {
    const Params& p = d.params;
    std::complex<double> sum{0.0, 0.0};
    for (long l = p.lattice_lo; l <= p.lattice_hi; ++l) {
        const double phase = p.D * l * u + p.D * p.D * static_cast<double>(l) * l * t;
        sum += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return sum;
}

std::complex<double> f_eval(const InitialDatum& d, Eigen::Ref<const Eigen::VectorXd> x) {
    const Params& p = d.params;
    if (x.size() != p.n) throw Error("f_eval: point dimension mismatch");
    const double phase = p.R * x[0];
    std::complex<double> val(std::cos(phase), std::sin(phase));
    val *= phi_eval(*d.profile, std::sqrt(p.R) * x[0]);
    for (int j = 1; j < p.n; ++j) {
        val *= phi_eval(*d.profile, x[j] / d.profile->a);
        val *= lattice_axis_sum(d, x[j]);
    }
    return val;
}

double l2_norm(const InitialDatum& d) {
    const Params& p = d.params;
    if (p.D < 1.0)
        throw DisjointnessViolated("transverse Fourier bumps overlap: D = " + std::to_string(p.D));
    const double phi2 = l2_norm_1d(*d.profile);
    return std::pow(p.R, -0.25) * std::pow(phi2, p.n) *
           std::pow(d.profile->a * static_cast<double>(p.N), 0.5 * (p.n - 1));
}

Interval fourier_support_bracket(const InitialDatum& d) {
    const Params& p = d.params;
    const double sqrtR = std::sqrt(p.R);
    const double margin = 1.0 / d.profile->a;  // per-axis transverse support radius
    double lo_sq = (p.R - sqrtR) * (p.R - sqrtR);
    double hi_sq = (p.R + sqrtR) * (p.R + sqrtR);
    for (int j = 1; j < p.n; ++j) {
        const double lo = p.D * p.lattice_lo - margin;
        const double hi = p.D * p.lattice_hi + margin;
        lo_sq += lo * lo;
        hi_sq += hi * hi;
    }
    return Interval{std::sqrt(lo_sq), std::sqrt(hi_sq)};
}

Interval hs_norm_bracket(const InitialDatum& d, double s) {
    if (s < 0.0) throw PreconditionViolated("hs_norm_bracket requires s >= 0");
    const Interval r = fourier_support_bracket(d);
    const double norm = l2_norm(d);
    return Interval{std::pow(1.0 + r.lo * r.lo, 0.5 * s) * norm,
                    std::pow(1.0 + r.hi * r.hi, 0.5 * s) * norm};
}

}  // namespace smax
