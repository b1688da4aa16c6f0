#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "glambert/core.hpp"
#include "glambert/params.hpp"

namespace glambert {

// Small-x machinery: y_beta(x) ~ x^{1/(beta-1)} * z(t) with t = x^{beta/(beta-1)}.

// Coefficients of z(t) = 1 + z1 t + z2 t^2 + z3 t^3 + ...
struct ExpansionCoeffs {
    double z1, z2, z3;
};

inline ExpansionCoeffs expansion_coeffs(const Params& p) {
    const double g = p.beta - 1.0;
    return {-1.0 / (2.0 * g),
            (p.beta + 8.0) / (24.0 * g * g),
            -(p.beta + 3.0) / (12.0 * g * g * g)};
}

inline double truncated_z_series(double t, const ExpansionCoeffs& c) {
    return 1.0 + t * (c.z1 + t * (c.z2 + t * c.z3));
}

// The truncated series is only asymptotically justified for t <= 1.
inline bool in_small_x_regime(double x, const Params& p) {
    detail::check_x_positive(x, "in_small_x_regime");
    return (p.beta / (p.beta - 1.0)) * std::log(x) <= 0.0;
}

namespace detail {

// Returns {x^{1/(beta-1)}, t} or {+inf, +inf} when the exponents overflow
// (x large with beta near 1 -- out of regime by a wide margin).
inline bool small_x_pieces(double x, const Params& p, double& lead, double& t) {
    const double e = 1.0 / (p.beta - 1.0);
    const double lx = std::log(x);
    if (e * lx > 700.0 || (e + 1.0) * lx > 700.0) {
        lead = t = std::numeric_limits<double>::infinity();
        return false;
    }
    lead = std::exp(e * lx);
    t = std::exp((e + 1.0) * lx);  // x^{beta/(beta-1)}
    return true;
}

}  // namespace detail

// First-order form x^{1/(beta-1)} / (1 + t/(2(beta-1))).
inline double approx_first(double x, const Params& p) {
    detail::check_x_positive(x, "approx_first");
    double lead, t;
    if (!detail::small_x_pieces(x, p, lead, t))
        return std::numeric_limits<double>::infinity();
    return lead / (1.0 + t / (2.0 * (p.beta - 1.0)));
}

// Third-order form x^{1/(beta-1)} (1 + z1 t + z2 t^2 + z3 t^3).
inline double approx_second(double x, const Params& p) {
    detail::check_x_positive(x, "approx_second");
    double lead, t;
    if (!detail::small_x_pieces(x, p, lead, t))
        return std::numeric_limits<double>::infinity();
    return lead * truncated_z_series(t, expansion_coeffs(p));
}

// phi(u) = (1 - e^{-u})/u with the removable singularity phi(0) = 1.
inline double phi(double u) {
    if (!(u >= 0.0)) throw std::domain_error("phi: requires u >= 0");
    if (u == 0.0) return 1.0;
    return -std::expm1(-u) / u;
}

// Scaled profile z(t): the root of z^{beta-1} = phi(t z) on (0, 1].
// Safeguarded by plain bisection; the residual changes sign on [1e-12, 1].
inline double z_of_t(double t, const Params& p, double tol = 1e-13) {
    if (!(t >= 0.0)) throw std::domain_error("z_of_t: requires t >= 0");
    if (!(tol > 0.0)) throw std::domain_error("z_of_t: tol must be > 0");
    if (t == 0.0) return 1.0;

    auto res = [&](double z) { return std::pow(z, p.beta - 1.0) - phi(t * z); };
    double lo = 1e-12, hi = 1.0;
    if (res(lo) >= 0.0 || res(hi) < 0.0)
        throw std::runtime_error("z_of_t: residual does not bracket a root");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double r = res(mid);
        if (std::abs(r) <= tol) return mid;
        if (r < 0.0) lo = mid; else hi = mid;
    }
    const double z = 0.5 * (lo + hi);
    if (std::abs(res(z)) > tol)
        throw std::runtime_error("z_of_t: did not reach tolerance");
    return z;
}

// One comparison row of the approximation study: distances of the two
// truncations and of the lower bound from the exact value y (x = x_beta(y),
// so y is the exact function value at x by construction).
struct ApproxDistance {
    double y = 0.0;
    double x = 0.0;
    double d1 = 0.0;       // |approx_first(x) - y|
    double d2 = 0.0;       // |approx_second(x) - y|
    double d_lower = 0.0;  // |lower_bound(x) - y|
};

inline std::vector<ApproxDistance> approx_distances(const Params& p,
                                                    std::span<const double> y_grid) {
    std::vector<ApproxDistance> rows;
    rows.reserve(y_grid.size());
    for (double y : y_grid) {
        if (!(y > 0.0) || !(y < 1.0))
            throw std::domain_error("approx_distances: grid values must lie in (0, 1)");
        ApproxDistance r;
        r.y = y;
        r.x = inverse_x(y, p);
        r.d1 = std::abs(approx_first(r.x, p) - y);
        r.d2 = std::abs(approx_second(r.x, p) - y);
        r.d_lower = std::abs(lower_bound(r.x, p) - y);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace glambert
