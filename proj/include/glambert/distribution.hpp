#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "glambert/core.hpp"
#include "glambert/errors.hpp"
#include "glambert/params.hpp"
#include "glambert/series.hpp"

namespace glambert {

// The random variable xi_beta with cdf y_beta(x): sampling, density,
// moments by double-exponential quadrature, and the exact low-moment
// identities.

enum class MomentMethod { quadrature, closed_form, series, monte_carlo };

struct MomentResult {
    int n = 0;
    double value = 0.0;
    MomentMethod method = MomentMethod::quadrature;
    double error_estimate = 0.0;  // relative
};

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(count)
    long long sample_count = 0;
    std::uint64_t seed = 0;
};

// ------------------------------- cdf family --------------------------------

inline EvalResult cdf_eval(double x, const Params& p, double eps = 1e-12) {
    EvalOptions opt;
    opt.epsilon = eps;
    return eval_y(x, p, opt);
}

inline double cdf(double x, const Params& p) {
    if (x <= 0.0) return 0.0;
    return cdf_eval(x, p).value;
}

// 1 - cdf, exact in the deep right tail.
inline double survival(double x, const Params& p) {
    if (x <= 0.0) return 1.0;
    return cdf_eval(x, p).complement;
}

inline double quantile(double prob, const Params& p) {
    if (!(prob > 0.0) || !(prob < 1.0))
        throw std::domain_error("quantile: p must lie in (0, 1)");
    return inverse_x(prob, p);
}

// Density 1 / x_beta'(y) at y = cdf(x). Zero once y is pinned to an
// endpoint at double precision (x beyond ~745, or so small that the root
// underflows entirely).
inline double pdf(double x, const Params& p) {
    detail::check_x_positive(x, "pdf");
    const EvalResult r = cdf_eval(x, p);
    if (r.value <= 0.0 || r.complement <= 0.0) return 0.0;
    return 1.0 / detail::inverse_x_derivative_pair(r.value, r.complement, p);
}

// ------------------------------- sampling ----------------------------------

// xi = -log(1 - U^beta)/U for uniform U: the same arithmetic as quantile, so
// sample(u) == quantile(u) bit for bit.
inline double sample(double u, const Params& p) {
    if (!(u > 0.0) || !(u < 1.0))
        throw std::domain_error("sample: u must lie in (0, 1)");
    return inverse_x(u, p);
}

// Splittable counter-based generator (splitmix64). The stream for a seed is
// fixed by this header, independent of platform or library version.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0, 1): 2^53 equally spaced midpoints.
    double uniform_open() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53;
    }
};

inline std::vector<double> sample_batch(long long n, const Params& p,
                                        std::uint64_t seed) {
    if (n < 0) throw std::domain_error("sample_batch: n must be >= 0");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    SplitMix64 gen(seed);
    for (long long i = 0; i < n; ++i) out.push_back(sample(gen.uniform_open(), p));
    return out;
}

// ------------------------------- moments -----------------------------------

// E[xi^n] = (-1)^n alpha int_0^1 log^n(1-t) / t^{(n-1) alpha + 1} dt.
// Split at 1/2; substitute t = 1 - e^{-u} on the right half so the log^n
// endpoint becomes plain u^n e^{-u} on a half line. Both pieces go through
// double-exponential rules. tol and error_estimate are relative.
inline MomentResult moment_quadrature(int n, const Params& p, double tol = 1e-10) {
    if (n < 1) throw std::domain_error("moment_quadrature: n must be >= 1");
    if (!(tol > 0.0)) throw std::domain_error("moment_quadrature: tol must be > 0");

    const double nd = n;
    const double pexp = (nd - 1.0) * p.alpha + 1.0;

    // log^n(1-t)/t^pexp dt on (0, 1/2], through exp/log so the t -> 0
    // endpoint (exponent (n-1)(1-alpha) >= 0) cannot produce inf * 0.
    auto left_f = [&](double t) {
        if (t <= 0.0) return (n == 1) ? 1.0 : 0.0;
        const double u = -std::log1p(-t);
        return std::exp(nd * std::log(u) - pexp * std::log(t));
    };
    // u^n e^{-u} (1-e^{-u})^{-pexp} on [log 2, inf), shifted to (0, inf).
    const double a = std::numbers::ln2;
    auto right_f = [&](double v) {
        const double u = a + v;
        return std::exp(nd * std::log(u) - u - pexp * std::log(-std::expm1(-u)));
    };

    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    double err_l = 0.0, err_r = 0.0, l1_l = 0.0, l1_r = 0.0;
    const double left = ts.integrate(left_f, 0.0, 0.5, tol / 4.0, &err_l, &l1_l);
    const double right = es.integrate(right_f, tol / 4.0, &err_r, &l1_r);

    const double value = p.alpha * (left + right);
    // the reported errors are the absolute gaps between the last two levels
    const double rel_err = (err_l + err_r) / (left + right);
    MomentResult res{n, value, MomentMethod::quadrature, rel_err};
    if (!(rel_err <= tol))
        throw ToleranceError("moment_quadrature: tolerance not reached", value, rel_err);
    return res;
}

// E[xi] = zeta(2)/beta = pi^2/(6 beta).
inline double mean_exact(const Params& p) {
    return std::numbers::pi * std::numbers::pi / (6.0 * p.beta);
}

// E[xi^2] = alpha I(alpha) via the regrouped double sum.
inline double second_moment(const Params& p, double tol = 1e-10) {
    return p.alpha * tornheim_I(p.alpha, tol).value;
}

// sigma = sqrt(alpha I(alpha) - pi^4/36 alpha^2); pi^4/36 is zeta(2)^2.
inline double stddev(const Params& p, double tol = 1e-10) {
    const double pi4 = std::pow(std::numbers::pi, 4);
    const double var = second_moment(p, tol) - pi4 / 36.0 * p.alpha * p.alpha;
    return std::sqrt(var);
}

inline McEstimate mc_moments(int n, const Params& p, long long sample_count,
                             std::uint64_t seed) {
    if (n < 1) throw std::domain_error("mc_moments: n must be >= 1");
    if (sample_count < 1) throw std::domain_error("mc_moments: sample_count must be >= 1");
    SplitMix64 gen(seed);
    double sum = 0.0, sumsq = 0.0;
    for (long long i = 0; i < sample_count; ++i) {
        const double xi = sample(gen.uniform_open(), p);
        const double v = std::pow(xi, n);
        sum += v;
        sumsq += v * v;
    }
    const double cnt = static_cast<double>(sample_count);
    const double mean = sum / cnt;
    const double var = std::max(0.0, sumsq / cnt - mean * mean);
    return {mean, std::sqrt(var / cnt), sample_count, seed};
}

// M_n / n!, the running estimate of the factorial-growth constant c_beta.
inline double moment_growth_ratio(int n, const Params& p, double tol = 1e-10) {
    return moment_quadrature(n, p, tol).value / std::tgamma(static_cast<double>(n) + 1.0);
}

}  // namespace glambert
