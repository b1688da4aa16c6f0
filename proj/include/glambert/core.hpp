#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "glambert/errors.hpp"
#include "glambert/params.hpp"
#include "glambert/series_value.hpp"

namespace glambert {

// ---------------------------------------------------------------------------
// The inverse function x_beta(y) = -log(1 - y^beta)/y and friends.
//
// Everything here works on the continuous branch only: y in (0,1), x > 0.
// Near y = 1 the quantity 1 - y^beta underflows the spacing of doubles around
// 1, so the solver-facing entry points carry the complement 1 - y explicitly.
// ---------------------------------------------------------------------------

namespace detail {

// x_beta(y) evaluated from the pair (y, 1-y). Which of the two carries full
// relative precision depends on which side of 1/2 we are on.
inline double inverse_x_pair(double y, double one_minus_y, const Params& p) {
    const double ln_y =
        (one_minus_y <= 0.5) ? std::log1p(-one_minus_y) : std::log(y);
    const double bw = p.beta * ln_y;   // log(y^beta) <= 0
    const double ypow = std::exp(bw);  // y^beta
    if (ypow < 0.5) return -std::log1p(-ypow) / y;
    return -std::log(-std::expm1(bw)) / y;  // log(1-y^beta) without cancellation
}

inline void check_x_positive(double x, const char* who) {
    if (!(x > 0.0))
        throw std::domain_error(std::string(who) + ": requires x > 0");
}

}  // namespace detail

inline double inverse_x(double y, const Params& p) {
    if (y == 0.0) return 0.0;
    if (!(y > 0.0) || !(y < 1.0))
        throw std::domain_error("inverse_x: y must lie in [0, 1)");
    return detail::inverse_x_pair(y, 1.0 - y, p);
}

// Series form sum_{k>=1} y^{beta k - 1}/k; tail bounded by the geometric
// majorant next_term/(1 - y^beta).
inline SeriesValue inverse_x_series(double y, const Params& p, double tol) {
    if (!(y >= 0.0) || !(y < 1.0))
        throw std::domain_error("inverse_x_series: y must lie in [0, 1)");
    if (!(tol > 0.0)) throw std::domain_error("inverse_x_series: tol must be > 0");
    SeriesValue out;
    if (y == 0.0) return out;  // empty sum

    const double ypb = std::pow(y, p.beta);
    const double ratio_bound = 1.0 - ypb;
    double term = std::pow(y, p.beta - 1.0);  // k = 1
    double sum = 0.0;
    constexpr long long cap = 10'000'000;
    for (long long k = 1; k <= cap; ++k) {
        sum += term / static_cast<double>(k);
        term *= ypb;
        const double tail = term / (static_cast<double>(k + 1) * ratio_bound);
        if (tail <= tol) {
            out.value = sum;
            out.terms_used = k;
            out.tail_bound = tail;
            return out;
        }
    }
    throw ToleranceError("inverse_x_series: tail bound cannot reach tol (y too close to 1)",
                         sum, term / ratio_bound);
}

namespace detail {

// d x_beta / d y = beta y^{beta-2}/(1-y^beta) + log(1-y^beta)/y^2.
// The two terms cancel to (beta-1) y^{beta-2} as y -> 0, so switch to the
// series sum_k y^{beta k - 2} (beta k - 1)/k there.
inline double inverse_x_derivative_pair(double y, double one_minus_y, const Params& p) {
    const double ln_y =
        (one_minus_y <= 0.5) ? std::log1p(-one_minus_y) : std::log(y);
    const double bw = p.beta * ln_y;
    const double ypow = std::exp(bw);  // y^beta
    if (ypow < 1e-3) {
        double deriv = 0.0;
        double yk = std::exp((p.beta - 2.0) * ln_y);  // y^{beta k - 2} at k = 1
        for (int k = 1; k <= 4; ++k) {
            deriv += yk * (p.beta * k - 1.0) / static_cast<double>(k);
            yk *= ypow;
        }
        return deriv;
    }
    const double omyp = -std::expm1(bw);  // 1 - y^beta
    const double log_omyp = (ypow < 0.5) ? std::log1p(-ypow) : std::log(omyp);
    return p.beta * std::exp((p.beta - 2.0) * ln_y) / omyp + log_omyp / (y * y);
}

}  // namespace detail

inline double inverse_x_derivative(double y, const Params& p) {
    if (!(y > 0.0) || !(y < 1.0))
        throw std::domain_error("inverse_x_derivative: y must lie in (0, 1)");
    return detail::inverse_x_derivative_pair(y, 1.0 - y, p);
}

// One application of the map y |-> (1 - e^{-x y})^alpha.
inline double fixed_point_map(double y, double x, const Params& p) {
    detail::check_x_positive(x, "fixed_point_map");
    if (!(y >= 0.0) || !(y <= 1.0))
        throw std::domain_error("fixed_point_map: y must lie in [0, 1]");
    return std::pow(-std::expm1(-x * y), p.alpha);
}

// Derivative of the map, g(y) = alpha x (1-e^{-xy})^{alpha-1} e^{-xy}.
// At the fixed point g <= alpha < 1; it diverges as y -> 0.
inline double contraction_factor(double y, double x, const Params& p) {
    detail::check_x_positive(x, "contraction_factor");
    if (!(y > 0.0))
        throw std::domain_error("contraction_factor: requires y > 0");
    const double omq = -std::expm1(-x * y);
    return p.alpha * x * std::pow(omq, p.alpha - 1.0) * std::exp(-x * y);
}

// --------------------------- two-sided bounds ------------------------------

inline double lower_bound(double x, const Params& p) {
    detail::check_x_positive(x, "lower_bound");
    return std::pow(-std::expm1(-x), 1.0 / (p.beta - 1.0));
}

inline double upper_bound(double x, const Params& p) {
    detail::check_x_positive(x, "upper_bound");
    return std::pow(-std::expm1(-x), p.alpha);
}

// Complements 1 - bound, exact where the bounds themselves round to 1.
inline double lower_bound_complement(double x, const Params& p) {
    detail::check_x_positive(x, "lower_bound_complement");
    return -std::expm1(std::log1p(-std::exp(-x)) / (p.beta - 1.0));
}

inline double upper_bound_complement(double x, const Params& p) {
    detail::check_x_positive(x, "upper_bound_complement");
    return -std::expm1(std::log1p(-std::exp(-x)) * p.alpha);
}

// upper/lower = (1 + 1/(e^x - 1))^kappa with kappa = alpha^2/(1-alpha).
inline double bound_ratio(double x, const Params& p) {
    detail::check_x_positive(x, "bound_ratio");
    const double kappa = p.alpha * p.alpha / (1.0 - p.alpha);
    return std::exp(kappa * std::log1p(1.0 / std::expm1(x)));
}

// ------------------------------ the solver ---------------------------------

enum class StopRule { successive_diff, true_error, residual };

struct StartStrategy {
    enum class Kind { upper_bound, lower_bound, midpoint, constant };
    Kind kind = Kind::constant;
    double theta = 1.0;  // only for Kind::constant

    static StartStrategy upper() { return {Kind::upper_bound, 0.0}; }
    static StartStrategy lower() { return {Kind::lower_bound, 0.0}; }
    static StartStrategy midpoint() { return {Kind::midpoint, 0.0}; }
    static StartStrategy constant(double theta) {
        if (!(theta > 0.0) || !(theta <= 1.0))
            throw std::domain_error("StartStrategy::constant: theta must lie in (0, 1]");
        return {Kind::constant, theta};
    }
};

struct EvalResult {
    double value = 0.0;       // y_beta(x), clamped strictly below 1
    double complement = 0.0;  // 1 - y_beta(x) to full relative precision
    long iterations = 0;      // map applications performed
    double residual = 0.0;    // |y^beta - (1 - e^{-x y})| at the returned y
    StopRule stop_rule = StopRule::residual;
    StartStrategy start;
};

struct EvalOptions {
    StartStrategy start = StartStrategy::constant(1.0);
    double epsilon = 1e-12;
    StopRule stop = StopRule::residual;
    long max_iter = 10'000;
    // Reference value for StopRule::true_error (e.g. a benchmark grid value).
    std::optional<double> reference;
};

namespace detail {

inline double start_value(const StartStrategy& s, double x, const Params& p) {
    switch (s.kind) {
        case StartStrategy::Kind::upper_bound: return upper_bound(x, p);
        case StartStrategy::Kind::lower_bound: return lower_bound(x, p);
        case StartStrategy::Kind::midpoint:
            return 0.5 * (lower_bound(x, p) + upper_bound(x, p));
        case StartStrategy::Kind::constant: return s.theta;
    }
    return 1.0;
}

// 1 - y to full relative precision, recovered through the fixed-point
// equation itself: d = 1 - (1 - e^{-x y})^alpha. The ulp-level quantization
// of y only enters multiplicatively via e^{-x y}, so d keeps ~x*ulp relative
// accuracy even when it is far below the double spacing around 1.
inline double refine_complement(double y, double x, const Params& p) {
    if (y <= 0.5) return 1.0 - y;
    const double q = std::exp(-x * y);
    if (q >= 1.0) return 1.0 - y;
    return -std::expm1(p.alpha * std::log1p(-q));
}

}  // namespace detail

// Solve y^beta = 1 - e^{-x y} for the non-trivial root in (0, 1) by iterating
// the map above from the chosen start.
//
// Stop rules:
//   successive_diff : |y_{n+1} - y_n| <= eps
//   true_error      : |y_n - reference| <= eps, the start iterate included
//   residual        : |y^beta - (1-e^{-xy})| <= eps * max(y^beta, 1-e^{-xy}).
// The residual test is scaled so it stays meaningful when the root is tiny
// (y ~ x^{1/(beta-1)} underflows any absolute equation-space tolerance);
// since the scale is <= 1 the reported absolute residual still ends <= eps.
inline EvalResult eval_y(double x, const Params& p, const EvalOptions& opt = {}) {
    detail::check_x_positive(x, "eval_y");
    if (!(opt.epsilon > 0.0)) throw std::domain_error("eval_y: epsilon must be > 0");
    if (opt.max_iter < 1) throw std::domain_error("eval_y: max_iter must be >= 1");
    if (opt.stop == StopRule::true_error && !opt.reference)
        throw std::domain_error("eval_y: true_error stop needs a reference value");

    auto abs_residual = [&](double y) {
        const double w = -std::expm1(-x * y);
        const double yb = std::pow(y, p.beta);
        return std::abs(yb - w);
    };

    auto finish = [&](double y, long n) {
        EvalResult r;
        r.complement = detail::refine_complement(y, x, p);
        r.value = (y < 1.0) ? y : std::nextafter(1.0, 0.0);
        r.iterations = n;
        r.residual = abs_residual(y);
        r.stop_rule = opt.stop;
        r.start = opt.start;
        return r;
    };

    double y = detail::start_value(opt.start, x, p);
    if (opt.stop == StopRule::true_error && std::abs(y - *opt.reference) <= opt.epsilon)
        return finish(y, 0);

    for (long n = 1; n <= opt.max_iter; ++n) {
        const double yn = std::pow(-std::expm1(-x * y), p.alpha);
        bool done = false;
        switch (opt.stop) {
            case StopRule::successive_diff:
                done = std::abs(yn - y) <= opt.epsilon;
                break;
            case StopRule::true_error:
                done = std::abs(yn - *opt.reference) <= opt.epsilon;
                break;
            case StopRule::residual: {
                const double w = -std::expm1(-x * yn);
                const double yb = std::pow(yn, p.beta);
                done = std::abs(yb - w) <= opt.epsilon * std::max(yb, w);
                break;
            }
        }
        y = yn;
        if (done) return finish(y, n);
    }
    throw MaxIterError("eval_y: stop rule did not fire within max_iter",
                       y, opt.max_iter, abs_residual(y));
}

// x_beta applied to a solver result. Uses the complement, so the composition
// inverse_x(eval_y(x)) stays accurate out to large x where 1 - y is far
// below the double spacing around 1.
inline double inverse_x(const EvalResult& r, const Params& p) {
    if (!(r.complement > 0.0) || !(r.value > 0.0))
        throw std::domain_error("inverse_x: result must lie strictly inside (0, 1)");
    return detail::inverse_x_pair(r.value, r.complement, p);
}

// ------------------------- branching-side helpers --------------------------

// F(x) = e^{-lambda x} - 1 + x^beta; root in (0,1) is y_beta(lambda).
inline double F_extinction(double x, double lambda, const Params& p) {
    if (!(lambda > 0.0)) throw std::domain_error("F_extinction: lambda must be > 0");
    if (!(x >= 0.0) || !(x <= 1.0))
        throw std::domain_error("F_extinction: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    return std::expm1(-lambda * x) + std::pow(x, p.beta);
}

// Bracket F by scanning 2^{-j}, j = 0..60, downward from 1, then bisect.
// No detectable sign change (beta close to 1) reports an empty optional.
inline std::optional<double> bisection_root(double lambda, const Params& p, double tol) {
    if (!(lambda > 0.0)) throw std::domain_error("bisection_root: lambda must be > 0");
    if (!(tol > 0.0)) throw std::domain_error("bisection_root: tol must be > 0");

    double hi = 1.0;
    double lo = std::numeric_limits<double>::quiet_NaN();
    double x = 1.0;
    for (int j = 1; j <= 60; ++j) {
        const double xn = x * 0.5;
        const double f = F_extinction(xn, lambda, p);
        if (f == 0.0) return xn;
        if (f < 0.0) { lo = xn; hi = x; break; }
        x = xn;
    }
    if (std::isnan(lo)) return std::nullopt;

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (F_extinction(mid, lambda, p) < 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace glambert
