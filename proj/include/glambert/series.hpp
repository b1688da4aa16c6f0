#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "glambert/errors.hpp"
#include "glambert/series_value.hpp"

namespace glambert {

// Zeta values, harmonic-weighted sums, and the double sum
// I(alpha) = sum_{k,m} 1/(k m (k+m-alpha)).
//
// All sums here are evaluated as partial sum + analytic tail: the summand is
// replaced beyond N by its smooth extension (H_n expanded through 1/(12 n^2))
// and integrated from N+1/2. The midpoint rule then leaves an error bounded
// by (|f''(N)| + |f'(N)|)/24 for monotone f'', which is the majorant family
// reported in tail_bound. Plain partial sums would need ~1e9 terms to reach
// the tolerances the harmonic-weighted identities are used at.

inline double harmonic(long long n) {
    if (n < 0) throw std::domain_error("harmonic: n must be >= 0");
    double h = 0.0;
    for (long long k = 1; k <= n; ++k) h += 1.0 / static_cast<double>(k);
    return h;
}

namespace detail {

constexpr long long series_term_cap = 100'000'000;

// int_a^inf (log x + gamma) x^{-p} dx
inline double tail_logpow(double a, double p) {
    const double g = std::numbers::egamma;
    return std::pow(a, 1.0 - p) * ((std::log(a) + g) / (p - 1.0) + 1.0 / ((p - 1.0) * (p - 1.0)));
}

// int_a^inf x^{-p} dx
inline double tail_pow(double a, double p) {
    return std::pow(a, 1.0 - p) / (p - 1.0);
}

// Tail of sum_{n>N} (H_{n +/- 0} approximation) / n^p with the harmonic
// weight expanded as log n + gamma + c1/n + c2/n^2.
inline double harmonic_tail(double a, double p, double c1, double c2) {
    return tail_logpow(a, p) + c1 * tail_pow(a, p + 1.0) + c2 * tail_pow(a, p + 2.0);
}

}  // namespace detail

// zeta(s) for real s > 1: direct sum to N plus the integral tail from N+1/2.
// Majorant: s(s+2)/(12 N^{s+1}).
inline SeriesValue zeta_real(double s, double tol = 1e-12) {
    if (!(s > 1.0)) throw std::domain_error("zeta_real: s must exceed 1");
    if (!(tol > 0.0)) throw std::domain_error("zeta_real: tol must be > 0");

    auto majorant = [&](double n) { return s * (s + 2.0) / (12.0 * std::pow(n, s + 1.0)); };
    long long N = 64;
    while (majorant(static_cast<double>(N)) > tol) {
        if (N >= detail::series_term_cap)
            throw ToleranceError("zeta_real: term cap reached (s too close to 1)",
                                 0.0, majorant(static_cast<double>(N)));
        N *= 2;
    }
    double sum = 0.0;
    for (long long n = 1; n <= N; ++n) sum += std::pow(static_cast<double>(n), -s);
    const double a = static_cast<double>(N) + 0.5;
    return {sum + detail::tail_pow(a, s), N, majorant(static_cast<double>(N))};
}

// S_k = sum_n H_n / n^k for integer k >= 2.
// Majorant: (k (log N + 1) + 2) / (8 N^{k+1}).
inline SeriesValue euler_sum_S(int k, double tol = 1e-11) {
    if (k < 2) throw std::domain_error("euler_sum_S: k must be >= 2");
    if (!(tol > 0.0)) throw std::domain_error("euler_sum_S: tol must be > 0");

    const double kd = k;
    auto majorant = [&](double n) {
        return (kd * (std::log(n) + 1.0) + 2.0) / (8.0 * std::pow(n, kd + 1.0));
    };
    long long N = 1'000;
    while (majorant(static_cast<double>(N)) > tol) {
        if (N >= detail::series_term_cap)
            throw ToleranceError("euler_sum_S: term cap reached", 0.0,
                                 majorant(static_cast<double>(N)));
        N *= 2;
    }
    double H = 0.0, sum = 0.0;
    for (long long n = 1; n <= N; ++n) {
        H += 1.0 / static_cast<double>(n);
        sum += H / std::pow(static_cast<double>(n), kd);
    }
    const double a = static_cast<double>(N) + 0.5;
    // H_n = log n + gamma + 1/(2n) - 1/(12 n^2) + O(n^-4)
    const double tail = detail::harmonic_tail(a, kd, 0.5, -1.0 / 12.0);
    return {sum + tail, N, majorant(static_cast<double>(N))};
}

// A_l = 2 sum_{n>=2} H_{n-1} / n^{l+2}, through the zeta identity
// A_l = 2 S_{l+2} - 2 zeta(l+3).
inline SeriesValue a_coeff(int l, double tol = 1e-10) {
    if (l < 0) throw std::domain_error("a_coeff: l must be >= 0");
    if (!(tol > 0.0)) throw std::domain_error("a_coeff: tol must be > 0");
    const SeriesValue S = euler_sum_S(l + 2, tol / 4.0);
    const SeriesValue Z = zeta_real(static_cast<double>(l) + 3.0, tol / 4.0);
    return {2.0 * (S.value - Z.value), S.terms_used + Z.terms_used,
            2.0 * (S.tail_bound + Z.tail_bound)};
}

// Direct evaluation of the same sum, kept as the independent route for
// cross-checks. H_{n-1} = log n + gamma - 1/(2n) - 1/(12 n^2) + O(n^-4).
inline SeriesValue a_coeff_direct(int l, double tol = 1e-10) {
    if (l < 0) throw std::domain_error("a_coeff_direct: l must be >= 0");
    if (!(tol > 0.0)) throw std::domain_error("a_coeff_direct: tol must be > 0");

    const double p = static_cast<double>(l) + 2.0;
    auto majorant = [&](double n) {
        return (p * (std::log(n) + 1.0) + 2.0) / (4.0 * std::pow(n, p + 1.0));
    };
    long long N = 1'000;
    while (majorant(static_cast<double>(N)) > tol) {
        if (N >= detail::series_term_cap)
            throw ToleranceError("a_coeff_direct: term cap reached", 0.0,
                                 majorant(static_cast<double>(N)));
        N *= 2;
    }
    double H = 0.0, sum = 0.0;
    for (long long n = 2; n <= N; ++n) {
        H += 1.0 / static_cast<double>(n - 1);  // H_{n-1}
        sum += 2.0 * H / std::pow(static_cast<double>(n), p);
    }
    const double a = static_cast<double>(N) + 0.5;
    const double tail = 2.0 * detail::harmonic_tail(a, p, -0.5, -1.0 / 12.0);
    return {sum + tail, N, majorant(static_cast<double>(N))};
}

// I(alpha) by the diagonal regrouping n = k + m:
//   I(alpha) = sum_{n>=2} 2 H_{n-1} / (n (n - alpha)),
// an O(N) sum instead of the O(N^2) double sum. The tail expands
// 1/(n - alpha) geometrically in alpha/n (ratio < 1e-4 at the cut), each
// piece integrating in closed form.
inline SeriesValue tornheim_I(double alpha, double tol = 1e-10) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("tornheim_I: alpha must lie in (0, 1)");
    if (!(tol > 0.0)) throw std::domain_error("tornheim_I: tol must be > 0");

    auto majorant = [&](double n) { return 8.0 * (std::log(n) + 2.0) / (n * n * n); };
    long long N = 1'000;
    while (majorant(static_cast<double>(N)) > tol) {
        if (N >= detail::series_term_cap)
            throw ToleranceError("tornheim_I: term cap reached", 0.0,
                                 majorant(static_cast<double>(N)));
        N *= 2;
    }
    double H = 0.0, sum = 0.0;
    for (long long n = 2; n <= N; ++n) {
        const double nd = static_cast<double>(n);
        H += 1.0 / (nd - 1.0);  // H_{n-1}
        sum += 2.0 * H / (nd * (nd - alpha));
    }
    const double a = static_cast<double>(N) + 0.5;
    double tail = 0.0;
    double apow = 1.0;
    constexpr int J = 8;
    for (int j = 0; j <= J; ++j) {
        tail += 2.0 * apow * detail::harmonic_tail(a, static_cast<double>(j) + 2.0, -0.5, -1.0 / 12.0);
        apow *= alpha;
    }
    // geometric remainder of the 1/(n-alpha) expansion
    const double rem = 2.0 * apow * detail::tail_logpow(a, J + 3.0) / (1.0 - alpha / a);
    return {sum + tail, N, majorant(static_cast<double>(N)) + rem};
}

// Brute-force box truncation of the double sum, for oracle use only.
// Positive terms: the result is a strict lower bound on I(alpha).
inline double tornheim_I_double_sum(double alpha, int K) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("tornheim_I_double_sum: alpha must lie in (0, 1)");
    if (K < 1) throw std::domain_error("tornheim_I_double_sum: K must be >= 1");
    double sum = 0.0;
    for (int k = K; k >= 1; --k)
        for (int m = K; m >= 1; --m)
            sum += 1.0 / (static_cast<double>(k) * m * (k + m - alpha));
    return sum;
}

// I(alpha) as the power series sum_l A_l alpha^l. The coefficients obey
// A_l <= 2.58 * 2^-l (from A_l <= 2(zeta(l+1) - 1)), giving a geometric
// cut criterion.
inline SeriesValue I_generating(double alpha, double tol = 1e-10) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("I_generating: alpha must lie in (0, 1)");
    if (!(tol > 0.0)) throw std::domain_error("I_generating: tol must be > 0");

    const double r = alpha / 2.0;
    auto geom_rem = [&](int L) { return 2.58 * std::pow(r, L + 1) / (1.0 - r); };
    int L = 0;
    while (geom_rem(L) > tol / 2.0) {
        if (++L > 200)
            throw ToleranceError("I_generating: coefficient cap reached", 0.0, geom_rem(L));
    }
    const double per_term_tol = tol / (2.0 * (L + 1));
    double sum = 0.0, bound = geom_rem(L), apow = 1.0;
    long long terms = 0;
    for (int l = 0; l <= L; ++l) {
        const SeriesValue A = a_coeff(l, per_term_tol);
        sum += A.value * apow;
        bound += A.tail_bound * apow;
        terms += A.terms_used;
        apow *= alpha;
    }
    return {sum, terms, bound};
}

}  // namespace glambert
