#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "glambert/asymptotics.hpp"
#include "glambert/benchmark.hpp"
#include "glambert/core.hpp"
#include "glambert/distribution.hpp"

namespace glambert {

// Reusable computations behind the study commands. Rows come back in input
// grid order; callers choose the serialization.

inline std::vector<double> arithmetic_grid(double start, double step, double max) {
    if (!(start > 0.0) || !(step > 0.0) || !(start <= max))
        throw std::domain_error("arithmetic_grid: need 0 < start <= max and step > 0");
    std::vector<double> g;
    for (long long k = 0;; ++k) {
        const double v = start + step * static_cast<double>(k);
        if (v > max * (1.0 + 1e-12)) break;
        g.push_back(v);
    }
    return g;
}

inline std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(lo < hi) || count < 2)
        throw std::domain_error("geometric_grid: need 0 < lo < hi and count >= 2");
    std::vector<double> g;
    g.reserve(count);
    const double r = std::log(hi / lo) / (count - 1);
    for (int k = 0; k < count; ++k) g.push_back(lo * std::exp(r * k));
    return g;
}

// Iteration counts N(eps, x) per start strategy: the smallest iterate index
// n >= 1 with |y_n - reference| <= eps, the start iterate counting as n = 1.
// The reference is the benchmark grid value at x.
struct IterationStudyRow {
    double y_target = 0.0;
    double x = 0.0;
    long n_upper = 0;
    long n_lower = 0;
    long n_midpoint = 0;
};

inline std::vector<IterationStudyRow> iteration_study(const Params& p, double eps,
                                                      std::span<const double> y_grid,
                                                      const BenchmarkGrid& grid) {
    if (!(eps > 0.0)) throw std::domain_error("iteration_study: eps must be > 0");
    if (y_grid.empty()) throw std::domain_error("iteration_study: empty grid");

    auto count = [&](double x, double ref, StartStrategy s) {
        EvalOptions opt;
        opt.start = s;
        opt.epsilon = eps;
        opt.stop = StopRule::true_error;
        opt.max_iter = 100'000;
        opt.reference = ref;
        return eval_y(x, p, opt).iterations + 1;
    };

    std::vector<IterationStudyRow> rows;
    rows.reserve(y_grid.size());
    for (double y : y_grid) {
        if (!(y > 0.0) || !(y < 1.0))
            throw std::domain_error("iteration_study: grid values must lie in (0, 1)");
        IterationStudyRow r;
        r.y_target = y;
        r.x = inverse_x(y, p);
        const double ref = benchmark_eval(grid, r.x);
        r.n_upper = count(r.x, ref, StartStrategy::upper());
        r.n_lower = count(r.x, ref, StartStrategy::lower());
        r.n_midpoint = count(r.x, ref, StartStrategy::midpoint());
        rows.push_back(r);
    }
    return rows;
}

// Analytic vs Monte Carlo moments, n = 1..n_max.
struct MomentStudyRow {
    int n = 0;
    double quadrature = 0.0;
    double mc_estimate = 0.0;
    double mc_std_error = 0.0;
};

inline std::vector<MomentStudyRow> moments_study(const Params& p, int n_max,
                                                 long long mc_samples, std::uint64_t seed,
                                                 double tol = 1e-9) {
    if (n_max < 1) throw std::domain_error("moments_study: n_max must be >= 1");
    std::vector<MomentStudyRow> rows;
    rows.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        MomentStudyRow r;
        r.n = n;
        r.quadrature = moment_quadrature(n, p, tol).value;
        const McEstimate mc = mc_moments(n, p, mc_samples, seed);
        r.mc_estimate = mc.estimate;
        r.mc_std_error = mc.std_error;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace glambert
