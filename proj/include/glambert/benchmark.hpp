#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "glambert/asymptotics.hpp"
#include "glambert/core.hpp"

namespace glambert {

// Node table (x_k, k/m), k = 1..m-1, with x_k = x_beta(k/m): the reference
// piecewise-linear approximation of y_beta. Immutable after construction.
struct BenchmarkGrid {
    Params params;
    int m = 0;
    std::vector<double> xs;
    std::vector<double> ys;
};

inline BenchmarkGrid build_benchmark_grid(const Params& p, int m = 10'000) {
    if (m < 2) throw std::domain_error("build_benchmark_grid: m must be >= 2");
    BenchmarkGrid g{p, m, {}, {}};
    g.xs.reserve(m - 1);
    g.ys.reserve(m - 1);
    for (int k = 1; k < m; ++k) {
        const double y = static_cast<double>(k) / m;
        g.ys.push_back(y);
        g.xs.push_back(inverse_x(y, p));
    }
    return g;
}

// Linear interpolation between nodes; below the first node the third-order
// small-x form takes over (it is sharper than the lower bound there), above
// the last node the upper bound does (sharp as x -> infinity).
inline double benchmark_eval(const BenchmarkGrid& g, double x) {
    detail::check_x_positive(x, "benchmark_eval");
    if (x < g.xs.front()) return approx_second(x, g.params);
    if (x > g.xs.back()) return upper_bound(x, g.params);
    const auto it = std::lower_bound(g.xs.begin(), g.xs.end(), x);
    const auto i = static_cast<std::size_t>(it - g.xs.begin());
    if (g.xs[i] == x) return g.ys[i];
    const double x0 = g.xs[i - 1], x1 = g.xs[i];
    const double y0 = g.ys[i - 1], y1 = g.ys[i];
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

}  // namespace glambert
