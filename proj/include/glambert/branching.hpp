#pragma once

#include <cmath>
#include <stdexcept>

#include "glambert/core.hpp"
#include "glambert/errors.hpp"
#include "glambert/params.hpp"

namespace glambert {

// Extinction probabilities of a Galton-Watson process whose offspring law
// has pgf exp(-lambda (1-u)^alpha), 0 < alpha < 1 (alpha = 1, the Poisson
// case, belongs to the classical Lambert W and is rejected here).

struct BranchingParams {
    double lambda;
    double alpha;

    BranchingParams(double lambda_, double alpha_) : lambda(lambda_), alpha(alpha_) {
        if (!(lambda_ > 0.0))
            throw std::domain_error("BranchingParams: lambda must be > 0");
        if (!(alpha_ > 0.0) || !(alpha_ < 1.0))
            throw std::domain_error("BranchingParams: alpha must lie in (0, 1)");
    }
};

inline double pgf(double u, const BranchingParams& bp) {
    if (!(u >= 0.0) || !(u <= 1.0))
        throw std::domain_error("pgf: u must lie in [0, 1]");
    return std::exp(-bp.lambda * std::pow(1.0 - u, bp.alpha));
}

// Minimal fixed point of the pgf, reached monotonically from q_0 = 0.
inline double extinction_pgf_iteration(const BranchingParams& bp, double tol = 1e-12,
                                       long max_iter = 100'000) {
    if (!(tol > 0.0)) throw std::domain_error("extinction_pgf_iteration: tol must be > 0");
    double q = 0.0;
    for (long n = 1; n <= max_iter; ++n) {
        const double qn = pgf(q, bp);
        if (std::abs(qn - q) <= tol) return qn;
        q = qn;
    }
    throw MaxIterError("extinction_pgf_iteration: did not converge", q, max_iter,
                       std::abs(pgf(q, bp) - q));
}

// Same quantity through the root x0 = y_beta(lambda), beta = 1/alpha:
// extinction = e^{-lambda x0} (= 1 - x0^beta, but this form stays
// conditioned when x0 is tiny).
inline double extinction_via_lambert(const BranchingParams& bp, double tol = 1e-13) {
    const Params p(1.0 / bp.alpha);
    EvalOptions opt;
    opt.epsilon = tol;
    const EvalResult r = eval_y(bp.lambda, p, opt);
    return std::exp(-bp.lambda * r.value);
}

}  // namespace glambert
