#pragma once

#include <stdexcept>
#include <string>

namespace glambert {

// Shape parameter pair for y^beta = 1 - exp(-x y). Requires beta > 1; alpha
// is the reciprocal, kept alongside because every formula uses both.
struct Params {
    double beta;
    double alpha;

    explicit Params(double beta_) : beta(beta_), alpha(1.0 / beta_) {
        // Exponents 1/(beta-1) overflow working precision past this point.
        if (!(beta_ > 1.0 + 1e-9))
            throw std::domain_error("Params: beta must exceed 1 (got " +
                                    std::to_string(beta_) + ")");
    }
};

}  // namespace glambert
