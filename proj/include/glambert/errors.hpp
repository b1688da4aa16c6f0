#pragma once

#include <stdexcept>
#include <string>

namespace glambert {

// Iteration budget exhausted; carries the last iterate for diagnostics.
class MaxIterError : public std::runtime_error {
public:
    MaxIterError(const std::string& what, double last_value, long iterations,
                 double residual)
        : std::runtime_error(what),
          last_value(last_value),
          iterations(iterations),
          residual(residual) {}

    double last_value;
    long iterations;
    double residual;
};

// A series or quadrature could not reach the requested tolerance within its
// term/level cap. Carries the best value computed and its error estimate.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double best, double error_estimate)
        : std::runtime_error(what), best(best), error_estimate(error_estimate) {}

    double best;
    double error_estimate;
};

}  // namespace glambert
