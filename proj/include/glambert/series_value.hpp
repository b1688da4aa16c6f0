#pragma once

namespace glambert {

// Value of an infinite sum together with how it was truncated. tail_bound is
// a rigorous majorant of |true value - value|; the majorant used is stated at
// each producing operation.
struct SeriesValue {
    double value = 0.0;
    long long terms_used = 0;
    double tail_bound = 0.0;
};

}  // namespace glambert
