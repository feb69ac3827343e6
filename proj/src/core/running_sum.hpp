#pragma once

namespace ordstat {

// Double-double accumulator for weight prefix sums. The balance tests of
// the weighted selection compare permuted partial sums against the same
// real quantity; plain doubles round differently per permutation, which
// can leave the acceptance window empty. Error-free transformations keep
// the comparisons order-independent.
struct RunningSum {
    double hi = 0.0;
    double lo = 0.0;

    void add(double w) {
        double s = hi + w;
        double bb = s - hi;
        double err = (hi - (s - bb)) + (w - bb);
        err += lo;
        hi = s + err;
        lo = err - (hi - s);
    }

    // sign of (sum - x): negative, zero or positive
    int compare(double x) const {
        double s = hi - x;
        double bb = s - hi;
        double err = (hi - (s - bb)) + (-x - bb);
        double v = s + (err + lo);
        if (v < 0.0) return -1;
        if (v > 0.0) return 1;
        return 0;
    }

    double value() const { return hi; }
};

} // namespace ordstat
