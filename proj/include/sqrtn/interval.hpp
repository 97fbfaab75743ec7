#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sqrtn {

// Reduce x into [0,1). The result of std::floor subtraction can round to
// exactly 1.0 for tiny negative x, so that case is folded back to 0.
inline double mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    return r;
}

// Bounded interval with explicit endpoint flags. Default is half-open
// [lo, hi): grid windows then partition the circle exactly.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool closed_lo = true;
    bool closed_hi = false;

    Interval() = default;
    Interval(double lo_, double hi_, bool closed_lo_ = true, bool closed_hi_ = false)
        : lo(lo_), hi(hi_), closed_lo(closed_lo_), closed_hi(closed_hi_) {
        if (!(lo <= hi)) throw std::invalid_argument("interval: lo > hi");
    }

    static Interval half_open(double lo, double hi) { return Interval(lo, hi, true, false); }
    static Interval closed(double lo, double hi) { return Interval(lo, hi, true, true); }
    static Interval open(double lo, double hi) { return Interval(lo, hi, false, false); }

    double length() const { return hi - lo; }

    bool contains(double x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && !closed_lo) return false;
        if (x == hi && !closed_hi) return false;
        return true;
    }
};

using Box = std::vector<Interval>;

}  // namespace sqrtn
