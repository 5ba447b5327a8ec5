#pragma once

#include <cmath>

namespace tlab {

// Double-double arithmetic (Dekker/Knuth error-free transforms).
//
// Orbit points and compensated accumulators in the hot loops are kept as
// unevaluated sums hi + lo with |lo| <= ulp(hi)/2, giving ~106 bits of
// precision at a few flops per step.  Rotation numbers enter as DD values
// rounded from the 256-bit fixed-point representation, so the per-step
// error of an orbit is ~2^-106 and stays far below every tolerance in the
// test suites even at n = 10^8.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    explicit DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return DD(s, err);
}

inline DD quick_two_sum(double a, double b) {
    // requires |a| >= |b|
    double s = a + b;
    double err = b - (s - a);
    return DD(s, err);
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return DD(p, err);
}

inline DD dd_add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, lo);
}

inline DD dd_add(const DD& a, double b) {
    DD s = two_sum(a.hi, b);
    double lo = s.lo + a.lo;
    return quick_two_sum(s.hi, lo);
}

inline DD dd_sub(const DD& a, const DD& b) {
    return dd_add(a, DD(-b.hi, -b.lo));
}

inline DD dd_mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, lo);
}

inline DD dd_mul(const DD& a, double b) {
    DD p = two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return quick_two_sum(p.hi, lo);
}

// Fractional part for values in [0, 2): one conditional subtraction.
inline DD dd_wrap1(const DD& a) {
    if (a.hi >= 1.0 || (a.hi + a.lo) >= 1.0)
        return dd_add(a, -1.0);
    if (a.hi < 0.0 || (a.hi + a.lo) < 0.0)
        return dd_add(a, 1.0);
    return a;
}

// General fractional part.
inline DD dd_frac(const DD& a) {
    double f = std::floor(a.hi);
    DD r = dd_add(a, -f);
    return dd_wrap1(r);
}

// Distance to the nearest integer of a value already reduced to [0, 1).
inline double dd_dist_to_Z(const DD& a) {
    double f = a.value();
    return f <= 0.5 ? f : 1.0 - f;
}

// Compensated (Kahan/Neumaier-style) accumulator over DD increments.
struct DDSum {
    DD acc;
    void add(const DD& x) { acc = dd_add(acc, x); }
    void add(double x) { acc = dd_add(acc, x); }
    double value() const { return acc.value(); }
};

} // namespace tlab
