#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "tlab/dd.hpp"

namespace tlab {

inline constexpr int kDefaultFracBits = 256;

// Process-wide default precision; the CLI exposes it as --precision-bits.
int default_frac_bits();
void set_default_frac_bits(int bits);

// Fixed-point real: value = mant / 2^bits.
//
// Addition, subtraction, integer multiples and frac() are exact, which is
// what makes {x + n*alpha} computations certifiable: the only error in
// ||k*alpha|| is k times the representation error of alpha itself.
// Rounding ops (mul, div, sqrt) round to nearest unless a directed mode is
// requested; directed rounding backs the interval arithmetic used when
// expanding continued fractions of inexact reals.
class BigFixed {
public:
    enum Round { NEAREST, DOWN, UP };

    BigFixed() : mant_(0), bits_(default_frac_bits()) {}
    BigFixed(const mpz_class& mant, int bits) : mant_(mant), bits_(bits) {}

    static BigFixed from_long(long v, int bits = default_frac_bits());
    static BigFixed from_double(double v, int bits = default_frac_bits());
    // p / q rounded to `bits` fractional bits.
    static BigFixed from_ratio(const mpz_class& p, const mpz_class& q, int bits = default_frac_bits(),
                               Round mode = NEAREST);
    static BigFixed from_mpq(const mpq_class& q, int bits = default_frac_bits(), Round mode = NEAREST);
    // Decimal string, e.g. "0.4142135623730951" or "-3.25".
    static BigFixed from_decimal(const std::string& s, int bits = default_frac_bits());
    // floor(sqrt(n) * 2^bits) / 2^bits for integer n >= 0; error < 1 ulp.
    static BigFixed sqrt_integer(const mpz_class& n, int bits = default_frac_bits());
    // Euler's number to < 1 ulp.
    static BigFixed euler_e(int bits = default_frac_bits());

    int bits() const { return bits_; }
    const mpz_class& mantissa() const { return mant_; }

    BigFixed rescaled(int new_bits, Round mode = NEAREST) const;

    BigFixed operator-() const { return BigFixed(-mant_, bits_); }
    BigFixed operator+(const BigFixed& o) const;
    BigFixed operator-(const BigFixed& o) const;
    // Exact product: fractional bits add; no rounding.
    BigFixed mul_exact(const BigFixed& o) const;
    // Product rounded back to this->bits().
    BigFixed operator*(const BigFixed& o) const;
    BigFixed mul_long(long k) const; // exact
    BigFixed div(const BigFixed& o, Round mode = NEAREST) const;
    BigFixed reciprocal(Round mode = NEAREST) const;
    BigFixed abs() const { return BigFixed(::abs(mant_), bits_); }

    int cmp(const BigFixed& o) const;
    bool operator<(const BigFixed& o) const { return cmp(o) < 0; }
    bool operator<=(const BigFixed& o) const { return cmp(o) <= 0; }
    bool operator>(const BigFixed& o) const { return cmp(o) > 0; }
    bool operator>=(const BigFixed& o) const { return cmp(o) >= 0; }
    bool operator==(const BigFixed& o) const { return cmp(o) == 0; }
    bool operator!=(const BigFixed& o) const { return cmp(o) != 0; }

    bool is_zero() const { return mant_ == 0; }
    int sign() const { return sgn(mant_); }

    mpz_class floor() const;
    BigFixed frac() const; // exact, in [0, 1)
    // min({x}, 1-{x}), exact.
    BigFixed dist_to_Z() const;

    double to_double() const;
    DD to_dd() const;
    std::string to_decimal(int digits = 40) const;

private:
    mpz_class mant_;
    int bits_;
};

// Convenience: ||u|| as a double for a double input (exact in double).
inline double dist_to_Z(double u) {
    double f = u - std::floor(u);
    return f <= 0.5 ? f : 1.0 - f;
}

} // namespace tlab
