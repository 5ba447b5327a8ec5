#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "tlab/bigfixed.hpp"

namespace tlab {

// A real number tracked as exactly as the input allows:
//   RATIONAL   p/q exact
//   SURD       (a + b*sqrt(D))/c exact, D > 0 not a perfect square, b != 0
//   NUMERIC    BigFixed approximation with a certified error bound (ulps)
//
// Arithmetic stays exact as long as operands share the same D; mixing
// incompatible surds (e.g. sqrt(2) - sqrt(3)) demotes to NUMERIC with the
// error bound carried along.  Continued-fraction expansion picks the exact
// Gauss-map path for RATIONAL/SURD and certified interval arithmetic for
// NUMERIC.
class ExactReal {
public:
    enum Kind { RATIONAL, SURD, NUMERIC };

    ExactReal() : kind_(RATIONAL), rat_(0) {}

    static ExactReal from_rational(const mpq_class& q);
    static ExactReal from_long(long v) { return from_rational(mpq_class(v)); }
    // (a + b sqrt(D)) / c
    static ExactReal surd(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                          const mpz_class& D);
    static ExactReal numeric(const BigFixed& v, double err_ulps);
    static ExactReal euler_e(int bits = default_frac_bits());

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ != NUMERIC; }

    const mpq_class& rational() const { return rat_; }
    const mpz_class& surd_a() const { return a_; }
    const mpz_class& surd_b() const { return b_; }
    const mpz_class& surd_c() const { return c_; }
    const mpz_class& surd_D() const { return D_; }

    ExactReal operator+(const ExactReal& o) const;
    ExactReal operator-(const ExactReal& o) const;
    ExactReal operator*(const ExactReal& o) const;
    ExactReal operator/(const ExactReal& o) const;
    ExactReal operator-() const;
    ExactReal sqrt() const;
    // value - floor(value), staying in the same representation
    ExactReal mod1() const;

    int sign() const;

    // Approximation to `bits` fractional bits; for NUMERIC sources the
    // result is only as good as the stored approximation allows.
    BigFixed approx(int bits = default_frac_bits()) const;
    // Certified absolute error of approx(bits), as a power of two exponent:
    // |approx - value| <= 2^err_exp2.
    int err_exp2(int bits = default_frac_bits()) const;
    double to_double() const { return approx(64).to_double(); }

    std::string describe() const;

private:
    void normalize_surd();
    BigFixed numeric_value(int bits) const;

    Kind kind_;
    mpq_class rat_;                 // RATIONAL
    mpz_class a_, b_, c_, D_;       // SURD
    BigFixed num_;                  // NUMERIC
    double num_err_ulps_ = 0.0;     // NUMERIC error bound in ulps of num_
};

// Parse an arithmetic expression over integers, decimals, sqrt(...), 'e',
// 'golden'/'phi', with + - * / and parentheses.  Examples:
//   "sqrt(2)-1"   "(sqrt(5)-1)/2"   "e-2"   "0.7320508"
ExactReal parse_real(const std::string& expr);

} // namespace tlab
