#include "tlab/bigfixed.hpp"

#include <sstream>
#include <stdexcept>

namespace tlab {

namespace {

// Divide num by den with the requested rounding of the quotient.
mpz_class div_rounded(const mpz_class& num, const mpz_class& den, BigFixed::Round mode) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t()); // floor division
    if (mode == BigFixed::DOWN)
        return q;
    if (r == 0)
        return q;
    if (mode == BigFixed::UP)
        return q + 1;
    mpz_class twice = 2 * (den < 0 ? mpz_class(-r) : r);
    mpz_class ad = ::abs(den);
    if (twice >= ad)
        return q + 1;
    return q;
}

} // namespace

BigFixed BigFixed::from_long(long v, int bits) {
    mpz_class m(v);
    m <<= bits;
    return BigFixed(m, bits);
}

BigFixed BigFixed::from_double(double v, int bits) {
    mpq_class q(v);
    return from_mpq(q, bits);
}

BigFixed BigFixed::from_ratio(const mpz_class& p, const mpz_class& q, int bits, Round mode) {
    if (q == 0)
        throw std::invalid_argument("BigFixed: division by zero ratio");
    mpz_class num = p;
    num <<= bits;
    return BigFixed(div_rounded(num, q, mode), bits);
}

BigFixed BigFixed::from_mpq(const mpq_class& q, int bits, Round mode) {
    return from_ratio(q.get_num(), q.get_den(), bits, mode);
}

BigFixed BigFixed::from_decimal(const std::string& s, int bits) {
    std::string t = s;
    bool neg = false;
    size_t i = 0;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
        neg = t[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = -1;
    for (; i < t.size(); ++i) {
        char c = t[i];
        if (c == '.') {
            if (frac_digits >= 0)
                throw std::invalid_argument("bad decimal literal: " + s);
            frac_digits = 0;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (frac_digits >= 0)
                ++frac_digits;
        } else {
            throw std::invalid_argument("bad decimal literal: " + s);
        }
    }
    if (digits.empty())
        throw std::invalid_argument("bad decimal literal: " + s);
    if (frac_digits < 0)
        frac_digits = 0;
    mpz_class num(digits, 10);
    if (neg)
        num = -num;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
    return from_ratio(num, den, bits);
}

BigFixed BigFixed::sqrt_integer(const mpz_class& n, int bits) {
    if (n < 0)
        throw std::invalid_argument("sqrt of negative integer");
    mpz_class scaled = n;
    scaled <<= (2 * bits);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    return BigFixed(root, bits);
}

BigFixed BigFixed::euler_e(int bits) {
    // sum 1/k! with 32 guard bits, then round back
    int work = bits + 32;
    mpz_class acc(0);
    mpz_class term(1);
    term <<= work;
    unsigned long k = 0;
    while (term != 0) {
        acc += term;
        ++k;
        term = div_rounded(term, mpz_class(k), DOWN);
    }
    BigFixed wide(acc, work);
    return wide.rescaled(bits);
}

BigFixed BigFixed::rescaled(int new_bits, Round mode) const {
    if (new_bits == bits_)
        return *this;
    if (new_bits > bits_) {
        mpz_class m = mant_;
        m <<= (new_bits - bits_);
        return BigFixed(m, new_bits);
    }
    mpz_class den(1);
    den <<= (bits_ - new_bits);
    return BigFixed(div_rounded(mant_, den, mode), new_bits);
}

BigFixed BigFixed::operator+(const BigFixed& o) const {
    if (bits_ == o.bits_)
        return BigFixed(mant_ + o.mant_, bits_);
    int b = std::max(bits_, o.bits_);
    return rescaled(b) + o.rescaled(b);
}

BigFixed BigFixed::operator-(const BigFixed& o) const {
    if (bits_ == o.bits_)
        return BigFixed(mant_ - o.mant_, bits_);
    int b = std::max(bits_, o.bits_);
    return rescaled(b) - o.rescaled(b);
}

BigFixed BigFixed::mul_exact(const BigFixed& o) const {
    return BigFixed(mant_ * o.mant_, bits_ + o.bits_);
}

BigFixed BigFixed::operator*(const BigFixed& o) const {
    return mul_exact(o).rescaled(bits_);
}

BigFixed BigFixed::mul_long(long k) const {
    return BigFixed(mant_ * k, bits_);
}

BigFixed BigFixed::div(const BigFixed& o, Round mode) const {
    if (o.mant_ == 0)
        throw std::domain_error("BigFixed: division by zero");
    // (a/2^p) / (b/2^q) = a*2^q / b; target p fractional bits
    mpz_class num = mant_;
    num <<= o.bits_;
    mpz_class scaled = num;
    scaled <<= bits_;
    // quotient mantissa = a*2^{q+p} / b  (value*2^p)
    mpz_class m = div_rounded(scaled, o.mant_, mode);
    return BigFixed(m, bits_ + o.bits_).rescaled(bits_, mode);
}

BigFixed BigFixed::reciprocal(Round mode) const {
    return from_long(1, bits_).div(*this, mode);
}

int BigFixed::cmp(const BigFixed& o) const {
    if (bits_ == o.bits_)
        return ::cmp(mant_, o.mant_);
    int b = std::max(bits_, o.bits_);
    return ::cmp(rescaled(b).mant_, o.rescaled(b).mant_);
}

mpz_class BigFixed::floor() const {
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), bits_);
    return q;
}

BigFixed BigFixed::frac() const {
    mpz_class r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), mant_.get_mpz_t(), bits_);
    return BigFixed(r, bits_);
}

BigFixed BigFixed::dist_to_Z() const {
    BigFixed f = frac();
    BigFixed one = from_long(1, bits_);
    BigFixed d = one - f;
    return f.cmp(d) <= 0 ? f : d;
}

double BigFixed::to_double() const {
    // mpz -> double is correctly truncated by GMP; rescale by 2^-bits.
    signed long exp2 = -bits_;
    double d = mpz_get_d(mant_.get_mpz_t());
    return std::ldexp(d, static_cast<int>(exp2));
}

DD BigFixed::to_dd() const {
    double hi = to_double();
    BigFixed rem = *this - from_double(hi, bits_);
    double lo = rem.to_double();
    return DD(hi, lo);
}

std::string BigFixed::to_decimal(int digits) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class num = mant_ * scale;
    mpz_class den(1);
    den <<= bits_;
    mpz_class q = div_rounded(num, den, NEAREST);
    bool neg = q < 0;
    mpz_class aq = ::abs(q);
    std::string s = aq.get_str();
    if (static_cast<int>(s.size()) <= digits)
        s.insert(0, std::string(digits + 1 - s.size(), '0'));
    s.insert(s.size() - digits, ".");
    if (neg)
        s.insert(0, "-");
    return s;
}

namespace {
int g_default_frac_bits = kDefaultFracBits;
}

int default_frac_bits() { return g_default_frac_bits; }

void set_default_frac_bits(int bits) {
    if (bits < 64 || bits > 65536)
        throw std::invalid_argument("precision bits must be in [64, 65536]");
    g_default_frac_bits = bits;
}

} // namespace tlab
