#include "tlab/exact.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "tlab/errors.hpp"

namespace tlab {

namespace {

bool is_perfect_square(const mpz_class& n, mpz_class& root) {
    if (n < 0)
        return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root * root == n;
}

} // namespace

ExactReal ExactReal::from_rational(const mpq_class& q) {
    ExactReal r;
    r.kind_ = RATIONAL;
    r.rat_ = q;
    r.rat_.canonicalize();
    return r;
}

ExactReal ExactReal::surd(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                          const mpz_class& D) {
    if (c == 0)
        throw std::invalid_argument("surd with zero denominator");
    mpz_class root;
    if (b == 0 || D == 0 || is_perfect_square(D, root)) {
        // collapses to a rational
        mpq_class q(a + b * root, c);
        return from_rational(q);
    }
    if (D < 0)
        throw std::invalid_argument("surd with negative discriminant");
    ExactReal r;
    r.kind_ = SURD;
    r.a_ = a;
    r.b_ = b;
    r.c_ = c;
    r.D_ = D;
    r.normalize_surd();
    return r;
}

ExactReal ExactReal::numeric(const BigFixed& v, double err_ulps) {
    ExactReal r;
    r.kind_ = NUMERIC;
    r.num_ = v;
    r.num_err_ulps_ = err_ulps;
    return r;
}

ExactReal ExactReal::euler_e(int bits) {
    return numeric(BigFixed::euler_e(bits), 1.0);
}

void ExactReal::normalize_surd() {
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

BigFixed ExactReal::numeric_value(int bits) const {
    switch (kind_) {
    case RATIONAL:
        return BigFixed::from_mpq(rat_, bits);
    case SURD: {
        int work = bits + 32;
        BigFixed root = BigFixed::sqrt_integer(D_, work);
        BigFixed num = BigFixed::from_ratio(a_, mpz_class(1), work) + root.mul_long(b_.get_si());
        // b may exceed long; handle the general case via exact product
        if (!b_.fits_slong_p()) {
            BigFixed bf = BigFixed::from_ratio(b_, mpz_class(1), work);
            num = BigFixed::from_ratio(a_, mpz_class(1), work) + bf.mul_exact(root).rescaled(work);
        }
        return num.div(BigFixed::from_ratio(c_, mpz_class(1), work)).rescaled(bits);
    }
    case NUMERIC:
        return num_.rescaled(bits);
    }
    return BigFixed();
}

BigFixed ExactReal::approx(int bits) const { return numeric_value(bits); }

int ExactReal::err_exp2(int bits) const {
    switch (kind_) {
    case RATIONAL:
        return -bits; // <= 1 ulp rounding
    case SURD:
        return -bits; // sqrt + division each < 1 ulp at guard precision
    case NUMERIC: {
        double ulps = std::max(1.0, num_err_ulps_);
        int extra = static_cast<int>(std::ceil(std::log2(ulps))) + 1;
        return -num_.bits() + extra > -bits ? -num_.bits() + extra : -bits;
    }
    }
    return -bits;
}

int ExactReal::sign() const {
    switch (kind_) {
    case RATIONAL:
        return sgn(rat_);
    case SURD: {
        // sign of a + b sqrt(D) (c > 0 after normalization)
        if (a_ >= 0 && b_ >= 0)
            return (a_ == 0 && b_ == 0) ? 0 : 1;
        if (a_ <= 0 && b_ <= 0)
            return (a_ == 0 && b_ == 0) ? 0 : -1;
        // opposite signs: compare a^2 vs b^2 D
        mpz_class lhs = a_ * a_, rhs = b_ * b_ * D_;
        int big = cmp(lhs, rhs);
        if (a_ > 0) // b < 0
            return big > 0 ? 1 : (big < 0 ? -1 : 0);
        return big < 0 ? 1 : (big > 0 ? -1 : 0);
    }
    case NUMERIC:
        return num_.sign();
    }
    return 0;
}

ExactReal ExactReal::operator-() const {
    switch (kind_) {
    case RATIONAL:
        return from_rational(-rat_);
    case SURD:
        return surd(-a_, -b_, c_, D_);
    case NUMERIC:
        return numeric(-num_, num_err_ulps_);
    }
    return {};
}

ExactReal ExactReal::operator+(const ExactReal& o) const {
    if (kind_ == RATIONAL && o.kind_ == RATIONAL)
        return from_rational(rat_ + o.rat_);
    if (kind_ == RATIONAL && o.kind_ == SURD)
        return surd(o.a_ * rat_.get_den() + rat_.get_num() * o.c_, o.b_ * rat_.get_den(),
                    o.c_ * rat_.get_den(), o.D_);
    if (kind_ == SURD && o.kind_ == RATIONAL)
        return o + *this;
    if (kind_ == SURD && o.kind_ == SURD && D_ == o.D_)
        return surd(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, D_);
    // demote
    int bits = default_frac_bits() + 32;
    BigFixed s = numeric_value(bits) + o.numeric_value(bits);
    double err = std::ldexp(1.0, err_exp2(bits) + bits) + std::ldexp(1.0, o.err_exp2(bits) + bits);
    return numeric(s, err + 1);
}

ExactReal ExactReal::operator-(const ExactReal& o) const { return *this + (-o); }

ExactReal ExactReal::operator*(const ExactReal& o) const {
    if (kind_ == RATIONAL && o.kind_ == RATIONAL)
        return from_rational(rat_ * o.rat_);
    if (kind_ == RATIONAL && o.kind_ == SURD)
        return surd(o.a_ * rat_.get_num(), o.b_ * rat_.get_num(), o.c_ * rat_.get_den(), o.D_);
    if (kind_ == SURD && o.kind_ == RATIONAL)
        return o * *this;
    if (kind_ == SURD && o.kind_ == SURD && D_ == o.D_)
        return surd(a_ * o.a_ + b_ * o.b_ * D_, a_ * o.b_ + b_ * o.a_, c_ * o.c_, D_);
    int bits = default_frac_bits() + 32;
    BigFixed p = numeric_value(bits) * o.numeric_value(bits);
    double mag_a = std::abs(numeric_value(64).to_double());
    double mag_b = std::abs(o.numeric_value(64).to_double());
    double err = std::ldexp(1.0, err_exp2(bits) + bits) * (mag_b + 1) +
                 std::ldexp(1.0, o.err_exp2(bits) + bits) * (mag_a + 1) + 2;
    return numeric(p, err);
}

ExactReal ExactReal::operator/(const ExactReal& o) const {
    if (o.sign() == 0)
        throw std::domain_error("division by zero");
    if (o.kind_ == RATIONAL)
        return *this * from_rational(1 / o.rat_);
    if (o.kind_ == SURD && (kind_ == RATIONAL || (kind_ == SURD && D_ == o.D_))) {
        // multiply by the conjugate of o: (a - b sqrt(D)) * c / (a^2 - b^2 D)
        mpz_class denom = o.a_ * o.a_ - o.b_ * o.b_ * o.D_;
        ExactReal conj = surd(o.a_ * o.c_, -o.b_ * o.c_, denom, o.D_);
        return *this * conj;
    }
    int bits = default_frac_bits() + 32;
    BigFixed q = numeric_value(bits).div(o.numeric_value(bits));
    return numeric(q, 16); // coarse bound; division is not on a certified path
}

ExactReal ExactReal::sqrt() const {
    if (sign() < 0)
        throw std::domain_error("sqrt of negative value");
    if (kind_ == RATIONAL) {
        mpz_class rp, rq;
        if (is_perfect_square(rat_.get_num(), rp) && is_perfect_square(rat_.get_den(), rq))
            return from_rational(mpq_class(rp, rq));
        // sqrt(p/q) = sqrt(p q) / q
        return surd(0, 1, rat_.get_den(), rat_.get_num() * rat_.get_den());
    }
    int bits = default_frac_bits() + 32;
    BigFixed v = numeric_value(bits);
    // Newton refinement on top of an integer sqrt of the mantissa
    mpz_class scaled = v.mantissa();
    scaled <<= bits;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    return numeric(BigFixed(root, bits), 4);
}

ExactReal ExactReal::mod1() const {
    switch (kind_) {
    case RATIONAL: {
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), rat_.get_num().get_mpz_t(), rat_.get_den().get_mpz_t());
        return from_rational(rat_ - mpq_class(fl));
    }
    case SURD: {
        mpz_class fl = approx(default_frac_bits() + 32).floor();
        return surd(a_ - fl * c_, b_, c_, D_);
    }
    case NUMERIC:
        return numeric(num_.frac(), num_err_ulps_);
    }
    return {};
}

std::string ExactReal::describe() const {
    switch (kind_) {
    case RATIONAL:
        return rat_.get_str();
    case SURD:
        return "(" + a_.get_str() + "+" + b_.get_str() + "*sqrt(" + D_.get_str() + "))/" +
               c_.get_str();
    case NUMERIC:
        return num_.to_decimal(30) + "~";
    }
    return {};
}

// ---------------------------------------------------------------------------
// Expression parser

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ConfigError("parse error at position " + std::to_string(pos) + ": " + what +
                          " in \"" + s + "\"");
    }

    ExactReal parse_expr() {
        ExactReal v = parse_term();
        for (;;) {
            if (eat('+'))
                v = v + parse_term();
            else if (eat('-'))
                v = v - parse_term();
            else
                return v;
        }
    }

    ExactReal parse_term() {
        ExactReal v = parse_factor();
        for (;;) {
            if (eat('*'))
                v = v * parse_factor();
            else if (eat('/'))
                v = v / parse_factor();
            else
                return v;
        }
    }

    ExactReal parse_factor() {
        skip_ws();
        if (eat('-'))
            return -parse_factor();
        if (eat('+'))
            return parse_factor();
        return parse_atom();
    }

    ExactReal parse_atom() {
        skip_ws();
        if (pos >= s.size())
            fail("unexpected end");
        if (eat('(')) {
            ExactReal v = parse_expr();
            if (!eat(')'))
                fail("expected ')'");
            return v;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_name();
        fail("unexpected character");
    }

    ExactReal parse_number() {
        size_t start = pos;
        bool saw_dot = false;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
            if (s[pos] == '.') {
                if (saw_dot)
                    fail("second '.' in number");
                saw_dot = true;
            }
            ++pos;
        }
        std::string tok = s.substr(start, pos - start);
        if (!saw_dot)
            return ExactReal::from_rational(mpq_class(mpz_class(tok, 10)));
        size_t dot = tok.find('.');
        std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
        if (digits.empty())
            fail("empty number");
        unsigned long fd = tok.size() - dot - 1;
        mpz_class num(digits.empty() ? "0" : digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fd);
        return ExactReal::from_rational(mpq_class(num, den));
    }

    ExactReal parse_name() {
        size_t start = pos;
        while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos])))
            ++pos;
        std::string name = s.substr(start, pos - start);
        if (name == "sqrt") {
            if (!eat('('))
                fail("expected '(' after sqrt");
            ExactReal arg = parse_expr();
            if (!eat(')'))
                fail("expected ')'");
            return arg.sqrt();
        }
        if (name == "surd") {
            // surd(a,b,c,D) = (a + b sqrt(D)) / c with integer entries
            if (!eat('('))
                fail("expected '(' after surd");
            mpz_class v[4];
            for (int i = 0; i < 4; ++i) {
                ExactReal e = parse_expr();
                if (e.kind() != ExactReal::RATIONAL || e.rational().get_den() != 1)
                    fail("surd() entries must be integers");
                v[i] = e.rational().get_num();
                if (i < 3 && !eat(','))
                    fail("expected ',' in surd()");
            }
            if (!eat(')'))
                fail("expected ')'");
            return ExactReal::surd(v[0], v[1], v[2], v[3]);
        }
        if (name == "e")
            return ExactReal::euler_e();
        if (name == "golden" || name == "phi") // (sqrt(5)-1)/2, the rotation number in (0,1)
            return ExactReal::surd(-1, 1, 2, 5);
        fail("unknown name '" + name + "'");
    }
};

} // namespace

ExactReal parse_real(const std::string& expr) {
    Parser p(expr);
    ExactReal v = p.parse_expr();
    p.skip_ws();
    if (p.pos != expr.size())
        p.fail("trailing characters");
    return v;
}

} // namespace tlab
