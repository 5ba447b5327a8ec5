#include "tlab/cf.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "tlab/errors.hpp"

namespace tlab {

namespace {

// Exact CF of a rational in (0,1): terminates, so the caller reports
// RationalInput.
void expand_rational(const mpq_class& x0, int depth, ContinuedFraction& out) {
    mpz_class num = x0.get_num(), den = x0.get_den();
    // x in (0,1): iterate a = floor(den/num), (num,den) <- (den - a*num, num)
    for (int i = 0; i < depth; ++i) {
        if (num == 0)
            throw RationalInput("Gauss map terminated at step " + std::to_string(i));
        mpz_class a = den / num;
        mpz_class r = den - a * num;
        out.quotients.push_back(a);
        den = num;
        num = r;
    }
    throw RationalInput("input is rational; continued fraction terminates");
}

// Exact CF of a quadratic surd via the PQa algorithm on (P + sqrt(D)) / Q.
void expand_surd(const ExactReal& x, int depth, ContinuedFraction& out) {
    // (a + b sqrt(D)) / c  ->  (P + sqrt(D')) / Q with D' = b^2 D
    mpz_class P = x.surd_a(), Q = x.surd_c();
    mpz_class D = x.surd_b() * x.surd_b() * x.surd_D();
    if (x.surd_b() < 0) {
        P = -P;
        Q = -Q;
    }
    // ensure Q | (D - P^2)
    mpz_class rem = (D - P * P) % Q;
    if (rem != 0) {
        P *= Q;
        D *= Q * Q;
        Q *= Q;
    }
    // The surd is in (0,1) by precondition; run x -> 1/x - a jointly.
    // State for periodicity detection: (P, Q) after the first step.
    std::map<std::pair<mpz_class, mpz_class>, int> seen;
    BigFixed sqrtD = BigFixed::sqrt_integer(D, default_frac_bits() + 64);
    for (int i = 0; i < depth; ++i) {
        // invert: 1/x = Q (sqrt(D) - P) / (D - P^2) = (P1 + sqrt(D)) / Q1
        mpz_class P1 = -P, Q1 = (D - P * P) / Q;
        // a = floor((P1 + sqrt(D)) / Q1), exact via integer sqrt bracketing
        BigFixed val = (BigFixed::from_ratio(P1, mpz_class(1), sqrtD.bits()) + sqrtD)
                           .div(BigFixed::from_ratio(Q1, mpz_class(1), sqrtD.bits()));
        mpz_class a = val.floor();
        // a is right unless sqrt rounding crossed an integer; verify
        // a <= (P1 + sqrt(D))/Q1 < a+1 by squaring (Q1 > 0 here)
        auto le = [&](const mpz_class& t) {
            // t <= (P1 + sqrt(D))/Q1  <=>  t*Q1 - P1 <= sqrt(D)
            mpz_class lhs = t * Q1 - P1;
            if (lhs <= 0)
                return true;
            return lhs * lhs <= D;
        };
        while (!le(a))
            --a;
        while (le(a + 1))
            ++a;
        out.quotients.push_back(a);
        // x_{n+1} = 1/x_n - a = (P1 - a Q1 + sqrt(D)) / Q1
        P = P1 - a * Q1;
        Q = Q1;
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end() && out.period_start < 0) {
            out.period_start = it->second;
            out.period_len = i + 1 - it->second;
        } else if (it == seen.end()) {
            seen.emplace(key, i + 1);
        }
    }
    out.certified_depth = depth;
}

// Interval Gauss map for numeric sources.  The value is known to lie in
// [lo, hi]; a quotient is certified only when both endpoints agree on it.
void expand_numeric(const ExactReal& x, int depth, ContinuedFraction& out) {
    int bits = default_frac_bits() + 64;
    BigFixed v = x.approx(bits);
    int ee = x.err_exp2(bits);
    mpz_class err_m(1);
    err_m <<= (ee + bits > 0 ? ee + bits : 0);
    BigFixed err(err_m, bits);
    BigFixed lo = v - err, hi = v + err;
    mpz_class huge(1);
    huge <<= (default_frac_bits() / 2);
    for (int i = 0; i < depth; ++i) {
        if (lo.sign() <= 0) {
            if (hi.sign() <= 0)
                throw RationalInput("iterate reached a non-positive value");
            out.precision_exhausted = true;
            return;
        }
        BigFixed inv_lo = hi.reciprocal(BigFixed::DOWN);
        BigFixed inv_hi = lo.reciprocal(BigFixed::UP);
        mpz_class a_lo = inv_lo.floor(), a_hi = inv_hi.floor();
        if (a_lo != a_hi) {
            out.precision_exhausted = true;
            return;
        }
        if (a_lo > huge)
            throw RationalInput("quotient exceeds 2^(precision/2); rational suspected");
        out.quotients.push_back(a_lo);
        out.certified_depth = i + 1;
        BigFixed af = BigFixed::from_ratio(a_lo, mpz_class(1), inv_lo.bits());
        lo = inv_lo - af;
        hi = inv_hi - af;
    }
}

} // namespace

ContinuedFraction expand_cf(const ExactReal& x, int depth) {
    if (depth < 1)
        throw ConfigError("expand_cf: depth must be >= 1");
    if (x.sign() <= 0 || (x - ExactReal::from_long(1)).sign() >= 0)
        throw ConfigError("expand_cf: value must be in (0,1)");
    ContinuedFraction out;
    out.value = x;
    switch (x.kind()) {
    case ExactReal::RATIONAL:
        expand_rational(x.rational(), depth, out);
        break;
    case ExactReal::SURD:
        expand_surd(x, depth, out);
        break;
    case ExactReal::NUMERIC:
        expand_numeric(x, depth, out);
        break;
    }
    return out;
}

ConvergentTable convergents(const ContinuedFraction& cf, int depth) {
    if (depth < 1)
        throw ConfigError("convergents: depth must be >= 1");
    if (static_cast<int>(cf.quotients.size()) < depth)
        throw DepthError("continued fraction has fewer quotients than requested depth");
    ConvergentTable t;
    t.depth = depth;
    // q_0 = 1, q_1 = a_1;  p_0 = 0, p_1 = 1  (p_n/q_n -> alpha)
    t.q.push_back(1);
    t.p.push_back(0);
    t.q.push_back(cf.quotients[0]);
    t.p.push_back(1);
    for (int n = 1; n < depth; ++n) {
        t.q.push_back(cf.quotients[n] * t.q[n] + t.q[n - 1]);
        t.p.push_back(cf.quotients[n] * t.p[n] + t.p[n - 1]);
    }
    // chain q_{n+1} |q_n alpha - p_n|; this equals q_{n+1} ||q_n alpha|| for
    // n >= 1 (p_n is the nearest integer), and is the quantity the classical
    // inequality 1/2 <= q_{n+1}|q_n a - p_n| <= 1 is about.  At n = 0 with
    // a_1 = 1 the nearest integer to alpha is 1, not p_0 = 0, so the
    // dist-to-Z form would differ there.
    BigFixed alpha = cf.value.approx(default_frac_bits() + 64);
    for (int n = 0; n + 1 <= depth; ++n) {
        BigFixed qa = BigFixed(alpha.mantissa() * t.q[n], alpha.bits());
        BigFixed d = (qa - BigFixed::from_ratio(t.p[n], mpz_class(1), qa.bits())).abs();
        BigFixed prod = BigFixed(d.mantissa() * t.q[n + 1], d.bits());
        t.chain.push_back(prod.to_double());
    }
    return t;
}

OstrowskiDigits ostrowski(const mpz_class& n, const ConvergentTable& table) {
    if (n < 1)
        throw ConfigError("ostrowski: n must be >= 1");
    if (table.q.empty() || table.q.back() <= n)
        throw DepthError("convergent table too shallow: need q_m <= n < q_{m+1}");
    OstrowskiDigits d;
    d.n = n;
    // greedy from the largest q_k <= n
    int m = 0;
    while (m + 1 < static_cast<int>(table.q.size()) && table.q[m + 1] <= n)
        ++m;
    d.digits.assign(m + 1, mpz_class(0));
    mpz_class rem = n;
    for (int k = m; k >= 0; --k) {
        if (table.q[k] <= rem) {
            mpz_class b = rem / table.q[k];
            d.digits[k] = b;
            rem -= b * table.q[k];
        }
    }
    return d;
}

mpz_class ostrowski_reconstruct(const OstrowskiDigits& d, const ConvergentTable& table) {
    mpz_class s(0);
    for (size_t k = 0; k < d.digits.size(); ++k)
        s += d.digits[k] * table.q[k];
    return s;
}

BadMargin bad_margin(const BigFixed& theta, const BigFixed& x, long q_max) {
    if (q_max < 1)
        throw ConfigError("bad_margin: q_max must be >= 1");
    BadMargin r;
    r.theta = theta.to_double();
    r.x = x.to_double();
    r.q_max = q_max;
    // running q*theta - x is exact in fixed point given theta, x
    BigFixed acc = -x;
    BigFixed best;
    long best_q = 0;
    for (long q = 1; q <= q_max; ++q) {
        acc = acc + theta;
        BigFixed d = acc.dist_to_Z();
        BigFixed val = d.mul_long(q);
        if (best_q == 0 || val < best) {
            best = val;
            best_q = q;
        }
    }
    r.margin = best.to_double();
    r.argmin_q = best_q;
    return r;
}

TypeProbeReport type_probe(const BigFixed& alpha, double eta, double epsilon, long q_max) {
    if (epsilon <= 0)
        throw ConfigError("type_probe: epsilon must be > 0");
    TypeProbeReport rep;
    rep.eta = eta;
    rep.epsilon = epsilon;
    rep.q_max = q_max;
    BigFixed acc = BigFixed::from_long(0, alpha.bits());
    double best_lo = 0, best_hi = 0;
    for (long k = 1; k <= q_max; ++k) {
        acc = acc + alpha;
        double d = acc.dist_to_Z().to_double();
        double vlo = std::pow(static_cast<double>(k), eta - epsilon) * d;
        double vhi = std::pow(static_cast<double>(k), eta + epsilon) * d;
        if (rep.argmin_low == 0 || vlo < best_lo) {
            best_lo = vlo;
            rep.argmin_low = k;
        }
        if (rep.argmin_high == 0 || vhi < best_hi) {
            best_hi = vhi;
            rep.argmin_high = k;
        }
    }
    rep.inf_low = best_lo;
    rep.inf_high = best_hi;
    return rep;
}

double series_partial_sum(const BigFixed& alpha, double eta, double delta, long K) {
    if (delta <= 0 || K < 1)
        throw ConfigError("series_partial_sum: require delta > 0 and K >= 1");
    BigFixed acc = BigFixed::from_long(0, alpha.bits());
    DDSum sum;
    for (long k = 1; k <= K; ++k) {
        acc = acc + alpha;
        double d = acc.dist_to_Z().to_double();
        sum.add(1.0 / (std::pow(static_cast<double>(k), eta + delta) * d));
    }
    return sum.value();
}

} // namespace tlab
