#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "tlab/exact.hpp"

namespace tlab {

// Continued fraction of an irrational in (0,1).
struct ContinuedFraction {
    ExactReal value;
    std::vector<mpz_class> quotients; // a_1, a_2, ...
    bool precision_exhausted = false; // numeric source ran out of certified bits
    int certified_depth = 0;          // number of certified quotients
    // For quadratic surds: index (0-based into quotients) where the periodic
    // part starts and its length; empty if not detected / not applicable.
    int period_start = -1;
    int period_len = 0;
};

// Exact denominators/numerators q_n, p_n with q_0 = 1, q_1 = a_1.
struct ConvergentTable {
    std::vector<mpz_class> q;
    std::vector<mpz_class> p;
    int depth = 0;
    // q_{n+1} * ||q_n alpha|| for each computed n (working precision doubles)
    std::vector<double> chain;
};

struct OstrowskiDigits {
    mpz_class n;
    std::vector<mpz_class> digits; // b_0 ... b_m
};

struct BadMargin {
    double theta = 0;
    double x = 0;
    long q_max = 0;
    double margin = 0; // min over 1<=q<=q_max of q * ||q theta - x||
    long argmin_q = 0;
};

struct TypeProbeReport {
    double eta = 1.0;
    double epsilon = 0.1;
    long q_max = 0;
    double inf_low = 0;  // min k^{eta-eps} ||k alpha||
    double inf_high = 0; // min k^{eta+eps} ||k alpha||
    long argmin_low = 0;
    long argmin_high = 0;
    bool conclusive = false; // always false: finite scan
};

// Expand the continued fraction of x to `depth` partial quotients.
// Exact Gauss map for rational/surd sources (rational input throws
// RationalInput); certified interval arithmetic for numeric sources, which
// sets precision_exhausted instead of guessing digits.
ContinuedFraction expand_cf(const ExactReal& x, int depth);

// Denominator/numerator recurrence plus the q_{n+1}||q_n alpha|| chain.
ConvergentTable convergents(const ContinuedFraction& cf, int depth);

// Greedy Ostrowski representation of n >= 1 in base q.
OstrowskiDigits ostrowski(const mpz_class& n, const ConvergentTable& table);
mpz_class ostrowski_reconstruct(const OstrowskiDigits& d, const ConvergentTable& table);

// Brute-force scan of q * ||q theta - x|| over 1 <= q <= q_max.
BadMargin bad_margin(const BigFixed& theta, const BigFixed& x, long q_max);

TypeProbeReport type_probe(const BigFixed& alpha, double eta, double epsilon, long q_max);

// Partial sum of sum_{k=1..K} 1 / (k^{eta+delta} ||k alpha||).
double series_partial_sum(const BigFixed& alpha, double eta, double delta, long K);

} // namespace tlab
