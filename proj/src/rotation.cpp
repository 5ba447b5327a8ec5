#include "tlab/rotation.hpp"

#include <algorithm>
#include <cmath>

#include "tlab/errors.hpp"

namespace tlab {

RotationVector::RotationVector(ExactReal a1) : rho_(1) {
    comp_.push_back(a1.mod1());
    fx_.push_back(comp_[0].approx(default_frac_bits() + 64).frac());
    dd_.push_back(fx_[0].to_dd());
    dbl_.push_back(fx_[0].to_double());
}

RotationVector::RotationVector(ExactReal a1, ExactReal a2) : rho_(2) {
    comp_.push_back(a1.mod1());
    comp_.push_back(a2.mod1());
    for (int i = 0; i < 2; ++i) {
        fx_.push_back(comp_[i].approx(default_frac_bits() + 64).frac());
        dd_.push_back(fx_[i].to_dd());
        dbl_.push_back(fx_[i].to_double());
    }
}

RotationVector RotationVector::parse(const std::string& s) {
    // split on the top-level comma only (components may contain surd(...))
    int depth = 0;
    size_t comma = std::string::npos;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(')
            ++depth;
        else if (s[i] == ')')
            --depth;
        else if (s[i] == ',' && depth == 0) {
            comma = i;
            break;
        }
    }
    if (comma == std::string::npos)
        return RotationVector(parse_real(s));
    return RotationVector(parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1)));
}

BigFixed RotationVector::dot_dist(long k1, long k2) const {
    BigFixed acc = fx_[0].mul_long(k1);
    if (rho_ == 2 && k2 != 0)
        acc = acc + fx_[1].mul_long(k2);
    return acc.dist_to_Z();
}

bool RotationVector::totally_irrational(long relation_bound) const {
    if (diag_bound_ >= relation_bound)
        return diag_ok_;

    const double coarse = std::ldexp(1.0, -40);
    double dmin = 1.0;
    bool ok = true;

    if (rho_ == 1) {
        // ||k a1|| for 1 <= k <= bound
        double a = dbl_[0];
        double u = 0;
        for (long k = 1; k <= relation_bound && ok; ++k) {
            u += a;
            if (u >= 1)
                u -= 1;
            double d = u <= 0.5 ? u : 1 - u;
            dmin = std::min(dmin, d);
            if (d < coarse && dot_dist(k).to_double() < std::ldexp(1.0, -100))
                ok = false;
        }
    } else {
        // Sorted table of ({k2 a2}, k2) makes the per-k1 minimization a
        // binary search instead of an O(bound) inner loop.
        long B = relation_bound;
        std::vector<std::pair<double, long>> tab;
        tab.reserve(B + 1);
        {
            double u = 0;
            tab.push_back({0.0, 0});
            for (long k = 1; k <= B; ++k) {
                u += dbl_[1];
                if (u >= 1)
                    u -= 1;
                tab.push_back({u, k});
            }
        }
        std::sort(tab.begin(), tab.end());
        auto probe_target = [&](double target, long k1, int sign2) {
            // find table entries near target and test the exact distance
            auto it = std::lower_bound(tab.begin(), tab.end(), std::make_pair(target, -1L));
            for (int off = -1; off <= 1; ++off) {
                auto jt = it;
                if (off < 0) {
                    if (jt == tab.begin())
                        jt = tab.end();
                    --jt;
                } else {
                    std::advance(jt, off);
                }
                if (jt >= tab.end() || jt < tab.begin())
                    continue;
                double d = std::abs(jt->first - target);
                d = std::min(d, 1.0 - d);
                if (d < dmin)
                    dmin = d;
                if (d < coarse && (k1 != 0 || jt->second != 0)) {
                    if (dot_dist(k1, sign2 * jt->second).to_double() < std::ldexp(1.0, -100))
                        ok = false;
                }
            }
        };
        double u1 = 0;
        for (long k1 = 0; k1 <= B && ok; ++k1) {
            if (k1 > 0) {
                u1 += dbl_[0];
                if (u1 >= 1)
                    u1 -= 1;
            }
            // ||k1 a1 + k2 a2|| small  <=>  {k2 a2} near {-k1 a1}  (k2 > 0)
            //                         or  {k2 a2} near { k1 a1}    (k2 < 0)
            probe_target(u1 == 0 ? 0.0 : 1.0 - u1, k1, +1);
            probe_target(u1, k1, -1);
        }
    }

    diag_bound_ = relation_bound;
    diag_ok_ = ok;
    diag_min_ = dmin;
    return ok;
}

std::string RotationVector::describe() const {
    std::string s = comp_[0].describe();
    if (rho_ == 2)
        s += ", " + comp_[1].describe();
    return s;
}

Pt rotate(const RotationVector& alpha, const Pt& x, long n) {
    Pt out{0, 0};
    for (int i = 0; i < alpha.rho(); ++i) {
        BigFixed na = alpha.fixed(i).mul_long(n);
        BigFixed xi = BigFixed::from_double(x[i], na.bits());
        out[i] = (xi + na).frac().to_double();
    }
    if (alpha.rho() == 1)
        out[1] = x[1];
    return out;
}

std::array<BigFixed, 2> rotate_fixed(const RotationVector& alpha,
                                     const std::array<BigFixed, 2>& x, long n) {
    std::array<BigFixed, 2> out = x;
    for (int i = 0; i < alpha.rho(); ++i)
        out[i] = (x[i] + alpha.fixed(i).mul_long(n)).frac();
    return out;
}

} // namespace tlab
