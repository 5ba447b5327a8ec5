#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tlab/exact.hpp"

namespace tlab {

using Pt = std::array<double, 2>;

// A rotation number vector on T^rho (rho = 1 or 2), held in high precision.
class RotationVector {
public:
    explicit RotationVector(ExactReal a1);
    RotationVector(ExactReal a1, ExactReal a2);

    static RotationVector parse(const std::string& comma_separated);

    int rho() const { return rho_; }
    const ExactReal& exact(int i) const { return comp_[i]; }
    const BigFixed& fixed(int i) const { return fx_[i]; }
    DD dd(int i) const { return dd_[i]; }
    double dbl(int i) const { return dbl_[i]; }

    // ||k . alpha|| at working precision (k integer vector).
    BigFixed dot_dist(long k1, long k2 = 0) const;

    // Scan |k0 + k1 a1 + k2 a2| over max|k_i| <= bound for near-relations.
    // Candidates below 2^-40 in double are re-verified in fixed point against
    // 2^-100; returns true when no relation survives.  Result is cached per
    // bound (the scan is the expensive part of partition preconditions).
    bool totally_irrational(long relation_bound = 10000) const;
    // Smallest |k0 + k1 a1 + k2 a2| seen in the last diagnostic scan.
    double last_diag_min() const { return diag_min_; }

    std::string describe() const;

private:
    int rho_;
    std::vector<ExactReal> comp_;
    std::vector<BigFixed> fx_;
    std::vector<DD> dd_;
    std::vector<double> dbl_;
    mutable long diag_bound_ = 0;
    mutable bool diag_ok_ = false;
    mutable double diag_min_ = 1.0;
};

// {x_i + n alpha_i} from the high-precision n*alpha, not by repeated adds.
Pt rotate(const RotationVector& alpha, const Pt& x, long n);
// High-precision variant used as the reference path.
std::array<BigFixed, 2> rotate_fixed(const RotationVector& alpha,
                                     const std::array<BigFixed, 2>& x, long n);

} // namespace tlab
