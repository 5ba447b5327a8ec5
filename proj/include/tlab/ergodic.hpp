#pragma once

#include <functional>
#include <vector>

#include "tlab/cf.hpp"
#include "tlab/maps.hpp"
#include "tlab/rotation.hpp"

namespace tlab {

struct ErgodicSumResult {
    std::array<double, 2> value{0, 0};
    long n = 0;
    long boundary_hits = 0;
    bool degenerate_orbit = false; // more than n * 1e-6 boundary hits
};

// Birkhoff sum phi_n(x0) = sum_{j<n} phi(T^j x0).  Double-double orbit and
// compensated accumulation; phi_0 = 0.  Every 100th call re-runs a prefix of
// the orbit through the exact fixed-point rotation as an accuracy audit.
ErgodicSumResult ergodic_sum(const PlanarMap& map, const RotationVector& alpha, const Pt& x0,
                             long n, double boundary_tol = 1e-12);

// worst deviation seen by the shadow audits in this process
double ergodic_audit_worst();

// phi_{q}(x) for every denominator q = q_k <= q_max of a 1-D rotation and a
// batch of base points, one orbit pass per point with snapshots at the q_k.
// Requires a sawtooth-decomposable T^1 map.
struct DenominatorSums {
    std::vector<long> q;                    // denominators <= q_max
    std::vector<std::vector<double>> sums;  // sums[i][k] = phi_{q[k]}(xs[i])
};
DenominatorSums sums_at_denominators(const PlanarMap& map, const RotationVector& alpha,
                                     const std::vector<double>& xs, long q_max);

// max |phi_n| over a uniform grid (G per axis); a lower bound for the sup
// norm.  n_schedule must be increasing; one pass serves all n values when a
// sawtooth decomposition is available, otherwise the direct per-point orbit
// fallback is used (practical only for small n * G^rho).
std::vector<double> sup_over_grid_schedule(const PlanarMap& map, const RotationVector& alpha,
                                           const std::vector<long>& n_schedule, int grid_per_axis);
double sup_over_grid(const PlanarMap& map, const RotationVector& alpha, long n,
                     int grid_per_axis);

// |1_{x<y} - ({x-y} + {y} - {x})| at a point off the three boundary lines.
double triangle_identity_residual(double x, double y, double boundary_tol = 1e-12);

struct LambdaFunctionals {
    // lambda[j][i] = integral of d(phi^i)/dx_j, via boundary trace formula
    double boundary[2][2] = {{0, 0}, {0, 0}};
    double quadrature[2][2] = {{0, 0}, {0, 0}};
    double disagreement = 0; // max |boundary - quadrature|
    double det_M = 0;        // det of the 2x2 matrix for 2-component maps
};
// Both routes for lambda_j(phi^i); throws on disagreement > tol.
LambdaFunctionals lambda_functionals(const PlanarMap& map, double tol = 1e-6);

struct SandwichReport {
    long n = 0;
    int samples = 0;
    int passed = 0;
    double lambda1 = 0;
    double pass_fraction() const { return samples ? double(passed) / samples : 0.0; }
};
// Fraction of same-cell pairs (x, x + u e1) with
// (1/2) n |lambda1 u| <= |phi_n(x+u,y) - phi_n(x,y)| <= 2 n |lambda1 u|.
SandwichReport derivative_sandwich_check(const PlanarMap& map, const RotationVector& alpha,
                                         long n, int samples, unsigned long seed);

// Sampled mean of the map over a grid (centering check).
double grid_mean(const PlanarMap& map, int comp, int grid_per_axis);

} // namespace tlab
