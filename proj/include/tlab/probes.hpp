#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tlab/ergodic.hpp"
#include "tlab/maps.hpp"
#include "tlab/rotation.hpp"

namespace tlab {

enum class FiberMode { REAL, TORUS };

struct SkewOrbit {
    FiberMode mode = FiberMode::REAL;
    long N = 0;
    long decimation = 1;
    std::vector<long> n;                      // sampled indices
    std::vector<Pt> x;                        // base point at each sample
    std::vector<std::array<double, 2>> z;     // fiber state at each sample
    long boundary_hits = 0;
    bool degenerate_orbit = false;
    double telescoping_residual = 0; // REAL mode: max |z_n - z_0 - Phi_n(x_0)|
};

// Cylinder map (x, z) -> (Tx, z + phi(x)) on T^rho x R^d.
SkewOrbit simulate_skew(const RotationVector& alpha, const PlanarMap& map, const Pt& x0,
                        const std::array<double, 2>& z0, long N, long decimation);

// Compact extension (x, y) -> (x + alpha, y + a 1_{Delta0}(x)) on T^2 x T^d.
SkewOrbit simulate_skew_torus(const RotationVector& alpha, const std::vector<BigFixed>& a,
                              const Pt& x0, const std::array<double, 2>& y0, long N,
                              long decimation);

struct RecurrencePoint {
    Pt x0{0, 0};
    double min_abs = 0;  // min over 1 <= n <= N of |Phi_n|
    long argmin = 0;
    double tail_min = 0; // min over n in (N/2, N]
    // first n with |Phi_n| < r for r in {0.1, 0.05, 0.01, 0.005}; 0 if never
    std::array<long, 4> first_passage{0, 0, 0, 0};
    bool transient_suspect = false; // tail_min above the largest radius
};

struct RecurrenceReport {
    long N_max = 0;
    std::vector<RecurrencePoint> points;
    int flagged = 0;
    std::array<double, 3> passage_quantiles{0, 0, 0}; // q25/q50/q75 of first passage at 0.05
};

inline constexpr std::array<double, 4> kReturnRadii{0.1, 0.05, 0.01, 0.005};

RecurrenceReport recurrence_probe(const RotationVector& alpha, const PlanarMap& map, long N_max,
                                  int M, unsigned long seed);

struct L2GrowthProbe {
    std::vector<long> N;
    std::vector<double> l2; // Monte-Carlo ||Phi_N||_2 over M base points
    double slope = 0;
    double ci_lo = 0, ci_hi = 0; // bootstrap 95% CI for the slope
    int d = 1;
    bool recgen_consistent = false; // ci_hi < 1/d
};
L2GrowthProbe l2_growth_probe(const RotationVector& alpha, const PlanarMap& map,
                              const std::vector<long>& N_schedule, int M, unsigned long seed);

struct EssentialValueRow {
    long n = 0;
    long hits = 0;
    double fraction = 0;
};
struct EssentialValueReport {
    std::vector<EssentialValueRow> rows;
    int grid = 0;
    long positive_rows = 0;
};
// Fraction of grid points x with x in B, T^n x in B and |Phi_n(x)| in
// [v_lo, v_hi], for each n in n_list.  B is the whole torus or a rectangle
// union given as {x0, x1, y0, y1} boxes; "positive measure" means positive
// fraction on the grid.  The {x}{y}-1/4 map has an exact rank-1 rearrangement
// per sampled n; other maps run the incremental grid orbit.
EssentialValueReport essential_value_probe(const RotationVector& alpha, const PlanarMap& map,
                                           const std::vector<std::array<double, 4>>& B_boxes,
                                           double v_lo, double v_hi,
                                           const std::vector<long>& n_list, int grid);

struct WeylRow {
    std::array<int, 2> h{0, 0};
    int k = 0;
    double avg_quarter = 0, avg_half = 0, avg_full = 0;
};
struct WeylReport {
    long N = 0;
    std::vector<WeylRow> rows;
};
// |(1/N) sum e^{2 pi i (<h, x_n> + k y_n)}| along one orbit of the compact
// extension, reported at N/4, N/2 and N.
WeylReport weyl_probe(const RotationVector& alpha, const BigFixed& a,
                      const std::vector<std::array<int, 3>>& freqs, long N, const Pt& x0,
                      double y0);

// Panel averages of |avg| over M seeded base points (the per-orbit values sit
// at the 1/sqrt(N) Monte-Carlo floor, so single-orbit ratios fluctuate; the
// ensemble mean decays deterministically for ergodic parameters).
struct WeylEnsembleRow {
    std::array<int, 2> h{0, 0};
    int k = 0;
    double mean_quarter = 0, mean_full = 0;
};
std::vector<WeylEnsembleRow> weyl_panel_ensemble(const RotationVector& alpha, const BigFixed& a,
                                                 const std::vector<std::array<int, 3>>& freqs,
                                                 long N, int M, unsigned long seed);

// default panel: |h|_inf <= 2, |k| <= 3, (h,k) != 0
std::vector<std::array<int, 3>> default_weyl_panel(int d = 1);

struct ConjugationReport {
    int samples = 0;
    double max_residual = 0;
};
// max distance between (S o T o S^{-1})(p) and the sheared extension with
// beta = (a1, a2 - a1) over random samples off the Delta_1/Delta_0 boundaries.
ConjugationReport conjugation_check(const RotationVector& alpha, const BigFixed& a, int M,
                                    unsigned long seed);

struct InducedCocycle {
    std::vector<long> return_times;   // R_1 < R_2 < ...
    std::vector<double> induced_sums; // Phi_{R_n}(x0), accumulated per segment
    double mean_return = 0;
    double identity_residual = 0; // vs fresh Phi_{R_n} recomputation
};
InducedCocycle induced_cocycle(const RotationVector& alpha, const PlanarMap& map,
                               const std::array<double, 4>& B_box, const Pt& x0, int k_returns,
                               long N_cap = 100000000);

} // namespace tlab
