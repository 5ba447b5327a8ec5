#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tlab/bigfixed.hpp"
#include "tlab/rotation.hpp"

namespace tlab {

// One of the three line families cutting the torus:
//   V: x = {-k a1},  H: y = {-k a2},  D: x - y = {-k (a1 - a2)}
struct LineRef {
    char fam = 'V';
    int gen = 0; // generator index k
    bool operator==(const LineRef& o) const { return fam == o.fam && gen == o.gen; }
};

struct CellEdge {
    LineRef line;
    // parameter interval along the line in lifted coordinates
    // (y for V lines, x for H and D lines)
    double t0 = 0, t1 = 0;
    int neighbor = -1; // filled for the dominant neighbor during adjacency
};

struct PartitionCell {
    int id = 0;
    // vertices in lifted coordinates, counter-clockwise; x in
    // [v_min, v_min + 1), y in [h_min, h_min + 1)
    std::vector<Pt> poly;
    double area = 0;
    Pt rep{0, 0}; // interior representative
    std::vector<CellEdge> edges;
    std::vector<uint8_t> coding; // (1_{Delta0}(T^i rep))_{i < ell}
    double diameter = 0;
    int col = 0, row = 0;
};

struct AdjacencyEntry {
    int a = 0, b = 0;
    LineRef line;
    double overlap = 0; // shared-edge length along the line parameter
};

struct TorusPartition {
    int ell = 0;
    bool with_diagonals = true;
    std::vector<double> v_lines, h_lines, d_lines; // sorted offsets (doubles)
    std::vector<int> v_gen, h_gen, d_gen;          // generator of each offset
    std::vector<PartitionCell> cells;
    std::vector<AdjacencyEntry> adjacency;
    long euler_V = 0, euler_E = 0, euler_F = 0;
    double area_sum = 0;       // exact sum converted to double
    bool area_exact_one = false; // exact bigint comparison of the area sum with 1
    double min_cell_area = 0;
    double max_diameter = 0;

    std::vector<int> neighbors(int cell) const;
};

// Planar arrangement of the ell translated boundary lines of Delta_0.
// All slicing decisions and vertex coordinates are exact in fixed point, so
// the structural incidences (the diagonal d_k passing through the grid
// vertex (v_k, h_k)) are recognized exactly and the cell counts come out
// exact; a non-designed coincidence raises DegeneracyError.
TorusPartition build_partition(const RotationVector& alpha, int ell, bool with_diagonals = true,
                               bool with_codings = false);

// Coding of one cell recomputed at 3 interior samples; throws
// CodingAmbiguity on disagreement.
std::vector<uint8_t> cell_coding(const RotationVector& alpha, const PartitionCell& cell, int ell);

struct EqfunctReport {
    struct PerLevel {
        int ell = 0;
        long cards_P = 0;
        double max_diameter = 0;
        int max_neighbors = 0;
        long card_C = 0;
        double min_area_C = 0;   // min area over the long-vertical-edge family
        double c2_hat = 0;       // min area * ell^2
        bool check1_diameter = false;
        bool check2_neighbors = false;
        bool check3a_area = false;
        bool check3b_fraction = false;
        bool check3c_coding = false;
    };
    std::vector<PerLevel> levels;
    double c2_hat_global = 0;
    bool all_pass = false;
};
// The five hypothesis checks of the coding criterion at ell_k (denominators
// of alpha_2), with rho = 36 and the vertical-edge family threshold 1/(10 l).
EqfunctReport check_eqfunct_hypotheses(const RotationVector& alpha,
                                       const std::vector<int>& ell_schedule);

struct GapStats {
    long n = 0;
    double min_gap = 0, max_gap = 0;
    double c_hat = 0;       // n * min_gap
    double c_prime_hat = 0; // n * max_gap
};
// Gaps of the sorted points {beta_j - k alpha_1}, 0 <= k < n.
GapStats gap_stats(const BigFixed& alpha1, const std::vector<BigFixed>& betas, long n);

struct SchmidtRecord {
    long n = 0;
    long n1 = 0, n2 = 0;
    double dist = 0;     // ||n1 a1 - n2 a2||
    double exponent = 0; // -log dist / log n
};
// Best positive pair per log-spaced n; O(n_max^2) scan.
std::vector<SchmidtRecord> schmidt_exponent_probe(const RotationVector& alpha, long n_max);

} // namespace tlab
