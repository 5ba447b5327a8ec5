#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "tlab/exact.hpp"
#include "tlab/rotation.hpp"

namespace tlab {

enum class MapClass { STEP, F1, F2, G, TRIANGLE };

// coef * ({w1 x1 + w2 x2 + shift} - 1/2); the building block behind the
// fast ergodic-sum engines.  w is an integer form so grid-aligned offsets
// stay grid-aligned.
struct SawtoothTerm {
    double coef;
    int w1, w2;
    double shift;
    ExactReal shift_exact;
};

// A linear-form pair (l1, l2) of the Fourier decay model (majCoef-style):
// |c_h| <= C * sum_k 1/(|l1(h)|+ |l2(h)|+).  Coefficients act on h=(s,t).
struct DecayFormPair {
    std::array<double, 2> l1;
    std::array<double, 2> l2;
};

struct MapEval {
    std::array<double, 2> value{0, 0};
    int cell = 0;
    bool boundary = false;
};

// T^rho -> R^d, piecewise smooth over a breakpoint grid (or a triangle).
class PlanarMap {
public:
    virtual ~PlanarMap() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0; // d
    virtual int rho() const = 0; // base torus dimension
    virtual MapClass cls() const = 0;

    virtual MapEval evaluate(const Pt& x, double boundary_tol = 1e-12) const = 0;

    // First partial d(phi^comp)/d(x_axis) at an off-boundary point.
    virtual double partial(int comp, int axis, const Pt& x) const;

    // Continuous extension of the (jx, jy) piece to its closed cell.
    virtual double piece_value(int comp, int jx, int jy, const Pt& x) const;

    // Sorted breakpoints in [0,1] including both endpoints, per axis.
    virtual std::vector<double> breakpoints(int axis) const;

    virtual std::vector<double> mean() const { return std::vector<double>(dim(), 0.0); }

    // Total variation (rho = 1, BV maps).
    virtual double variation() const { return 0.0; }

    // Optional structure used by the fast engines.
    virtual const std::vector<SawtoothTerm>* sawtooth() const { return nullptr; }
    virtual bool is_frac_product() const { return false; } // {x1}{x2} - 1/4
    virtual std::vector<DecayFormPair> decay_forms() const { return {}; }
};

using MapPtr = std::shared_ptr<const PlanarMap>;

// Registry lookup.  Accepted names:
//   "zero"               0 on T^2
//   "psi"                {x} - 1/2 on T^1
//   "step(beta)"         1_[0,beta) - beta on T^1
//   "triangle0"          1_{x<y} - 1/2 on T^2
//   "indicator(a,b,c)"   1_{Delta(a,b,c)} - ac/2 on T^2
//   "xy_quarter"         {x1}{x2} - 1/4
//   "gamma(g1,g2)"       {g1 x1}{g2 x2} centered, g in [1,2)
//   "cosine(h1,h2)"      cos(2 pi (h1 x1 + h2 x2))
MapPtr make_map(const std::string& spec);

// Triangle with vertices (0,0), (a,b), (0,c); 0 < a,c <= 1, c-1 <= b <= 1.
struct TriangleSpec {
    double a = 1, b = 1, c = 1;
    double area() const { return a * c / 2; }
};

// Membership of Delta_0 = {(x,y): {x} < {y}} without building a map.
inline bool in_delta0(double x, double y) { return x < y; }

} // namespace tlab
