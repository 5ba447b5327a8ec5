#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "tlab/maps.hpp"
#include "tlab/rotation.hpp"

namespace tlab {

using Complex = std::complex<double>;

// Dense table of Fourier coefficients over the ball |h|_inf <= H (2-D) or
// |r| <= H (1-D), plus optional decay-model metadata.
class FourierSpectrum {
public:
    FourierSpectrum(int dims, int H);

    int dims() const { return dims_; }
    int H() const { return H_; }

    Complex& at(int h1, int h2 = 0);
    Complex at(int h1, int h2 = 0) const;

    // Iteration support: all indices with (h1,h2) != (0,0).
    template <class F> void for_each_nonzero_index(F&& f) const {
        if (dims_ == 1) {
            for (int r = -H_; r <= H_; ++r)
                if (r != 0)
                    f(r, 0);
        } else {
            for (int h1 = -H_; h1 <= H_; ++h1)
                for (int h2 = -H_; h2 <= H_; ++h2)
                    if (h1 != 0 || h2 != 0)
                        f(h1, h2);
        }
    }

    std::vector<DecayFormPair> decay_model;

private:
    int dims_, H_;
    std::vector<Complex> c_;
};

// Closed-form Fourier coefficient of 1_Delta(a,b,c):
//   c(s,t) = int_Delta e^{-2 pi i (s x + t y)} dx dy.
// Degenerate denominators (t = 0, bt+as = 0, (b-c)t+as = 0) are exact
// limits of the same formula, evaluated through a stable e^{-i pi u} sinc(u)
// kernel instead of per-case branches.
Complex triangle_coeff(const TriangleSpec& tri, int s, int t);

// Independent route: adaptive tensor Gauss-Legendre over the triangle,
// refined until two orders agree below tol.  Kept separate from the closed
// form so the two can cross-check each other.
Complex triangle_coeff_quadrature(const TriangleSpec& tri, int s, int t, double tol = 1e-11);

// Spectrum of 1_Delta - area over |h|_inf <= H, with the decay model filled in.
FourierSpectrum triangle_spectrum(const TriangleSpec& tri, int H);

// Spectrum of psi = {x} - 1/2: c_r = i/(2 pi r).
FourierSpectrum sawtooth1d_spectrum(int H);
// Spectrum of x(1-x) - 1/6 = -(1/pi^2) sum cos(2 pi n x)/n^2.
FourierSpectrum parabola_spectrum(int H);

struct DecayCheck {
    double fitted_C = 0; // smallest C making |c_h| <= C sum_k 1/(|l1(h)| |l2(h)|)+ hold
    long violations = 0; // always 0 by construction of fitted_C
};
DecayCheck decay_bound_check(const FourierSpectrum& spec, int H_max);

struct L2GrowthRow {
    long N = 0;
    double exact = 0;        // sum |c_h|^2 |D_N(h.alpha)|^2
    double min_bound = 0;    // sum |c_h|^2 min(N, 1/||h.alpha||)^2
    double series_bound = 0; // N^{2-t} sum |c_h|^2 / ||h.alpha||^t
    bool chain_ok = true;    // exact <= min <= series termwise
};
std::vector<L2GrowthRow> l2_sum_growth(const FourierSpectrum& spec, const RotationVector& alpha,
                                       const std::vector<long>& N_schedule, double t_exponent);

// Partial sum of sum_h 1/(R(h)^2 ||h.alpha||^t), R = |l1(h)|+ |l2(h)|+.
double niederreiter_sum(const RotationVector& alpha, const DecayFormPair& forms, double t,
                        int H_max);

struct CoboundaryResult {
    FourierSpectrum psi;
    double residual = 0;       // max_x |phi(x) - psi(x+a) + psi(x)| on the grid
    double truncation_est = 0; // sum_{|n|>H} |c_n(phi)| (tail estimate)
    double min_norm_na = 0;    // smallest ||n alpha|| encountered
};
// Solve phi = psi o T - psi by c_n(psi) = c_n(phi)/(e^{2 pi i n alpha} - 1).
// The residual is evaluated against phi_exact on a midpoint grid.
CoboundaryResult coboundary_solve(const FourierSpectrum& phi, const RotationVector& alpha,
                                  const std::function<double(double)>& phi_exact,
                                  int grid = 10000);

// Evaluate a 1-D spectrum at x by direct trigonometric summation.
double eval_spectrum_1d(const FourierSpectrum& spec, double x);

} // namespace tlab
