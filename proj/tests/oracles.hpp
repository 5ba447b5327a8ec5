#pragma once

// Test-only oracles, kept independent of the library's closed forms.

#include <complex>
#include <functional>

#include "tlab/maps.hpp"
#include "tlab/quad.hpp"

namespace oracle {

// Adaptive tensor Gauss-Legendre integral of f over the triangle with
// vertices (0,0), (a,b), (0,c): substitute x = a u, y = b u + w c (1-u),
// Jacobian a c (1-u), then double the order until two estimates agree.
inline std::complex<double> triangle_integral(
    const tlab::TriangleSpec& tri,
    const std::function<std::complex<double>(double, double)>& f, double tol = 1e-11) {
    auto eval = [&](int order) {
        tlab::GaussLegendre gl(order);
        std::complex<double> acc(0.0);
        for (int i = 0; i < order; ++i) {
            double u = gl.x[i];
            std::complex<double> row(0.0);
            for (int j = 0; j < order; ++j) {
                double w = gl.x[j];
                row += gl.w[j] * f(tri.a * u, tri.b * u + w * tri.c * (1.0 - u));
            }
            acc += gl.w[i] * row * (1.0 - u);
        }
        return acc * (tri.a * tri.c);
    };
    std::complex<double> prev = eval(16);
    for (int order = 32; order <= 256; order *= 2) {
        std::complex<double> cur = eval(order);
        if (std::abs(cur - prev) < tol)
            return cur;
        prev = cur;
    }
    return prev;
}

// Fourier coefficient of 1_Delta by quadrature.
inline std::complex<double> triangle_coeff_quad(const tlab::TriangleSpec& tri, int s, int t,
                                                double tol = 1e-11) {
    return triangle_integral(
        tri,
        [&](double x, double y) {
            double ph = -2.0 * M_PI * (s * x + t * y);
            return std::complex<double>(std::cos(ph), std::sin(ph));
        },
        tol);
}

// 1-D Fourier coefficient of a callable on [0,1] by panel Gauss-Legendre.
inline std::complex<double> coeff_1d_quad(const std::function<double(double)>& f, int r,
                                          int panels = 64) {
    const auto& gl = tlab::gl64();
    std::complex<double> acc(0.0);
    for (int p = 0; p < panels; ++p) {
        double a = double(p) / panels, b = double(p + 1) / panels;
        for (size_t i = 0; i < gl.x.size(); ++i) {
            double x = a + (b - a) * gl.x[i];
            double ph = -2.0 * M_PI * r * x;
            acc += gl.w[i] * (b - a) * f(x) * std::complex<double>(std::cos(ph), std::sin(ph));
        }
    }
    return acc;
}

} // namespace oracle
