#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace tlab {

// Gauss-Legendre nodes/weights on [0,1], computed once per order by Newton
// iteration on P_n.  Smooth integrands here are polynomials or mildly
// oscillatory exponentials, so order 32-64 reaches machine precision.
struct GaussLegendre {
    std::vector<double> x; // nodes in [0,1]
    std::vector<double> w;

    explicit GaussLegendre(int n) {
        x.resize(n);
        w.resize(n);
        for (int i = 0; i < n; ++i) {
            // initial guess (Chebyshev-like), then Newton on [-1,1]
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16)
                    break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = 0.5 * (1.0 + t);
            w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
        }
    }

    // integrate f over [a,b]
    template <class F> double integrate(F&& f, double a, double b) const {
        double s = 0;
        for (size_t i = 0; i < x.size(); ++i)
            s += w[i] * f(a + (b - a) * x[i]);
        return (b - a) * s;
    }
};

inline const GaussLegendre& gl32() {
    static const GaussLegendre g(32);
    return g;
}

inline const GaussLegendre& gl64() {
    static const GaussLegendre g(64);
    return g;
}

} // namespace tlab
