#include "tlab/fourier.hpp"

#include <cmath>

#include "tlab/errors.hpp"
#include "tlab/quad.hpp"

namespace tlab {

namespace {

// E(mu) = int_0^1 e^{-2 pi i mu u} du = e^{-i pi mu} sinc(pi mu)
Complex E_kernel(double mu) {
    double z = M_PI * mu;
    double sinc = std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    return Complex(std::cos(z), -std::sin(z)) * sinc;
}

// F(mu) = int_0^1 (1-u) e^{-2 pi i mu u} du = (e^z - 1 - z)/z^2, z = -2 pi i mu
Complex F_kernel(double mu) {
    Complex z(0.0, -2.0 * M_PI * mu);
    if (std::abs(mu) < 0.08) {
        // 1/2 + z/6 + z^2/24 + z^3/120 + z^4/720 + ...
        Complex acc(0.0), term(1.0);
        double denom[] = {2, 6, 24, 120, 720, 5040, 40320, 362880};
        for (int k = 0; k < 8; ++k) {
            acc += term / denom[k];
            term *= z;
        }
        return acc;
    }
    return (std::exp(z) - 1.0 - z) / (z * z);
}

double frac(double u) { return u - std::floor(u); }

// |sin(pi N theta)| via the fractional part of N theta
double abs_sin_pi(double u) { return std::sin(M_PI * frac(u)); }

} // namespace

FourierSpectrum::FourierSpectrum(int dims, int H) : dims_(dims), H_(H) {
    if (dims != 1 && dims != 2)
        throw ConfigError("FourierSpectrum: dims must be 1 or 2");
    size_t side = 2 * static_cast<size_t>(H) + 1;
    c_.assign(dims == 1 ? side : side * side, Complex(0.0));
}

Complex& FourierSpectrum::at(int h1, int h2) {
    size_t side = 2 * static_cast<size_t>(H_) + 1;
    if (std::abs(h1) > H_ || std::abs(h2) > H_)
        throw ConfigError("FourierSpectrum index out of range");
    if (dims_ == 1)
        return c_[h1 + H_];
    return c_[(h1 + H_) * side + (h2 + H_)];
}

Complex FourierSpectrum::at(int h1, int h2) const {
    return const_cast<FourierSpectrum*>(this)->at(h1, h2);
}

Complex triangle_coeff(const TriangleSpec& tri, int s, int t) {
    double a = tri.a, b = tri.b, c = tri.c;
    if (t == 0) {
        // c(s,0) = a c F(a s)
        return a * c * F_kernel(a * s);
    }
    // c(s,t) = a/(-2 pi i t) [ e^{-2 pi i t c} E(as + t(b-c)) - E(as + tb) ]
    Complex phase(std::cos(2 * M_PI * t * c), -std::sin(2 * M_PI * t * c));
    Complex bracket = phase * E_kernel(a * s + t * (b - c)) - E_kernel(a * s + t * b);
    return bracket * (a / Complex(0.0, -2.0 * M_PI * t));
}

Complex triangle_coeff_quadrature(const TriangleSpec& tri, int s, int t, double tol) {
    // substitute x = a u, y = b u + w c (1-u); Jacobian a c (1-u)
    auto eval = [&](int order) {
        GaussLegendre gl(order);
        Complex acc(0.0);
        for (int i = 0; i < order; ++i) {
            double u = gl.x[i];
            Complex row(0.0);
            for (int j = 0; j < order; ++j) {
                double w = gl.x[j];
                double x = tri.a * u;
                double y = tri.b * u + w * tri.c * (1.0 - u);
                double ph = -2.0 * M_PI * (s * x + t * y);
                row += gl.w[j] * Complex(std::cos(ph), std::sin(ph));
            }
            acc += gl.w[i] * row * (1.0 - u);
        }
        return acc * (tri.a * tri.c);
    };
    Complex prev = eval(16);
    for (int order = 32; order <= 256; order *= 2) {
        Complex cur = eval(order);
        if (std::abs(cur - prev) < tol)
            return cur;
        prev = cur;
    }
    return prev;
}

FourierSpectrum triangle_spectrum(const TriangleSpec& tri, int H) {
    FourierSpectrum spec(2, H);
    for (int s = -H; s <= H; ++s)
        for (int t = -H; t <= H; ++t)
            spec.at(s, t) = triangle_coeff(tri, s, t);
    spec.at(0, 0) -= tri.area(); // centered
    spec.decay_model = {
        {{{0, 1}}, {{1, 0}}},
        {{{0, 1}}, {{tri.a, tri.b}}},
        {{{0, 1}}, {{tri.a, tri.b - tri.c}}},
    };
    return spec;
}

FourierSpectrum sawtooth1d_spectrum(int H) {
    FourierSpectrum spec(1, H);
    for (int r = -H; r <= H; ++r) {
        if (r == 0)
            continue;
        // {x} - 1/2 = -sum_{r != 0} e^{2 pi i r x} / (2 pi i r)
        spec.at(r) = Complex(0.0, 1.0) / (2.0 * M_PI * r);
    }
    return spec;
}

FourierSpectrum parabola_spectrum(int H) {
    FourierSpectrum spec(1, H);
    for (int r = -H; r <= H; ++r) {
        if (r == 0)
            continue;
        spec.at(r) = Complex(-1.0 / (2.0 * M_PI * M_PI * double(r) * r), 0.0);
    }
    return spec;
}

DecayCheck decay_bound_check(const FourierSpectrum& spec, int H_max) {
    if (spec.decay_model.empty())
        throw ConfigError("decay_bound_check: spectrum has no decay model");
    DecayCheck out;
    spec.for_each_nonzero_index([&](int h1, int h2) {
        if (std::abs(h1) > H_max || std::abs(h2) > H_max)
            return;
        double bound = 0;
        for (const auto& pair : spec.decay_model) {
            double l1 = std::abs(pair.l1[0] * h1 + pair.l1[1] * h2);
            double l2 = std::abs(pair.l2[0] * h1 + pair.l2[1] * h2);
            bound += 1.0 / (std::max(l1, 1.0) * std::max(l2, 1.0));
        }
        double mag = std::abs(spec.at(h1, h2));
        if (mag > 0)
            out.fitted_C = std::max(out.fitted_C, mag / bound);
    });
    return out;
}

std::vector<L2GrowthRow> l2_sum_growth(const FourierSpectrum& spec, const RotationVector& alpha,
                                       const std::vector<long>& N_schedule, double t_exponent) {
    if (!(t_exponent > 1.0 && t_exponent < 2.0))
        throw ConfigError("l2_sum_growth: need 1 < t < 2");
    // precompute {h.alpha} and |c_h|^2 for the nonzero coefficients
    struct Entry {
        double theta, dist, c2;
    };
    std::vector<Entry> entries;
    spec.for_each_nonzero_index([&](int h1, int h2) {
        Complex c = spec.at(h1, h2);
        double c2 = std::norm(c);
        if (c2 == 0)
            return;
        BigFixed dot = alpha.fixed(0).mul_long(h1);
        if (alpha.rho() == 2)
            dot = dot + alpha.fixed(1).mul_long(h2);
        double theta = dot.frac().to_double();
        double dist = std::min(theta, 1.0 - theta);
        entries.push_back({theta, dist, c2});
    });

    std::vector<L2GrowthRow> rows;
    for (long N : N_schedule) {
        L2GrowthRow row;
        row.N = N;
        DDSum ex, mn, sb;
        for (const auto& e : entries) {
            double dn;
            double s_denom = std::sin(M_PI * e.theta);
            if (s_denom == 0)
                throw DegeneracyError("l2_sum_growth: resonant frequency");
            dn = abs_sin_pi(double(N) * e.theta) / std::abs(s_denom);
            double exact_h = e.c2 * dn * dn;
            double m = std::min(static_cast<double>(N), 1.0 / e.dist);
            double min_h = e.c2 * m * m;
            double series_h = e.c2 * std::pow(static_cast<double>(N), 2.0 - t_exponent) /
                              std::pow(e.dist, t_exponent);
            if (exact_h > min_h * (1 + 1e-9) + 1e-300 || min_h > series_h * (1 + 1e-9) + 1e-300)
                row.chain_ok = false;
            ex.add(exact_h);
            mn.add(min_h);
            sb.add(series_h);
        }
        row.exact = ex.value();
        row.min_bound = mn.value();
        row.series_bound = sb.value();
        rows.push_back(row);
    }
    return rows;
}

double niederreiter_sum(const RotationVector& alpha, const DecayFormPair& forms, double t,
                        int H_max) {
    if (t <= 1.0)
        throw ConfigError("niederreiter_sum: need t > 1");
    DDSum acc;
    for (int h1 = -H_max; h1 <= H_max; ++h1) {
        for (int h2 = -H_max; h2 <= H_max; ++h2) {
            if (h1 == 0 && h2 == 0)
                continue;
            double l1 = std::abs(forms.l1[0] * h1 + forms.l1[1] * h2);
            double l2 = std::abs(forms.l2[0] * h1 + forms.l2[1] * h2);
            double R = std::max(l1, 1.0) * std::max(l2, 1.0);
            double dist = alpha.dot_dist(h1, h2).to_double();
            acc.add(1.0 / (R * R * std::pow(dist, t)));
        }
    }
    return acc.value();
}

double eval_spectrum_1d(const FourierSpectrum& spec, double x) {
    // c_0 + 2 Re sum_{r>=1} c_r e^{2 pi i r x}, incremental rotor
    Complex z(std::cos(2 * M_PI * x), std::sin(2 * M_PI * x));
    Complex p(1.0);
    DDSum acc;
    acc.add(spec.at(0).real());
    for (int r = 1; r <= spec.H(); ++r) {
        p *= z;
        acc.add(2.0 * (spec.at(r) * p).real());
    }
    return acc.value();
}

CoboundaryResult coboundary_solve(const FourierSpectrum& phi, const RotationVector& alpha,
                                  const std::function<double(double)>& phi_exact, int grid) {
    if (phi.dims() != 1)
        throw ConfigError("coboundary_solve: 1-D spectra only");
    if (std::abs(phi.at(0)) > 1e-12)
        throw ConfigError("coboundary_solve: phi must be centered (c_0 = 0)");
    int H = phi.H();
    CoboundaryResult out{FourierSpectrum(1, H), 0, 0, 1.0};
    for (int n = -H; n <= H; ++n) {
        if (n == 0)
            continue;
        double theta = alpha.fixed(0).mul_long(n).frac().to_double();
        double dist = std::min(theta, 1.0 - theta);
        out.min_norm_na = std::min(out.min_norm_na, dist);
        if (dist < 1e-15)
            throw NearResonance("||n alpha|| < 1e-15 at n = " + std::to_string(n));
        Complex denom =
            Complex(std::cos(2 * M_PI * theta) - 1.0, std::sin(2 * M_PI * theta));
        out.psi.at(n) = phi.at(n) / denom;
    }
    out.truncation_est = std::max(std::abs(phi.at(H)), std::abs(phi.at(-H))) * H;
    // midpoint grid keeps the worst-case tail point x = 0 (where all the
    // truncated cosines align) out of the sample; discontinuous test maps
    // also live at grid vertices
    double alpha_d = alpha.dbl(0);
    double worst = 0;
    for (int i = 0; i < grid; ++i) {
        double x = (i + 0.5) / grid;
        double lhs = phi_exact(x);
        double rhs = eval_spectrum_1d(out.psi, frac(x + alpha_d)) - eval_spectrum_1d(out.psi, x);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.residual = worst;
    return out;
}

} // namespace tlab
