#include "tlab/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tlab/errors.hpp"
#include "tlab/quad.hpp"

namespace tlab {

namespace {

struct SawtoothOrbit {
    // per-term running point u_m = {w_m . x0 + shift_m + j * (w_m . alpha)}
    std::vector<DD> u;
    std::vector<DD> step;
    std::vector<double> coef;

    SawtoothOrbit(const std::vector<SawtoothTerm>& terms, const RotationVector& alpha,
                  const Pt& x0) {
        for (const auto& t : terms) {
            BigFixed theta = alpha.fixed(0).mul_long(t.w1);
            if (alpha.rho() == 2 && t.w2 != 0)
                theta = theta + alpha.fixed(1).mul_long(t.w2);
            step.push_back(theta.frac().to_dd());
            DD shift = t.shift_exact.approx().frac().to_dd();
            DD base = dd_frac(
                dd_add(dd_add(two_prod(t.w1, x0[0]), two_prod(t.w2, x0[1])), shift));
            u.push_back(base);
            coef.push_back(t.coef);
        }
    }

    // current value sum_m coef_m ({u_m} - 1/2), and advance
    DD value_and_boundary(double tol, bool& boundary) const {
        DD v(0.0);
        for (size_t m = 0; m < u.size(); ++m) {
            v = dd_add(v, dd_mul(dd_add(u[m], -0.5), coef[m]));
            double f = u[m].hi;
            if (f < tol || f > 1.0 - tol)
                boundary = true;
        }
        return v;
    }

    void advance() {
        for (size_t m = 0; m < u.size(); ++m)
            u[m] = dd_wrap1(dd_add(u[m], step[m]));
    }
};

std::vector<long> denominators_up_to(const RotationVector& alpha, long q_max) {
    int depth = 8;
    for (;;) {
        auto cf = expand_cf(alpha.exact(0), depth);
        auto t = convergents(cf, depth);
        std::vector<long> qs;
        for (auto& q : t.q) {
            if (q > q_max)
                return qs;
            long v = q.get_si();
            if (qs.empty() || v != qs.back())
                qs.push_back(v);
        }
        depth *= 2;
        if (depth > 512)
            throw DepthError("denominator table would exceed depth 512");
    }
}

long g_audit_counter = 0;
double g_audit_worst = 0;

// exact fixed-point orbit, long-double accumulation
double shadow_sum(const PlanarMap& map, const RotationVector& alpha, const Pt& x0, long m) {
    std::array<BigFixed, 2> p{BigFixed::from_double(x0[0]).frac(),
                              BigFixed::from_double(x0[1]).frac()};
    long double acc = 0;
    for (long j = 0; j < m; ++j) {
        auto q = rotate_fixed(alpha, p, j);
        acc += map.evaluate({q[0].to_double(), q[1].to_double()}, 0.0).value[0];
    }
    return static_cast<double>(acc);
}

} // namespace

double ergodic_audit_worst() { return g_audit_worst; }

ErgodicSumResult ergodic_sum(const PlanarMap& map, const RotationVector& alpha, const Pt& x0,
                             long n, double boundary_tol) {
    if (n < 0)
        throw ConfigError("ergodic_sum: n must be >= 0");
    ErgodicSumResult r;
    r.n = n;
    bool audit = n > 0 && (g_audit_counter++ % 100) == 0;

    if (const auto* terms = map.sawtooth()) {
        SawtoothOrbit orb(*terms, alpha, x0);
        DDSum acc;
        for (long j = 0; j < n; ++j) {
            bool boundary = false;
            DD v = orb.value_and_boundary(boundary_tol, boundary);
            if (boundary)
                ++r.boundary_hits;
            acc.add(v);
            orb.advance();
        }
        r.value[0] = acc.value();
    } else {
        DD u1 = dd_frac(DD(x0[0]));
        DD u2 = dd_frac(DD(x0[1]));
        DD a1 = alpha.dd(0);
        DD a2 = alpha.rho() == 2 ? alpha.dd(1) : DD(0.0);
        DDSum acc[2];
        for (long j = 0; j < n; ++j) {
            MapEval e = map.evaluate({u1.value(), u2.value()}, boundary_tol);
            if (e.boundary)
                ++r.boundary_hits;
            for (int c = 0; c < map.dim(); ++c)
                acc[c].add(e.value[c]);
            u1 = dd_wrap1(dd_add(u1, a1));
            if (alpha.rho() == 2)
                u2 = dd_wrap1(dd_add(u2, a2));
        }
        for (int c = 0; c < map.dim(); ++c)
            r.value[c] = acc[c].value();
    }
    if (n > 0 && r.boundary_hits > std::max(1.0, n * 1e-6))
        r.degenerate_orbit = true;
    if (audit) {
        long m = std::min(n, 2000L);
        ErgodicSumResult prefix = m == n ? r : ergodic_sum(map, alpha, x0, m, boundary_tol);
        double dev = std::abs(prefix.value[0] - shadow_sum(map, alpha, x0, m));
        if (dev > g_audit_worst)
            g_audit_worst = dev;
    }
    return r;
}

DenominatorSums sums_at_denominators(const PlanarMap& map, const RotationVector& alpha,
                                     const std::vector<double>& xs, long q_max) {
    const auto* terms = map.sawtooth();
    if (!terms || map.rho() != 1)
        throw ConfigError("sums_at_denominators needs a sawtooth T^1 map");
    DenominatorSums out;
    out.q = denominators_up_to(alpha, q_max);
    out.sums.resize(xs.size());
    long n_max = out.q.empty() ? 0 : out.q.back();
    for (size_t i = 0; i < xs.size(); ++i) {
        SawtoothOrbit orb(*terms, alpha, {xs[i], 0.0});
        DDSum acc;
        size_t next = 0;
        out.sums[i].reserve(out.q.size());
        for (long j = 0; j < n_max; ++j) {
            while (next < out.q.size() && out.q[next] == j) {
                out.sums[i].push_back(acc.value());
                ++next;
            }
            bool b = false;
            acc.add(orb.value_and_boundary(0.0, b));
            orb.advance();
        }
        while (next < out.q.size()) {
            out.sums[i].push_back(acc.value());
            ++next;
        }
    }
    return out;
}

std::vector<double> sup_over_grid_schedule(const PlanarMap& map, const RotationVector& alpha,
                                           const std::vector<long>& n_schedule,
                                           int grid_per_axis) {
    const int G = grid_per_axis;
    if (G < 2)
        throw ConfigError("sup_over_grid: grid too small");
    for (size_t i = 1; i < n_schedule.size(); ++i)
        if (n_schedule[i] <= n_schedule[i - 1])
            throw ConfigError("sup_over_grid: schedule must be increasing");

    const auto* terms = map.sawtooth();
    std::vector<double> sups;

    if (terms) {
        // Histogram engine: per term m the Birkhoff sum at grid offset g/G is
        //   coef * (n g/G - n/2 + S_n - #{j<n: u_j >= 1 - g/G})
        // with u_j = {w.x0 + shift + j w.alpha} and x0 = 0.  The count
        // thresholds are bin-aligned, so one histogram per term serves every
        // grid point, and one orbit pass serves the whole schedule.
        size_t M = terms->size();
        std::vector<DD> u(M), step(M);
        std::vector<std::vector<int64_t>> hist(M, std::vector<int64_t>(G, 0));
        std::vector<DDSum> S(M);
        for (size_t m = 0; m < M; ++m) {
            const auto& t = (*terms)[m];
            BigFixed theta = alpha.fixed(0).mul_long(t.w1);
            if (alpha.rho() == 2 && t.w2 != 0)
                theta = theta + alpha.fixed(1).mul_long(t.w2);
            step[m] = theta.frac().to_dd();
            u[m] = t.shift_exact.approx().frac().to_dd();
        }
        std::vector<std::vector<double>> A(M, std::vector<double>(G, 0.0));
        long n = 0;
        for (long target : n_schedule) {
            for (; n < target; ++n) {
                for (size_t m = 0; m < M; ++m) {
                    double f = u[m].value();
                    int b = std::min(G - 1, static_cast<int>(f * G));
                    ++hist[m][b];
                    S[m].add(u[m]);
                    u[m] = dd_wrap1(dd_add(u[m], step[m]));
                }
            }
            // per-term lookup tables
            for (size_t m = 0; m < M; ++m) {
                const auto& t = (*terms)[m];
                std::vector<int64_t> cumle(G + 1, 0); // # u in bins < b
                for (int b = 0; b < G; ++b)
                    cumle[b + 1] = cumle[b] + hist[m][b];
                double Sm = S[m].value();
                for (int g = 0; g < G; ++g) {
                    int64_t count_ge = n - cumle[G - g]; // #{u >= (G-g)/G}
                    A[m][g] =
                        t.coef * (static_cast<double>(n) * g / G - 0.5 * n + Sm - count_ge);
                }
            }
            double best = 0;
            if (map.rho() == 1) {
                for (int i = 0; i < G; ++i) {
                    double v = 0;
                    for (size_t m = 0; m < M; ++m) {
                        const auto& t = (*terms)[m];
                        int g = ((t.w1 * i) % G + G) % G;
                        v += A[m][g];
                    }
                    best = std::max(best, std::abs(v));
                }
            } else {
                for (int i = 0; i < G; ++i) {
                    for (int k = 0; k < G; ++k) {
                        double v = 0;
                        for (size_t m = 0; m < M; ++m) {
                            const auto& t = (*terms)[m];
                            int g = ((t.w1 * i + t.w2 * k) % G + G) % G;
                            v += A[m][g];
                        }
                        best = std::max(best, std::abs(v));
                    }
                }
            }
            sups.push_back(best);
        }
        return sups;
    }

    // direct fallback: one orbit per grid point
    std::vector<Pt> grid;
    if (map.rho() == 1) {
        for (int i = 0; i < G; ++i)
            grid.push_back({double(i) / G, 0.0});
    } else {
        for (int i = 0; i < G; ++i)
            for (int k = 0; k < G; ++k)
                grid.push_back({double(i) / G, double(k) / G});
    }
    sups.assign(n_schedule.size(), 0.0);
    for (const Pt& p : grid) {
        DD u1 = dd_frac(DD(p[0])), u2 = dd_frac(DD(p[1]));
        DD a1 = alpha.dd(0);
        DD a2 = alpha.rho() == 2 ? alpha.dd(1) : DD(0.0);
        DDSum acc;
        long n = 0;
        for (size_t s = 0; s < n_schedule.size(); ++s) {
            for (; n < n_schedule[s]; ++n) {
                acc.add(map.evaluate({u1.value(), u2.value()}, 0.0).value[0]);
                u1 = dd_wrap1(dd_add(u1, a1));
                if (alpha.rho() == 2)
                    u2 = dd_wrap1(dd_add(u2, a2));
            }
            sups[s] = std::max(sups[s], std::abs(acc.value()));
        }
    }
    return sups;
}

double sup_over_grid(const PlanarMap& map, const RotationVector& alpha, long n,
                     int grid_per_axis) {
    if (n == 0)
        return 0.0;
    return sup_over_grid_schedule(map, alpha, {n}, grid_per_axis)[0];
}

double triangle_identity_residual(double x, double y, double boundary_tol) {
    auto fr = [](double u) { return u - std::floor(u); };
    double fx = fr(x), fy = fr(y);
    double dd = std::abs(fx - fy);
    if (std::min(dd, 1.0 - dd) < boundary_tol || std::min(fx, 1.0 - fx) < boundary_tol ||
        std::min(fy, 1.0 - fy) < boundary_tol)
        throw BoundaryHit("triangle identity sampled on a boundary line");
    double ind = fx < fy ? 1.0 : 0.0;
    double combo = fr(fx - fy) + fy - fx;
    return std::abs(ind - combo);
}

LambdaFunctionals lambda_functionals(const PlanarMap& map, double tol) {
    if (map.rho() != 2)
        throw ConfigError("lambda_functionals: T^2 maps only");
    if (map.cls() == MapClass::TRIANGLE || map.cls() == MapClass::STEP)
        throw ConfigError("lambda_functionals: map is not in class F1/F2");
    LambdaFunctionals out;
    const auto& gl = gl32();
    auto xb = map.breakpoints(0);
    auto yb = map.breakpoints(1);
    int rx = static_cast<int>(xb.size()) - 1;
    int ry = static_cast<int>(yb.size()) - 1;

    for (int comp = 0; comp < map.dim(); ++comp) {
        // boundary trace formula for lambda_1:
        //   sum_j int [phi((b_{j+1})-, y) - phi((b_j)+, y)] dy
        double l1 = 0;
        for (int jx = 0; jx < rx; ++jx) {
            for (int jy = 0; jy < ry; ++jy) {
                l1 += gl.integrate(
                    [&](double y) {
                        return map.piece_value(comp, jx, jy, {xb[jx + 1], y}) -
                               map.piece_value(comp, jx, jy, {xb[jx], y});
                    },
                    yb[jy], yb[jy + 1]);
            }
        }
        double l2 = 0;
        for (int jy = 0; jy < ry; ++jy) {
            for (int jx = 0; jx < rx; ++jx) {
                l2 += gl.integrate(
                    [&](double x) {
                        return map.piece_value(comp, jx, jy, {x, yb[jy + 1]}) -
                               map.piece_value(comp, jx, jy, {x, yb[jy]});
                    },
                    xb[jx], xb[jx + 1]);
            }
        }
        out.boundary[0][comp] = l1;
        out.boundary[1][comp] = l2;

        for (int axis = 0; axis < 2; ++axis) {
            double q = 0;
            for (int jx = 0; jx < rx; ++jx) {
                for (int jy = 0; jy < ry; ++jy) {
                    for (size_t a = 0; a < gl.x.size(); ++a) {
                        double x = xb[jx] + (xb[jx + 1] - xb[jx]) * gl.x[a];
                        double row = 0;
                        for (size_t b = 0; b < gl.x.size(); ++b) {
                            double y = yb[jy] + (yb[jy + 1] - yb[jy]) * gl.x[b];
                            row += gl.w[b] * map.partial(comp, axis, {x, y});
                        }
                        q += gl.w[a] * row * (xb[jx + 1] - xb[jx]) * (yb[jy + 1] - yb[jy]);
                    }
                }
            }
            out.quadrature[axis][comp] = q;
            out.disagreement = std::max(out.disagreement,
                                        std::abs(out.quadrature[axis][comp] -
                                                 out.boundary[axis][comp]));
        }
    }
    if (map.dim() == 2)
        out.det_M = out.boundary[0][0] * out.boundary[1][1] -
                    out.boundary[1][0] * out.boundary[0][1];
    if (out.disagreement > tol)
        throw DegeneracyError("lambda functionals: boundary and quadrature routes disagree by " +
                              std::to_string(out.disagreement));
    return out;
}

SandwichReport derivative_sandwich_check(const PlanarMap& map, const RotationVector& alpha,
                                         long n, int samples, unsigned long seed) {
    SandwichReport rep;
    rep.n = n;
    auto lam = lambda_functionals(map);
    rep.lambda1 = lam.boundary[0][0];
    if (rep.lambda1 == 0)
        throw ConfigError("derivative sandwich: lambda_1 = 0");

    // endpoints of the x-cells of the refined partition P^n
    auto xb = map.breakpoints(0);
    std::vector<double> offs;
    offs.reserve(xb.size() * n);
    for (double b : xb) {
        if (b >= 1.0)
            continue;
        DD u = dd_frac(DD(b));
        DD ma = alpha.dd(0);
        for (long k = 0; k < n; ++k) {
            offs.push_back(u.value());
            u = dd_wrap1(dd_sub(u, ma)); // {b - k alpha_1}
        }
    }
    std::sort(offs.begin(), offs.end());

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int tried = 0;
    while (rep.samples < samples && tried < samples * 20) {
        ++tried;
        size_t gi = static_cast<size_t>(rng() % offs.size());
        double left = offs[gi];
        double right = gi + 1 < offs.size() ? offs[gi + 1] : offs[0] + 1.0;
        double w = right - left;
        if (w < 1e-13)
            continue;
        double x1 = left + w * (0.05 + 0.4 * unif(rng));
        double u1 = w * (0.1 + 0.35 * unif(rng));
        double y = unif(rng);
        auto s1 = ergodic_sum(map, alpha, {x1, y}, n, 0.0);
        auto s2 = ergodic_sum(map, alpha, {x1 + u1, y}, n, 0.0);
        double diff = std::abs(s2.value[0] - s1.value[0]);
        double scale = n * std::abs(rep.lambda1) * u1;
        ++rep.samples;
        if (diff >= 0.5 * scale && diff <= 2.0 * scale)
            ++rep.passed;
    }
    if (rep.samples == 0)
        throw SamplingError("derivative sandwich: no same-cell pair found");
    return rep;
}

double grid_mean(const PlanarMap& map, int comp, int G) {
    DDSum acc;
    if (map.rho() == 1) {
        for (int i = 0; i < G; ++i)
            acc.add(map.evaluate({(i + 0.5) / G, 0.0}, 0.0).value[comp]);
        return acc.value() / G;
    }
    for (int i = 0; i < G; ++i)
        for (int k = 0; k < G; ++k)
            acc.add(map.evaluate({(i + 0.5) / G, (k + 0.5) / G}, 0.0).value[comp]);
    return acc.value() / (double(G) * G);
}

} // namespace tlab
