#include "tlab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "tlab/errors.hpp"

namespace tlab {

namespace {

double frac(double u) { return u - std::floor(u); }

bool in_boxes(const std::vector<std::array<double, 4>>& boxes, double x, double y) {
    if (boxes.empty())
        return true; // whole torus
    for (const auto& b : boxes)
        if (x >= b[0] && x < b[1] && y >= b[2] && y < b[3])
            return true;
    return false;
}

struct OrbitDD {
    DD u1, u2, a1, a2;
    int rho;
    explicit OrbitDD(const RotationVector& alpha, const Pt& x0) : rho(alpha.rho()) {
        u1 = dd_frac(DD(x0[0]));
        u2 = dd_frac(DD(x0[1]));
        a1 = alpha.dd(0);
        a2 = rho == 2 ? alpha.dd(1) : DD(0.0);
    }
    Pt pt() const { return {u1.value(), u2.value()}; }
    void advance() {
        u1 = dd_wrap1(dd_add(u1, a1));
        if (rho == 2)
            u2 = dd_wrap1(dd_add(u2, a2));
    }
};

double slope_fit(const std::vector<double>& lx, const std::vector<double>& ly) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = lx.size();
    for (size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

SkewOrbit simulate_skew(const RotationVector& alpha, const PlanarMap& map, const Pt& x0,
                        const std::array<double, 2>& z0, long N, long decimation) {
    if (N < 0 || decimation < 1)
        throw ConfigError("simulate_skew: need N >= 0, decimation >= 1");
    if (N > 100000000)
        throw ConfigError("simulate_skew: N capped at 1e8");
    if (N / decimation > 2000000)
        throw ConfigError("simulate_skew: decimation too fine, need N/decimation <= 2e6");
    SkewOrbit orb;
    orb.mode = FiberMode::REAL;
    orb.N = N;
    orb.decimation = decimation;
    OrbitDD base(alpha, x0);
    DDSum acc[2];
    for (long n = 0; n < N; ++n) {
        if (n % decimation == 0) {
            orb.n.push_back(n);
            orb.x.push_back(base.pt());
            orb.z.push_back({z0[0] + acc[0].value(), z0[1] + acc[1].value()});
        }
        MapEval e = map.evaluate(base.pt(), 1e-12);
        if (e.boundary)
            ++orb.boundary_hits;
        for (int c = 0; c < map.dim(); ++c)
            acc[c].add(e.value[c]);
        base.advance();
    }
    orb.n.push_back(N);
    orb.x.push_back(base.pt());
    orb.z.push_back({z0[0] + acc[0].value(), z0[1] + acc[1].value()});
    if (orb.boundary_hits > std::max(1.0, N * 1e-6))
        orb.degenerate_orbit = true;
    // telescoping: the final fiber state must equal z0 + Phi_N(x0)
    auto full = ergodic_sum(map, alpha, x0, N);
    orb.telescoping_residual = std::abs(orb.z.back()[0] - z0[0] - full.value[0]);
    if (map.dim() == 2)
        orb.telescoping_residual = std::max(
            orb.telescoping_residual, std::abs(orb.z.back()[1] - z0[1] - full.value[1]));
    return orb;
}

SkewOrbit simulate_skew_torus(const RotationVector& alpha, const std::vector<BigFixed>& a,
                              const Pt& x0, const std::array<double, 2>& y0, long N,
                              long decimation) {
    if (a.empty() || a.size() > 2)
        throw ConfigError("simulate_skew_torus: fiber dimension 1 or 2");
    SkewOrbit orb;
    orb.mode = FiberMode::TORUS;
    orb.N = N;
    orb.decimation = decimation;
    OrbitDD base(alpha, x0);
    long hits = 0; // cumulative count of Delta_0 visits
    for (long n = 0; n < N; ++n) {
        if (n % decimation == 0) {
            orb.n.push_back(n);
            orb.x.push_back(base.pt());
            std::array<double, 2> y{0, 0};
            for (size_t c = 0; c < a.size(); ++c)
                y[c] = frac(y0[c] + a[c].mul_long(hits).frac().to_double());
            orb.z.push_back(y);
        }
        Pt p = base.pt();
        if (p[0] < p[1])
            ++hits;
        base.advance();
    }
    return orb;
}

RecurrenceReport recurrence_probe(const RotationVector& alpha, const PlanarMap& map, long N_max,
                                  int M, unsigned long seed) {
    if (M < 1)
        throw ConfigError("recurrence_probe: M >= 1");
    RecurrenceReport rep;
    rep.N_max = N_max;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<long> passages;
    for (int m = 0; m < M; ++m) {
        RecurrencePoint pt;
        pt.x0 = {unif(rng), map.rho() == 2 ? unif(rng) : 0.0};
        OrbitDD base(alpha, pt.x0);
        DDSum acc[2];
        pt.min_abs = 1e300;
        pt.tail_min = 1e300;
        for (long n = 1; n <= N_max; ++n) {
            MapEval e = map.evaluate(base.pt(), 0.0);
            for (int c = 0; c < map.dim(); ++c)
                acc[c].add(e.value[c]);
            base.advance();
            double mag = std::abs(acc[0].value());
            if (map.dim() == 2)
                mag = std::hypot(acc[0].value(), acc[1].value());
            if (mag < pt.min_abs) {
                pt.min_abs = mag;
                pt.argmin = n;
            }
            if (n > N_max / 2)
                pt.tail_min = std::min(pt.tail_min, mag);
            for (size_t r = 0; r < kReturnRadii.size(); ++r)
                if (pt.first_passage[r] == 0 && mag < kReturnRadii[r])
                    pt.first_passage[r] = n;
        }
        pt.transient_suspect = pt.tail_min > kReturnRadii[0];
        if (pt.transient_suspect)
            ++rep.flagged;
        if (pt.first_passage[1] > 0)
            passages.push_back(pt.first_passage[1]);
        rep.points.push_back(pt);
    }
    if (!passages.empty()) {
        std::sort(passages.begin(), passages.end());
        auto q = [&](double p) { return double(passages[size_t(p * (passages.size() - 1))]); };
        rep.passage_quantiles = {q(0.25), q(0.5), q(0.75)};
    }
    return rep;
}

L2GrowthProbe l2_growth_probe(const RotationVector& alpha, const PlanarMap& map,
                              const std::vector<long>& N_schedule, int M, unsigned long seed) {
    if (M < 2)
        throw ConfigError("l2_growth_probe: M >= 2");
    L2GrowthProbe out;
    out.N = N_schedule;
    out.d = map.dim();
    size_t S = N_schedule.size();
    std::vector<std::vector<double>> sq(M, std::vector<double>(S, 0.0));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int m = 0; m < M; ++m) {
        Pt x0{unif(rng), map.rho() == 2 ? unif(rng) : 0.0};
        OrbitDD base(alpha, x0);
        DDSum acc[2];
        long n = 0;
        for (size_t s = 0; s < S; ++s) {
            for (; n < N_schedule[s]; ++n) {
                MapEval e = map.evaluate(base.pt(), 0.0);
                for (int c = 0; c < map.dim(); ++c)
                    acc[c].add(e.value[c]);
                base.advance();
            }
            double v = acc[0].value() * acc[0].value();
            if (map.dim() == 2)
                v += acc[1].value() * acc[1].value();
            sq[m][s] = v;
        }
    }
    std::vector<double> lx, ly;
    for (size_t s = 0; s < S; ++s) {
        double mean = 0;
        for (int m = 0; m < M; ++m)
            mean += sq[m][s];
        mean /= M;
        out.l2.push_back(std::sqrt(mean));
        lx.push_back(std::log(double(N_schedule[s])));
        ly.push_back(0.5 * std::log(mean));
    }
    out.slope = slope_fit(lx, ly);

    const int B = 200;
    std::vector<double> slopes;
    for (int b = 0; b < B; ++b) {
        std::vector<double> by(S, 0.0);
        for (int m = 0; m < M; ++m) {
            int pick = int(rng() % M);
            for (size_t s = 0; s < S; ++s)
                by[s] += sq[pick][s];
        }
        std::vector<double> lyb;
        for (size_t s = 0; s < S; ++s)
            lyb.push_back(0.5 * std::log(by[s] / M));
        slopes.push_back(slope_fit(lx, lyb));
    }
    std::sort(slopes.begin(), slopes.end());
    out.ci_lo = slopes[size_t(0.025 * (B - 1))];
    out.ci_hi = slopes[size_t(0.975 * (B - 1))];
    out.recgen_consistent = out.ci_hi < 1.0 / out.d;
    return out;
}

namespace {

// Exact rank-1 rearrangement of Phi_n for {x}{y} - 1/4 on a uniform grid:
// with u_k = {k a1}, v_k = {k a2} and grid-aligned thresholds,
//   Phi_n(x,y) = n x y + x Sv + y Su + Suv - x B(y) - UB(y)
//              - y A(x) - VA(x) + N2(x,y) - n/4,
// where A, VA, B, UB are suffix sums of per-bin histograms and N2 is a 2-D
// dominance count.  One orbit pass serves every sampled n.
EssentialValueReport essval_fastpath(const RotationVector& alpha, double v_lo, double v_hi,
                                     const std::vector<long>& n_list, int G) {
    EssentialValueReport rep;
    rep.grid = G;
    std::vector<long> sched(n_list);
    std::sort(sched.begin(), sched.end());

    OrbitDD base(alpha, {0.0, 0.0});
    std::vector<int> cu(G, 0), cv(G, 0);
    std::vector<double> suv_bin(G, 0.0), svu_bin(G, 0.0);
    std::vector<int32_t> joint(size_t(G) * G, 0);
    DDSum Su, Sv, Suv;
    long n = 0;
    for (long target : sched) {
        for (; n < target; ++n) {
            double u = base.u1.value(), v = base.u2.value();
            int bu = std::min(G - 1, int(u * G));
            int bv = std::min(G - 1, int(v * G));
            ++cu[bu];
            ++cv[bv];
            suv_bin[bu] += v;
            svu_bin[bv] += u;
            ++joint[size_t(bu) * G + bv];
            Su.add(base.u1);
            Sv.add(base.u2);
            Suv.add(dd_mul(base.u1, base.u2));
            base.advance();
        }
        std::vector<double> A(G + 1, 0), VA(G + 1, 0), B(G + 1, 0), UB(G + 1, 0);
        for (int b = G - 1; b >= 0; --b) {
            A[b] = A[b + 1] + cu[b];
            VA[b] = VA[b + 1] + suv_bin[b];
            B[b] = B[b + 1] + cv[b];
            UB[b] = UB[b + 1] + svu_bin[b];
        }
        std::vector<int32_t> suf(size_t(G + 1) * (G + 1), 0);
        for (int b1 = G - 1; b1 >= 0; --b1) {
            int32_t run = 0;
            for (int b2 = G - 1; b2 >= 0; --b2) {
                run += joint[size_t(b1) * G + b2];
                suf[size_t(b1) * (G + 1) + b2] = run + suf[size_t(b1 + 1) * (G + 1) + b2];
            }
        }
        double su = Su.value(), sv = Sv.value(), suvv = Suv.value();
        EssentialValueRow row;
        row.n = target;
        for (int i = 0; i < G; ++i) {
            double x = double(i) / G;
            double ax = A[G - i], vax = VA[G - i];
            const int32_t* suf_row = &suf[size_t(G - i) * (G + 1)];
            double base_i = x * sv + suvv - vax - 0.25 * double(target);
            for (int j = 0; j < G; ++j) {
                double y = double(j) / G;
                double phi = double(target) * x * y + base_i + y * su - x * B[G - j] -
                             UB[G - j] - y * ax + suf_row[G - j];
                double m = std::abs(phi);
                if (m >= v_lo && m <= v_hi)
                    ++row.hits;
            }
        }
        row.fraction = double(row.hits) / (double(G) * G);
        if (row.hits > 0)
            ++rep.positive_rows;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace

EssentialValueReport essential_value_probe(const RotationVector& alpha, const PlanarMap& map,
                                           const std::vector<std::array<double, 4>>& B_boxes,
                                           double v_lo, double v_hi,
                                           const std::vector<long>& n_list, int grid) {
    if (n_list.empty())
        throw ConfigError("essential_value_probe: empty n list");
    if (v_hi < v_lo)
        throw ConfigError("essential_value_probe: empty value window");
    if (map.is_frac_product() && B_boxes.empty())
        return essval_fastpath(alpha, v_lo, v_hi, n_list, grid);

    long n_max = *std::max_element(n_list.begin(), n_list.end());
    double cost = double(grid) * grid * double(n_max);
    if (cost > 2e9)
        throw ConfigError("essential_value_probe: grid^2 * n too large for the generic path");
    EssentialValueReport rep;
    rep.grid = grid;
    std::vector<long> sched(n_list);
    std::sort(sched.begin(), sched.end());
    const int G = grid;
    std::vector<double> phi(size_t(G) * G, 0.0);
    std::vector<uint8_t> inB(size_t(G) * G, 0);
    for (int i = 0; i < G; ++i)
        for (int j = 0; j < G; ++j)
            inB[size_t(i) * G + j] = in_boxes(B_boxes, double(i) / G, double(j) / G) ? 1 : 0;

    OrbitDD base(alpha, {0.0, 0.0});
    long n = 0;
    for (long target : sched) {
        for (; n < target; ++n) {
            double U = base.u1.value(), V = base.u2.value();
            for (int i = 0; i < G; ++i) {
                double x = frac(double(i) / G + U);
                for (int j = 0; j < G; ++j) {
                    double y = frac(double(j) / G + V);
                    phi[size_t(i) * G + j] += map.evaluate({x, y}, 0.0).value[0];
                }
            }
            base.advance();
        }
        double U = base.u1.value(), V = base.u2.value();
        EssentialValueRow row;
        row.n = target;
        long in_count = 0;
        for (int i = 0; i < G; ++i) {
            for (int j = 0; j < G; ++j) {
                if (!inB[size_t(i) * G + j])
                    continue;
                double x = frac(double(i) / G + U);
                double y = frac(double(j) / G + V);
                if (!in_boxes(B_boxes, x, y))
                    continue;
                ++in_count;
                double m = std::abs(phi[size_t(i) * G + j]);
                if (m >= v_lo && m <= v_hi)
                    ++row.hits;
            }
        }
        row.fraction = in_count ? double(row.hits) / (double(G) * G) : 0.0;
        if (row.hits > 0)
            ++rep.positive_rows;
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<std::array<int, 3>> default_weyl_panel(int) {
    std::vector<std::array<int, 3>> freqs;
    for (int h1 = -2; h1 <= 2; ++h1)
        for (int h2 = -2; h2 <= 2; ++h2)
            for (int k = -3; k <= 3; ++k)
                if (h1 != 0 || h2 != 0 || k != 0)
                    freqs.push_back({h1, h2, k});
    return freqs;
}

WeylReport weyl_probe(const RotationVector& alpha, const BigFixed& a,
                      const std::vector<std::array<int, 3>>& freqs, long N, const Pt& x0,
                      double y0) {
    if (N < 4)
        throw ConfigError("weyl_probe: N >= 4");
    WeylReport rep;
    rep.N = N;
    size_t F = freqs.size();
    std::vector<std::complex<double>> rot(F), step(F), fiber(F), sum(F, {0.0, 0.0});
    std::vector<std::complex<double>> at_quarter(F), at_half(F);
    OrbitDD base(alpha, x0);
    long hits = 0;
    for (size_t f = 0; f < F; ++f) {
        int h1 = freqs[f][0], h2 = freqs[f][1], k = freqs[f][2];
        BigFixed th = alpha.fixed(0).mul_long(h1) + alpha.fixed(1).mul_long(h2);
        double thd = th.frac().to_double();
        step[f] = std::polar(1.0, 2 * M_PI * thd);
        double ka = a.mul_long(k).frac().to_double();
        fiber[f] = std::polar(1.0, 2 * M_PI * ka);
        double ph0 = h1 * x0[0] + h2 * x0[1] + k * y0;
        rot[f] = std::polar(1.0, 2 * M_PI * frac(ph0));
    }
    const long resync = 1 << 16;
    for (long n = 0; n < N; ++n) {
        for (size_t f = 0; f < F; ++f)
            sum[f] += rot[f];
        Pt p = base.pt();
        bool in0 = p[0] < p[1];
        if (in0)
            ++hits;
        for (size_t f = 0; f < F; ++f) {
            rot[f] *= step[f];
            if (in0)
                rot[f] *= fiber[f];
        }
        base.advance();
        if ((n + 1) % resync == 0) {
            // re-anchor the rotors from the exact phases
            Pt q = base.pt();
            for (size_t f = 0; f < F; ++f) {
                int h1 = freqs[f][0], h2 = freqs[f][1], k = freqs[f][2];
                double yk = a.mul_long(long(k) * hits).frac().to_double();
                double ph = h1 * q[0] + h2 * q[1] + yk + k * y0;
                rot[f] = std::polar(1.0, 2 * M_PI * frac(ph));
            }
        }
        if (n + 1 == N / 4)
            at_quarter = sum;
        if (n + 1 == N / 2)
            at_half = sum;
    }
    for (size_t f = 0; f < F; ++f) {
        WeylRow row;
        row.h = {freqs[f][0], freqs[f][1]};
        row.k = freqs[f][2];
        row.avg_quarter = std::abs(at_quarter[f]) / double(N / 4);
        row.avg_half = std::abs(at_half[f]) / double(N / 2);
        row.avg_full = std::abs(sum[f]) / double(N);
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<WeylEnsembleRow> weyl_panel_ensemble(const RotationVector& alpha, const BigFixed& a,
                                                 const std::vector<std::array<int, 3>>& freqs,
                                                 long N, int M, unsigned long seed) {
    std::vector<WeylEnsembleRow> rows(freqs.size());
    for (size_t f = 0; f < freqs.size(); ++f) {
        rows[f].h = {freqs[f][0], freqs[f][1]};
        rows[f].k = freqs[f][2];
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int m = 0; m < M; ++m) {
        Pt x0{unif(rng), unif(rng)};
        double y0 = unif(rng);
        auto rep = weyl_probe(alpha, a, freqs, N, x0, y0);
        for (size_t f = 0; f < freqs.size(); ++f) {
            rows[f].mean_quarter += rep.rows[f].avg_quarter / M;
            rows[f].mean_full += rep.rows[f].avg_full / M;
        }
    }
    return rows;
}

ConjugationReport conjugation_check(const RotationVector& alpha, const BigFixed& a, int M,
                                    unsigned long seed) {
    ConjugationReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double a1 = alpha.dbl(0), a2 = alpha.dbl(1);
    double beta2 = frac(a2 - a1);
    double av = a.frac().to_double();
    auto tor_dist = [](double u, double v) {
        double d = std::abs(frac(u) - frac(v));
        return std::min(d, 1.0 - d);
    };
    while (rep.samples < M) {
        double x1 = unif(rng), x2 = unif(rng), y = unif(rng);
        if (std::abs(x1 + x2 - 1.0) < 1e-9 || x2 < 1e-9 || x1 < 1e-9)
            continue;
        ++rep.samples;
        // S o T o S^{-1} with S(x1,x2,y) = (x1, x2-x1, y):
        // lift to (x1, x1+x2), apply the Delta_0 extension, shear back
        double w2 = frac(x1 + x2);
        double lhs1 = frac(x1 + a1);
        double lhs2 = frac(frac(w2 + a2) - lhs1);
        double lhsy = frac(y + (x1 < w2 ? av : 0.0));
        // sheared extension: beta = (a1, a2 - a1), fiber over Delta_1 = {x1+x2 <= 1}
        double rhs1 = frac(x1 + a1);
        double rhs2 = frac(x2 + beta2);
        double rhsy = frac(y + (x1 + x2 <= 1.0 ? av : 0.0));
        double res = std::max({tor_dist(lhs1, rhs1), tor_dist(lhs2, rhs2), tor_dist(lhsy, rhsy)});
        rep.max_residual = std::max(rep.max_residual, res);
    }
    return rep;
}

InducedCocycle induced_cocycle(const RotationVector& alpha, const PlanarMap& map,
                               const std::array<double, 4>& B_box, const Pt& x0, int k_returns,
                               long N_cap) {
    std::vector<std::array<double, 4>> boxes{B_box};
    if (!in_boxes(boxes, frac(x0[0]), frac(x0[1])))
        throw ConfigError("induced_cocycle: x0 must lie in B");
    InducedCocycle out;
    OrbitDD base(alpha, x0);
    DDSum acc[2];
    long n = 0;
    while (static_cast<int>(out.return_times.size()) < k_returns) {
        if (n >= N_cap)
            throw ReturnTimeout("no return after " + std::to_string(N_cap) + " steps");
        MapEval e = map.evaluate(base.pt(), 0.0);
        for (int c = 0; c < map.dim(); ++c)
            acc[c].add(e.value[c]);
        base.advance();
        ++n;
        Pt p = base.pt();
        if (in_boxes(boxes, p[0], p[1])) {
            out.return_times.push_back(n);
            out.induced_sums.push_back(acc[0].value());
        }
    }
    out.mean_return = out.return_times.empty()
                          ? 0.0
                          : double(out.return_times.back()) / double(out.return_times.size());
    // identity Phi_n^B(x) = Phi_{R_n}(x): recompute a sample of returns freshly
    double worst = 0;
    size_t stride = std::max<size_t>(1, out.return_times.size() / 16);
    for (size_t i = 0; i < out.return_times.size(); i += stride) {
        auto fresh = ergodic_sum(map, alpha, x0, out.return_times[i]);
        worst = std::max(worst, std::abs(fresh.value[0] - out.induced_sums[i]));
    }
    out.identity_residual = worst;
    return out;
}

} // namespace tlab
