#include "tlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "tlab/errors.hpp"

namespace tlab {

namespace {

inline int geom_bits() { return default_frac_bits() + 64; }

struct EPt {
    BigFixed x, y;
};

struct Offset {
    BigFixed val;
    int gen;
};

std::vector<Offset> family_offsets(const BigFixed& theta, int ell, const char* fam) {
    std::vector<Offset> out;
    BigFixed acc = BigFixed::from_long(0, theta.bits());
    for (int k = 0; k < ell; ++k) {
        out.push_back({acc.frac(), k});
        acc = acc - theta;
    }
    std::sort(out.begin(), out.end(),
              [](const Offset& a, const Offset& b) { return a.val < b.val; });
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i].val == out[i - 1].val)
            throw DegeneracyError(std::string("coincident ") + fam + " offsets, generators " +
                                  std::to_string(out[i - 1].gen) + " and " +
                                  std::to_string(out[i].gen));
    return out;
}

// Sutherland-Hodgman against the half plane keep_sign * ((x - y) - c) <= 0.
// Edges are axis-parallel or slope-1, so every intersection point is an
// exact linear combination; slope-1 edges are parallel to the cut and never
// produce crossings.
std::vector<EPt> clip_halfplane(const std::vector<EPt>& poly, const BigFixed& c, int keep_sign) {
    std::vector<EPt> out;
    size_t n = poly.size();
    auto side = [&](const EPt& p) { return ((p.x - p.y) - c).sign() * keep_sign; };
    for (size_t i = 0; i < n; ++i) {
        const EPt& p = poly[i];
        const EPt& q = poly[(i + 1) % n];
        int sp = side(p), sq = side(q);
        if (sp <= 0)
            out.push_back(p);
        if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)) {
            if (p.x == q.x)
                out.push_back({p.x, p.x - c}); // vertical edge
            else if (p.y == q.y)
                out.push_back({p.y + c, p.y}); // horizontal edge
            else
                throw DegeneracyError("cut crossing a parallel edge");
        }
    }
    std::vector<EPt> pruned;
    for (size_t i = 0; i < out.size(); ++i) {
        const EPt& a = out[i];
        const EPt& b = out[(i + 1) % out.size()];
        if (!(a.x == b.x && a.y == b.y))
            pruned.push_back(a);
    }
    return pruned;
}

struct EdgePiece {
    BigFixed t0, t1;
    int cell;
    int side; // -1 or +1
};

struct LineKey {
    char fam;
    int gen;
    bool operator<(const LineKey& o) const { return fam != o.fam ? fam < o.fam : gen < o.gen; }
};

int find_offset(const std::vector<Offset>& offs, const BigFixed& val) {
    BigFixed f = val.frac();
    auto it = std::lower_bound(offs.begin(), offs.end(), f,
                               [](const Offset& o, const BigFixed& v) { return o.val < v; });
    if (it == offs.end() || !(it->val == f))
        throw DegeneracyError("edge does not lie on a generating line");
    return static_cast<int>(it - offs.begin());
}

} // namespace

std::vector<int> TorusPartition::neighbors(int cell) const {
    std::set<int> out;
    for (const auto& adj : adjacency) {
        if (adj.a == cell)
            out.insert(adj.b);
        if (adj.b == cell)
            out.insert(adj.a);
    }
    return std::vector<int>(out.begin(), out.end());
}

std::vector<uint8_t> cell_coding(const RotationVector& alpha, const PartitionCell& cell,
                                 int ell) {
    // three interior samples must agree letter by letter
    Pt c = cell.rep;
    Pt far = cell.poly[0];
    double best = 0;
    for (const Pt& v : cell.poly) {
        double d = std::hypot(v[0] - c[0], v[1] - c[1]);
        if (d > best) {
            best = d;
            far = v;
        }
    }
    Pt s2{(c[0] + far[0]) / 2, (c[1] + far[1]) / 2};
    Pt s3{(3 * c[0] + far[0]) / 4, (3 * c[1] + far[1]) / 4};
    std::array<Pt, 3> samples{c, s2, s3};

    std::vector<uint8_t> coding(ell);
    double a1 = alpha.dbl(0), a2 = alpha.dbl(1);
    for (int i = 0; i < ell; ++i) {
        uint8_t letters[3];
        for (int s = 0; s < 3; ++s) {
            double fx = samples[s][0] + i * a1;
            fx -= std::floor(fx);
            double fy = samples[s][1] + i * a2;
            fy -= std::floor(fy);
            letters[s] = fx < fy ? 1 : 0;
        }
        if (letters[0] != letters[1] || letters[1] != letters[2])
            throw CodingAmbiguity("cell " + std::to_string(cell.id) + " letter " +
                                  std::to_string(i));
        coding[i] = letters[0];
    }
    return coding;
}

TorusPartition build_partition(const RotationVector& alpha, int ell, bool with_diagonals,
                               bool with_codings) {
    if (ell < 1)
        throw ConfigError("build_partition: ell >= 1 required");
    if (alpha.rho() != 2)
        throw ConfigError("build_partition: T^2 rotation required");
    if (!alpha.totally_irrational())
        throw DegeneracyError("rotation vector failed the total-irrationality diagnostic");

    TorusPartition part;
    part.ell = ell;
    part.with_diagonals = with_diagonals;

    BigFixed a1 = alpha.fixed(0).rescaled(geom_bits());
    BigFixed a2 = alpha.fixed(1).rescaled(geom_bits());
    auto v_offs = family_offsets(a1, ell, "V");
    auto h_offs = family_offsets(a2, ell, "H");
    std::vector<Offset> d_offs;
    if (with_diagonals)
        d_offs = family_offsets(a1 - a2, ell, "D");

    for (auto& o : v_offs) {
        part.v_lines.push_back(o.val.to_double());
        part.v_gen.push_back(o.gen);
    }
    for (auto& o : h_offs) {
        part.h_lines.push_back(o.val.to_double());
        part.h_gen.push_back(o.gen);
    }
    for (auto& o : d_offs) {
        part.d_lines.push_back(o.val.to_double());
        part.d_gen.push_back(o.gen);
    }

    const BigFixed one = BigFixed::from_long(1, geom_bits());
    std::map<LineKey, std::vector<EdgePiece>> pieces;
    mpz_class twice_area_total(0);
    int twice_area_bits = 2 * geom_bits();

    for (int i = 0; i < ell; ++i) {
        BigFixed X0 = v_offs[i].val;
        BigFixed X1 = (i + 1 < ell) ? v_offs[i + 1].val : v_offs[0].val + one;
        for (int j = 0; j < ell; ++j) {
            BigFixed Y0 = h_offs[j].val;
            BigFixed Y1 = (j + 1 < ell) ? h_offs[j + 1].val : h_offs[0].val + one;

            // diagonal cuts crossing the open rectangle: values c = d + t with
            // X0 - Y1 < c < X1 - Y0; corner tangencies are excluded by the
            // strict comparisons, which are exact in fixed point
            BigFixed lo = X0 - Y1, hi = X1 - Y0;
            std::vector<std::pair<BigFixed, int>> cuts;
            for (const auto& d : d_offs) {
                mpz_class t0 = (lo - d.val).floor();
                for (mpz_class t = t0;; ++t) {
                    mpz_class shifted = t;
                    shifted <<= geom_bits();
                    BigFixed c = d.val + BigFixed(shifted, geom_bits());
                    if (!(c < hi))
                        break;
                    if (lo < c)
                        cuts.emplace_back(c, d.gen);
                }
            }
            std::sort(cuts.begin(), cuts.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (size_t t = 1; t < cuts.size(); ++t)
                if (cuts[t].first == cuts[t - 1].first)
                    throw DegeneracyError("coincident diagonal cuts in one rectangle");

            std::vector<EPt> region{{X0, Y0}, {X1, Y0}, {X1, Y1}, {X0, Y1}};
            std::vector<std::vector<EPt>> polys;
            for (const auto& cut : cuts) {
                polys.push_back(clip_halfplane(region, cut.first, +1)); // x - y <= c
                region = clip_halfplane(region, cut.first, -1);         // x - y >= c
            }
            polys.push_back(region);

            for (auto& poly : polys) {
                if (poly.size() < 3)
                    throw DegeneracyError("degenerate cell polygon");
                PartitionCell cell;
                cell.id = static_cast<int>(part.cells.size());
                cell.col = i;
                cell.row = j;

                // exact shoelace; the doubled area accumulates exactly
                mpz_class twice(0);
                for (size_t v = 0; v < poly.size(); ++v) {
                    const EPt& p = poly[v];
                    const EPt& q = poly[(v + 1) % poly.size()];
                    BigFixed cross = p.x.mul_exact(q.y) - q.x.mul_exact(p.y);
                    twice += cross.mantissa();
                }
                twice_area_total += twice;
                cell.area = BigFixed(twice, twice_area_bits).to_double() / 2.0;

                double cx = 0, cy = 0;
                for (const EPt& p : poly) {
                    cell.poly.push_back({p.x.to_double(), p.y.to_double()});
                    cx += cell.poly.back()[0];
                    cy += cell.poly.back()[1];
                }
                cell.rep = {cx / double(poly.size()), cy / double(poly.size())};
                for (size_t u = 0; u < cell.poly.size(); ++u)
                    for (size_t w = u + 1; w < cell.poly.size(); ++w)
                        cell.diameter =
                            std::max(cell.diameter, std::hypot(cell.poly[u][0] - cell.poly[w][0],
                                                               cell.poly[u][1] - cell.poly[w][1]));

                for (size_t v = 0; v < poly.size(); ++v) {
                    const EPt& p = poly[v];
                    const EPt& q = poly[(v + 1) % poly.size()];
                    CellEdge edge;
                    EdgePiece piece;
                    LineKey key{};
                    if (p.x == q.x) {
                        key = {'V', part.v_gen[find_offset(v_offs, p.x)]};
                        piece.t0 = p.y < q.y ? p.y : q.y;
                        piece.t1 = p.y < q.y ? q.y : p.y;
                        piece.side = cell.rep[0] > p.x.to_double() ? +1 : -1;
                    } else if (p.y == q.y) {
                        key = {'H', part.h_gen[find_offset(h_offs, p.y)]};
                        piece.t0 = p.x < q.x ? p.x : q.x;
                        piece.t1 = p.x < q.x ? q.x : p.x;
                        piece.side = cell.rep[1] > p.y.to_double() ? +1 : -1;
                    } else {
                        BigFixed c = p.x - p.y;
                        if (!((q.x - q.y) == c))
                            throw DegeneracyError("cell side not on a generating line");
                        key = {'D', part.d_gen[find_offset(d_offs, c)]};
                        piece.t0 = p.x < q.x ? p.x : q.x;
                        piece.t1 = p.x < q.x ? q.x : p.x;
                        piece.side = (cell.rep[0] - cell.rep[1]) > c.to_double() ? +1 : -1;
                    }
                    piece.cell = cell.id;
                    edge.line = {key.fam, key.gen};
                    edge.t0 = piece.t0.to_double();
                    edge.t1 = piece.t1.to_double();
                    cell.edges.push_back(edge);
                    pieces[key].push_back(piece);
                }
                part.cells.push_back(std::move(cell));
            }
        }
    }

    {
        mpz_class two(1);
        two <<= (twice_area_bits + 1);
        part.area_exact_one = (twice_area_total == two);
        part.area_sum = BigFixed(twice_area_total, twice_area_bits).to_double() / 2.0;
    }

    // adjacency by interval overlap along each line, plus exact Euler data
    std::set<std::pair<mpz_class, mpz_class>> vertex_set;
    long edge_atoms = 0;
    for (auto& [key, list] : pieces) {
        std::vector<EdgePiece*> plus, minus;
        for (auto& e : list)
            (e.side > 0 ? plus : minus).push_back(&e);
        auto by_t0 = [](const EdgePiece* a, const EdgePiece* b) { return a->t0 < b->t0; };
        std::sort(plus.begin(), plus.end(), by_t0);
        std::sort(minus.begin(), minus.end(), by_t0);
        for (auto* a : plus) {
            for (auto* b : minus) {
                if (!(b->t0 < a->t1) || !(a->t0 < b->t1))
                    continue;
                BigFixed o0 = a->t0 < b->t0 ? b->t0 : a->t0;
                BigFixed o1 = a->t1 < b->t1 ? a->t1 : b->t1;
                if (o0 < o1) {
                    AdjacencyEntry adj;
                    adj.a = a->cell;
                    adj.b = b->cell;
                    adj.line = {key.fam, key.gen};
                    adj.overlap = (o1 - o0).to_double();
                    part.adjacency.push_back(adj);
                }
            }
        }

        std::set<mpz_class> params;
        for (auto& e : list) {
            params.insert(e.t0.frac().mantissa());
            params.insert(e.t1.frac().mantissa());
        }
        edge_atoms += static_cast<long>(params.size());

        BigFixed offset_val = BigFixed::from_long(0, geom_bits());
        if (key.fam == 'V') {
            for (size_t idx = 0; idx < v_offs.size(); ++idx)
                if (part.v_gen[idx] == key.gen)
                    offset_val = v_offs[idx].val;
        } else if (key.fam == 'H') {
            for (size_t idx = 0; idx < h_offs.size(); ++idx)
                if (part.h_gen[idx] == key.gen)
                    offset_val = h_offs[idx].val;
        } else {
            for (size_t idx = 0; idx < d_offs.size(); ++idx)
                if (part.d_gen[idx] == key.gen)
                    offset_val = d_offs[idx].val;
        }
        for (const mpz_class& t : params) {
            BigFixed tp(t, geom_bits());
            BigFixed px, py;
            if (key.fam == 'V') {
                px = offset_val;
                py = tp;
            } else if (key.fam == 'H') {
                px = tp;
                py = offset_val;
            } else {
                px = tp;
                py = (tp - offset_val).frac();
            }
            vertex_set.insert({px.frac().mantissa(), py.frac().mantissa()});
        }
    }
    part.euler_V = static_cast<long>(vertex_set.size());
    part.euler_E = edge_atoms;
    part.euler_F = static_cast<long>(part.cells.size());

    part.min_cell_area = 1.0;
    for (auto& c : part.cells) {
        part.min_cell_area = std::min(part.min_cell_area, c.area);
        part.max_diameter = std::max(part.max_diameter, c.diameter);
    }

    if (with_codings)
        for (auto& c : part.cells)
            c.coding = cell_coding(alpha, c, ell);

    return part;
}

EqfunctReport check_eqfunct_hypotheses(const RotationVector& alpha,
                                       const std::vector<int>& ell_schedule) {
    EqfunctReport rep;
    rep.c2_hat_global = 1e300;
    std::vector<TorusPartition> parts;
    for (int ell : ell_schedule)
        parts.push_back(build_partition(alpha, ell, true, true));

    // first pass: the fitted constant of hypothesis 3a
    std::vector<std::vector<int>> families;
    for (size_t k = 0; k < parts.size(); ++k) {
        const auto& part = parts[k];
        int ell = part.ell;
        double threshold = 1.0 / (10.0 * ell);
        std::vector<int> C;
        for (const auto& cell : part.cells) {
            double best_v = 0;
            for (const auto& e : cell.edges)
                if (e.line.fam == 'V')
                    best_v = std::max(best_v, e.t1 - e.t0);
            if (best_v >= threshold)
                C.push_back(cell.id);
        }
        families.push_back(C);
        for (int id : C)
            rep.c2_hat_global =
                std::min(rep.c2_hat_global, part.cells[id].area * double(ell) * ell);
    }

    rep.all_pass = true;
    double prev_diam = 1e300;
    for (size_t k = 0; k < parts.size(); ++k) {
        const auto& part = parts[k];
        EqfunctReport::PerLevel lv;
        lv.ell = part.ell;
        lv.cards_P = static_cast<long>(part.cells.size());
        lv.max_diameter = part.max_diameter;
        lv.check1_diameter = part.max_diameter <= prev_diam + 1e-12;
        prev_diam = part.max_diameter;

        std::vector<std::set<int>> nb(part.cells.size());
        for (const auto& adj : part.adjacency) {
            nb[adj.a].insert(adj.b);
            nb[adj.b].insert(adj.a);
        }
        for (const auto& s : nb)
            lv.max_neighbors = std::max(lv.max_neighbors, static_cast<int>(s.size()));
        lv.check2_neighbors = lv.max_neighbors <= 36;

        const auto& C = families[k];
        lv.card_C = static_cast<long>(C.size());
        lv.min_area_C = 1e300;
        for (int id : C)
            lv.min_area_C = std::min(lv.min_area_C, part.cells[id].area);
        lv.c2_hat = lv.min_area_C * double(lv.ell) * lv.ell;
        lv.check3a_area = lv.min_area_C * double(lv.cards_P) >= rep.c2_hat_global / 3.0;
        lv.check3b_fraction = double(lv.card_C) >= double(lv.cards_P) / 6.0;

        // 3c: a vertical-edge neighbor whose coding differs in exactly one letter
        lv.check3c_coding = true;
        std::map<int, std::vector<const AdjacencyEntry*>> v_adj;
        for (const auto& adj : part.adjacency) {
            if (adj.line.fam == 'V') {
                v_adj[adj.a].push_back(&adj);
                v_adj[adj.b].push_back(&adj);
            }
        }
        for (int id : C) {
            bool found = false;
            for (const auto* adj : v_adj[id]) {
                int other = adj->a == id ? adj->b : adj->a;
                int hamming = 0;
                for (int i = 0; i < part.ell; ++i)
                    hamming += part.cells[id].coding[i] != part.cells[other].coding[i];
                if (hamming == 1) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                lv.check3c_coding = false;
                break;
            }
        }

        rep.all_pass = rep.all_pass && lv.check1_diameter && lv.check2_neighbors &&
                       lv.check3a_area && lv.check3b_fraction && lv.check3c_coding;
        rep.levels.push_back(lv);
    }
    return rep;
}

GapStats gap_stats(const BigFixed& alpha1, const std::vector<BigFixed>& betas, long n) {
    if (n < 1)
        throw ConfigError("gap_stats: n >= 1 required");
    if (betas.empty())
        throw ConfigError("gap_stats: need at least one beta");
    std::vector<BigFixed> pts;
    pts.reserve(betas.size() * n);
    for (const BigFixed& b : betas) {
        BigFixed acc = b;
        for (long k = 0; k < n; ++k) {
            pts.push_back(acc.frac());
            acc = acc - alpha1;
        }
    }
    std::sort(pts.begin(), pts.end());
    for (size_t i = 1; i < pts.size(); ++i)
        if ((pts[i] - pts[i - 1]).to_double() < 1e-15)
            throw DegeneracyError("duplicate points in gap_stats");
    GapStats g;
    g.n = n;
    double mn = 2.0, mx = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        BigFixed next =
            i + 1 < pts.size() ? pts[i + 1] : pts[0] + BigFixed::from_long(1, pts[0].bits());
        double gap = (next - pts[i]).to_double();
        mn = std::min(mn, gap);
        mx = std::max(mx, gap);
    }
    g.min_gap = mn;
    g.max_gap = mx;
    g.c_hat = double(n) * mn;
    g.c_prime_hat = double(n) * mx;
    return g;
}

std::vector<SchmidtRecord> schmidt_exponent_probe(const RotationVector& alpha, long n_max) {
    if (alpha.rho() != 2)
        throw ConfigError("schmidt probe: T^2 rotation required");
    if (n_max > 100000)
        throw ConfigError("schmidt probe: n_max capped at 1e5 (O(n^2) scan)");
    std::vector<long> sched;
    for (long n = 2; n <= n_max; n = std::max(n + 1, (n * 5) / 4))
        sched.push_back(n);
    if (sched.back() != n_max)
        sched.push_back(n_max);

    std::vector<double> u1(n_max + 1), u2(n_max + 1);
    {
        DD a1 = alpha.dd(0), a2 = alpha.dd(1);
        DD acc1(0.0), acc2(0.0);
        for (long k = 0; k <= n_max; ++k) {
            u1[k] = acc1.value();
            u2[k] = acc2.value();
            acc1 = dd_wrap1(dd_add(acc1, a1));
            acc2 = dd_wrap1(dd_add(acc2, a2));
        }
    }
    std::vector<SchmidtRecord> out;
    SchmidtRecord best;
    best.dist = 2.0;
    size_t next = 0;
    for (long m = 2; m <= n_max; ++m) {
        long a = m - 1; // new pairs with max(n1, n2) = m - 1
        for (long b = 1; b <= a; ++b) {
            double d1 = dist_to_Z(u1[a] - u2[b]);
            if (d1 < best.dist && d1 > 0)
                best = {m, a, b, d1, 0};
            double d2 = dist_to_Z(u1[b] - u2[a]);
            if (d2 < best.dist && d2 > 0)
                best = {m, b, a, d2, 0};
        }
        while (next < sched.size() && sched[next] == m) {
            SchmidtRecord rec = best;
            rec.n = m;
            rec.exponent = rec.dist < 1.0 ? -std::log(rec.dist) / std::log(double(m)) : 0.0;
            out.push_back(rec);
            ++next;
        }
    }
    return out;
}

} // namespace tlab
