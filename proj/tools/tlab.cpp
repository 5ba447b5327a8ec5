// tlab: command-line front end for the torus-lab library.
//
// One command per process; every artifact is written atomically and carries
// the run configuration (op, inputs, precision bits, seed) in its header.
// Exit codes: 0 ok, 2 config error, 3 degeneracy, 4 precision, 5 criterion
// failure (reproduce only).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "tlab/acceptance.hpp"
#include "tlab/cf.hpp"
#include "tlab/ergodic.hpp"
#include "tlab/errors.hpp"
#include "tlab/fourier.hpp"
#include "tlab/io.hpp"
#include "tlab/partition.hpp"
#include "tlab/probes.hpp"
#include "tlab/svg.hpp"

#include <chrono>

using namespace tlab;

namespace {

RunConfig g_cfg;

void emit_result(const Json& outputs, const std::string& out_path) {
    Json doc = g_cfg.header();
    doc["outputs"] = outputs;
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        fputs(text.c_str(), stdout);
    } else {
        write_file_atomic(g_cfg.resolve(out_path), text);
    }
}

// round to 15 significant digits (the CSV/JSON coordinate convention)
double sig15(double v) { return std::atof(fmt_g15(v).c_str()); }

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
        if (!tok.empty())
            out.push_back(std::stol(tok));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------- commands

int cmd_cf(const std::string& value, int depth, const std::string& out) {
    g_cfg.params = {{"value", value}, {"depth", depth}};
    auto x = parse_real(value).mod1();
    auto cf = expand_cf(x, depth);
    Json o;
    o["quotients"] = Json::array();
    for (auto& a : cf.quotients)
        o["quotients"].push_back(a.get_str());
    o["certified_depth"] = cf.certified_depth;
    o["precision_exhausted"] = cf.precision_exhausted;
    if (cf.period_start >= 0) {
        o["period_start"] = cf.period_start;
        o["period_len"] = cf.period_len;
    }
    int cdepth = int(cf.quotients.size());
    if (cdepth >= 1) {
        auto table = convergents(cf, cdepth);
        o["q"] = Json::array();
        o["p"] = Json::array();
        for (auto& q : table.q)
            o["q"].push_back(q.get_str());
        for (auto& p : table.p)
            o["p"].push_back(p.get_str());
        o["chain"] = table.chain;
    }
    emit_result(o, out);
    return EXIT_OK;
}

int cmd_ostrowski(const std::string& value, long n, int depth, const std::string& out) {
    g_cfg.params = {{"alpha", value}, {"n", n}, {"depth", depth}};
    auto cf = expand_cf(parse_real(value).mod1(), depth);
    auto table = convergents(cf, depth);
    auto d = ostrowski(n, table);
    Json o;
    o["digits"] = Json::array();
    for (auto& b : d.digits)
        o["digits"].push_back(b.get_str());
    o["reconstructed"] = ostrowski_reconstruct(d, table).get_str();
    emit_result(o, out);
    return EXIT_OK;
}

int cmd_badmargin(const std::string& theta, const std::string& x, long qmax,
                  const std::string& out) {
    g_cfg.params = {{"theta", theta}, {"x", x}, {"q_max", qmax}};
    auto r = bad_margin(parse_real(theta).mod1().approx(), parse_real(x).approx(), qmax);
    Json o;
    o["margin"] = r.margin;
    o["argmin_q"] = r.argmin_q;
    emit_result(o, out);
    return EXIT_OK;
}

int cmd_sums(const std::string& map_name, const std::string& alpha_s, const std::string& x0_s,
             const std::string& schedule, int sup_grid, const std::string& csv,
             const std::string& out) {
    g_cfg.params = {{"map", map_name},
                    {"alpha", alpha_s},
                    {"x0", x0_s},
                    {"schedule", schedule},
                    {"sup_grid", sup_grid}};
    auto map = make_map(map_name);
    auto alpha = RotationVector::parse(alpha_s);
    Pt x0{0, 0};
    {
        size_t comma = x0_s.find(',');
        x0[0] = parse_real(comma == std::string::npos ? x0_s : x0_s.substr(0, comma)).to_double();
        if (comma != std::string::npos)
            x0[1] = parse_real(x0_s.substr(comma + 1)).to_double();
    }
    auto sched = parse_long_list(schedule);
    std::vector<std::vector<std::string>> rows;
    Json series = Json::array();
    std::vector<double> sups;
    if (sup_grid > 0)
        sups = sup_over_grid_schedule(*map, alpha, sched, sup_grid);
    for (size_t i = 0; i < sched.size(); ++i) {
        auto r = ergodic_sum(*map, alpha, x0, sched[i]);
        Json row;
        row["n"] = sched[i];
        row["value"] = r.value[0];
        if (map->dim() == 2)
            row["value2"] = r.value[1];
        row["boundary_hits"] = r.boundary_hits;
        if (sup_grid > 0)
            row["sup"] = sups[i];
        series.push_back(row);
        rows.push_back({std::to_string(sched[i]), fmt_g15(r.value[0]),
                        map->dim() == 2 ? fmt_g15(r.value[1]) : std::string("0"),
                        sup_grid > 0 ? fmt_g15(sups[i]) : std::string(""),
                        std::to_string(r.boundary_hits)});
    }
    if (!csv.empty())
        write_file_atomic(g_cfg.resolve(csv),
                          make_csv(g_cfg, {"n", "value1", "value2", "sup", "boundary_hits"},
                                   rows));
    emit_result({{"series", series}}, out);
    return EXIT_OK;
}

int cmd_fourier(const std::string& tri_s, int hmax, const std::string& csv,
                const std::string& alpha_s, double t_exp, const std::string& nsched,
                const std::string& growth_csv, const std::string& out) {
    g_cfg.params = {{"triangle", tri_s}, {"h_max", hmax}};
    TriangleSpec tri;
    {
        auto vals = std::vector<double>();
        size_t pos = 0;
        std::string s = tri_s;
        while (pos < s.size()) {
            size_t comma = s.find(',', pos);
            std::string tok =
                comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
            vals.push_back(parse_real(tok).to_double());
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        if (vals.size() != 3)
            throw ConfigError("--triangle expects a,b,c");
        tri = {vals[0], vals[1], vals[2]};
    }
    auto spec = triangle_spectrum(tri, hmax);
    double worst = 0;
    for (int s = -4; s <= 4; ++s)
        for (int t = -4; t <= 4; ++t)
            worst = std::max(worst, std::abs(triangle_coeff(tri, s, t) -
                                             triangle_coeff_quadrature(tri, s, t)));
    if (!csv.empty()) {
        std::vector<std::vector<std::string>> rows;
        spec.for_each_nonzero_index([&](int h1, int h2) {
            auto c = spec.at(h1, h2);
            rows.push_back({std::to_string(h1), std::to_string(h2), fmt_g15(c.real()),
                            fmt_g15(c.imag())});
        });
        write_file_atomic(g_cfg.resolve(csv), make_csv(g_cfg, {"h1", "h2", "re", "im"}, rows));
    }
    auto check = decay_bound_check(spec, hmax);
    Json o{{"area", tri.area()},
           {"quadrature_check_max_err", worst},
           {"fitted_C", check.fitted_C}};
    if (!growth_csv.empty()) {
        if (alpha_s.empty())
            throw ConfigError("--growth-csv needs --alpha");
        auto rows = l2_sum_growth(spec, RotationVector::parse(alpha_s), parse_long_list(nsched),
                                  t_exp);
        std::vector<std::vector<std::string>> lines;
        bool all_ok = true;
        for (auto& row : rows) {
            lines.push_back({std::to_string(row.N), fmt_g15(row.exact), fmt_g15(row.min_bound),
                             fmt_g15(row.series_bound)});
            all_ok = all_ok && row.chain_ok;
        }
        write_file_atomic(g_cfg.resolve(growth_csv),
                          make_csv(g_cfg, {"N", "exact", "min_bound", "series_bound"}, lines));
        o["growth_chain_ok"] = all_ok;
    }
    emit_result(o, out);
    return EXIT_OK;
}

int cmd_coboundary(const std::string& alpha_s, int hmax, int grid, const std::string& csv,
                   const std::string& out) {
    g_cfg.params = {{"alpha", alpha_s}, {"h_max", hmax}, {"grid", grid},
                    {"phi", "x(1-x)-1/6"}};
    RotationVector alpha(parse_real(alpha_s));
    auto phi = parabola_spectrum(hmax);
    auto res =
        coboundary_solve(phi, alpha, [](double x) { return x * (1 - x) - 1.0 / 6.0; }, grid);
    if (!csv.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (int n = -hmax; n <= hmax; ++n) {
            if (n == 0)
                continue;
            auto c = res.psi.at(n);
            rows.push_back({std::to_string(n), "0", fmt_g15(c.real()), fmt_g15(c.imag())});
        }
        write_file_atomic(g_cfg.resolve(csv), make_csv(g_cfg, {"h1", "h2", "re", "im"}, rows));
    }
    emit_result({{"residual", res.residual},
                 {"truncation_estimate", res.truncation_est},
                 {"min_norm_n_alpha", res.min_norm_na}},
                out);
    return EXIT_OK;
}

int cmd_partition(const std::string& alpha_s, int ell, bool no_diagonals, bool codings,
                  const std::string& svg, const std::string& json_path, const std::string& out) {
    g_cfg.params = {{"alpha", alpha_s},
                    {"ell", ell},
                    {"diagonals", !no_diagonals},
                    {"codings", codings}};
    auto alpha = RotationVector::parse(alpha_s);
    auto part = build_partition(alpha, ell, !no_diagonals, codings || !svg.empty());
    Json o;
    o["cells"] = part.cells.size();
    o["expected"] = no_diagonals ? ell * ell : 3 * ell * ell - ell;
    o["area_sum_exact"] = part.area_exact_one;
    o["euler"] = {{"V", part.euler_V}, {"E", part.euler_E}, {"F", part.euler_F}};
    o["max_diameter"] = part.max_diameter;
    o["min_cell_area"] = part.min_cell_area;
    if (!svg.empty())
        write_file_atomic(g_cfg.resolve(svg), partition_to_svg(part));
    if (!json_path.empty()) {
        Json doc = g_cfg.header();
        Json cells = Json::array();
        for (const auto& c : part.cells) {
            Json jc;
            jc["id"] = c.id;
            Json poly = Json::array();
            for (auto& p : c.poly)
                poly.push_back({sig15(p[0]), sig15(p[1])});
            jc["polygon"] = poly;
            jc["wrapped"] = false;
            for (auto& p : c.poly)
                if (p[0] >= 1.0 || p[1] >= 1.0)
                    jc["wrapped"] = true;
            jc["area"] = c.area;
            if (!c.coding.empty()) {
                std::string w;
                for (auto b : c.coding)
                    w += b ? '1' : '0';
                jc["coding"] = w;
            }
            cells.push_back(jc);
        }
        doc["cells"] = cells;
        Json adj = Json::array();
        for (const auto& a : part.adjacency)
            adj.push_back({{"a", a.a},
                           {"b", a.b},
                           {"line", std::string(1, a.line.fam) + std::to_string(a.line.gen)},
                           {"overlap", a.overlap}});
        doc["adjacency"] = adj;
        write_file_atomic(g_cfg.resolve(json_path), doc.dump(1) + "\n");
    }
    emit_result(o, out);
    return EXIT_OK;
}

int cmd_eqfunct(const std::string& alpha_s, const std::string& levels_s, const std::string& out) {
    g_cfg.params = {{"alpha", alpha_s}, {"levels", levels_s}};
    auto alpha = RotationVector::parse(alpha_s);
    std::vector<int> levels;
    if (levels_s.empty()) {
        auto cf = expand_cf(alpha.exact(1), 8);
        auto table = convergents(cf, 8);
        for (int k = 1; k <= 6; ++k)
            levels.push_back(int(table.q[k].get_si()));
    } else {
        for (long v : parse_long_list(levels_s))
            levels.push_back(int(v));
    }
    auto rep = check_eqfunct_hypotheses(alpha, levels);
    Json o;
    o["all_pass"] = rep.all_pass;
    o["c2_hat"] = rep.c2_hat_global;
    o["levels"] = Json::array();
    for (auto& lv : rep.levels) {
        o["levels"].push_back({{"ell", lv.ell},
                               {"card_P", lv.cards_P},
                               {"max_diameter", lv.max_diameter},
                               {"max_neighbors", lv.max_neighbors},
                               {"card_C", lv.card_C},
                               {"c2_hat", lv.c2_hat},
                               {"diameter_ok", lv.check1_diameter},
                               {"neighbors_ok", lv.check2_neighbors},
                               {"area_ok", lv.check3a_area},
                               {"fraction_ok", lv.check3b_fraction},
                               {"coding_ok", lv.check3c_coding}});
    }
    emit_result(o, out);
    return rep.all_pass ? EXIT_OK : EXIT_CRITERION_FAIL;
}

int cmd_gaps(const std::string& alpha1_s, const std::string& betas_s, long n,
             const std::string& out) {
    g_cfg.params = {{"alpha1", alpha1_s}, {"betas", betas_s}, {"n", n}};
    std::vector<BigFixed> betas;
    size_t pos = 0;
    while (pos < betas_s.size()) {
        size_t semi = betas_s.find(';', pos);
        std::string tok =
            semi == std::string::npos ? betas_s.substr(pos) : betas_s.substr(pos, semi - pos);
        if (!tok.empty())
            betas.push_back(parse_real(tok).mod1().approx());
        if (semi == std::string::npos)
            break;
        pos = semi + 1;
    }
    auto g = gap_stats(parse_real(alpha1_s).mod1().approx(), betas, n);
    emit_result({{"min_gap", g.min_gap},
                 {"max_gap", g.max_gap},
                 {"c_hat", g.c_hat},
                 {"c_prime_hat", g.c_prime_hat}},
                out);
    return EXIT_OK;
}

int cmd_schmidt(const std::string& alpha_s, long nmax, const std::string& csv,
                const std::string& out) {
    g_cfg.params = {{"alpha", alpha_s}, {"n_max", nmax}};
    auto recs = schmidt_exponent_probe(RotationVector::parse(alpha_s), nmax);
    const double golden_exp = (1.0 + std::sqrt(5.0)) / 2.0;
    Json o = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (auto& r : recs) {
        o.push_back({{"n", r.n},
                     {"n1", r.n1},
                     {"n2", r.n2},
                     {"dist", r.dist},
                     {"exponent", r.exponent},
                     {"ge_golden", r.exponent >= golden_exp}});
        rows.push_back({std::to_string(r.n), std::to_string(r.n1), std::to_string(r.n2),
                        fmt_g15(r.dist), fmt_g15(r.exponent)});
    }
    if (!csv.empty())
        write_file_atomic(g_cfg.resolve(csv),
                          make_csv(g_cfg, {"n", "n1", "n2", "dist", "exponent"}, rows));
    emit_result({{"records", o}}, out);
    return EXIT_OK;
}

int cmd_recur(const std::string& alpha_s, const std::string& map_name, long nmax, int points,
              const std::string& out) {
    g_cfg.params = {{"alpha", alpha_s}, {"map", map_name}, {"n_max", nmax}, {"points", points}};
    auto rep = recurrence_probe(RotationVector::parse(alpha_s), *make_map(map_name), nmax,
                                points, g_cfg.seed);
    Json o;
    o["flagged"] = rep.flagged;
    o["passage_quantiles"] = rep.passage_quantiles;
    double worst_min = 0;
    for (auto& p : rep.points)
        worst_min = std::max(worst_min, p.min_abs);
    o["worst_min_abs"] = worst_min;
    o["verdict"] = rep.flagged == 0 ? "recurrence-consistent" : "transience-suspected";
    emit_result(o, out);
    return EXIT_OK;
}

int cmd_essval(const std::string& alpha_s, const std::string& map_name, double vlo, double vhi,
               const std::string& nlist, int grid, const std::string& out) {
    g_cfg.params = {{"alpha", alpha_s}, {"map", map_name},   {"v_lo", vlo},
                    {"v_hi", vhi},      {"n_list", nlist},   {"grid", grid}};
    auto rep = essential_value_probe(RotationVector::parse(alpha_s), *make_map(map_name), {},
                                     vlo, vhi, parse_long_list(nlist), grid);
    Json o;
    o["positive_rows"] = rep.positive_rows;
    o["verdict"] = rep.positive_rows > 0 ? "positive-measure events observed"
                                         : "no events at the sampled n";
    o["rows"] = Json::array();
    for (auto& row : rep.rows)
        o["rows"].push_back({{"n", row.n}, {"hits", row.hits}, {"fraction", row.fraction}});
    emit_result(o, out);
    return EXIT_OK;
}

int cmd_weyl(const std::string& alpha_s, const std::string& a_s, long N, const std::string& x0_s,
             double y0, const std::string& csv, const std::string& out) {
    g_cfg.params = {{"alpha", alpha_s}, {"a", a_s}, {"N", N}, {"x0", x0_s}, {"y0", y0}};
    auto alpha = RotationVector::parse(alpha_s);
    BigFixed a = parse_real(a_s).mod1().approx();
    Pt x0{0.0, 0.0};
    if (!x0_s.empty()) {
        size_t comma = x0_s.find(',');
        x0[0] = std::stod(x0_s.substr(0, comma));
        x0[1] = std::stod(x0_s.substr(comma + 1));
    }
    auto rep = weyl_probe(alpha, a, default_weyl_panel(), N, x0, y0);
    std::vector<std::vector<std::string>> rows;
    Json o = Json::array();
    for (auto& row : rep.rows) {
        rows.push_back({std::to_string(row.h[0]), std::to_string(row.h[1]),
                        std::to_string(row.k), fmt_g15(row.avg_quarter), fmt_g15(row.avg_half),
                        fmt_g15(row.avg_full)});
        o.push_back({{"h1", row.h[0]},
                     {"h2", row.h[1]},
                     {"k", row.k},
                     {"avg_N4", row.avg_quarter},
                     {"avg_N2", row.avg_half},
                     {"avg_N", row.avg_full}});
    }
    if (!csv.empty())
        write_file_atomic(
            g_cfg.resolve(csv),
            make_csv(g_cfg, {"h1", "h2", "k", "avg_N4", "avg_N2", "avg_N"}, rows));
    int decayed = 0, fiber_rows = 0;
    for (auto& row : rep.rows) {
        if (row.k == 0)
            continue;
        ++fiber_rows;
        if (row.avg_full < row.avg_quarter)
            ++decayed;
    }
    std::string verdict = fmt_g15(double(decayed)) + "/" + fmt_g15(double(fiber_rows)) +
                          " fiber rows decayed from N/4 to N";
    emit_result({{"verdict", verdict}, {"rows", o}}, out);
    return EXIT_OK;
}

int cmd_conjugation(const std::string& alpha_s, const std::string& a_s, int samples,
                    const std::string& out) {
    g_cfg.params = {{"alpha", alpha_s}, {"a", a_s}, {"samples", samples}};
    auto rep = conjugation_check(RotationVector::parse(alpha_s), parse_real(a_s).mod1().approx(),
                                 samples, g_cfg.seed);
    emit_result({{"max_residual", rep.max_residual}, {"samples", rep.samples}}, out);
    return EXIT_OK;
}

int cmd_reproduce(const std::string& suite) {
    g_cfg.params = {{"suite", suite}};
    return run_suite_printed(suite) ? EXIT_OK : EXIT_CRITERION_FAIL;
}

int cmd_bench(const std::string& kernel, long size, const std::string& out) {
    g_cfg.params = {{"kernel", kernel}, {"size", size}};
    Json o;
    if (size == 0) {
        emit_result(o, out);
        return EXIT_OK;
    }
    auto t0 = std::chrono::steady_clock::now();
    if (kernel == "ergodic-sum") {
        auto r = ergodic_sum(*make_map("triangle0"),
                             RotationVector(parse_real("sqrt(2)-1"), parse_real("sqrt(3)-1")),
                             {0.1, 0.2}, size);
        o["value"] = r.value[0];
    } else if (kernel == "arrangement") {
        // size = target cell count; ell from 3 l^2 - l ~ size
        int ell = std::max(1, int(std::sqrt(double(size) / 3.0)));
        auto part = build_partition(
            RotationVector(parse_real("sqrt(2)-1"), parse_real("sqrt(3)-1")), ell, true, false);
        o["cells"] = part.cells.size();
        o["ell"] = ell;
    } else if (kernel == "weyl") {
        auto rep = weyl_probe(RotationVector(parse_real("sqrt(2)-1"), parse_real("sqrt(3)-1")),
                              parse_real("sqrt(5)-2").approx(), default_weyl_panel(), size,
                              {0.0, 0.0}, 0.0);
        o["rows"] = rep.rows.size();
    } else {
        throw ConfigError("unknown kernel '" + kernel +
                          "'; kernels: ergodic-sum, arrangement, weyl");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o["seconds"] = secs;
    o["ops_per_sec"] = secs > 0 ? double(size) / secs : 0.0;
    emit_result(o, out);
    return EXIT_OK;
}

} // namespace

// Merge a JSON config file into argv: keys become --key=value arguments
// inserted right after the subcommand, so explicit flags (parsed later by
// CLI11's last-wins policy) override the file.
std::vector<std::string> merge_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string cfg_path;
    for (size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            cfg_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
    }
    if (cfg_path.empty())
        return args;
    std::ifstream in(cfg_path);
    if (!in)
        throw ConfigError("cannot read config file " + cfg_path);
    Json doc = Json::parse(in);
    if (!doc.is_object())
        throw ConfigError("config file must hold a JSON object of flag values");
    size_t insert_at = args.size() >= 2 ? 2 : args.size();
    std::vector<std::string> extra;
    for (auto& [key, val] : doc.items()) {
        bool present = false;
        std::string flag = "--" + key;
        for (auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0)
                present = true;
        if (present)
            continue; // explicit flags win
        std::string v = val.is_string() ? val.get<std::string>() : val.dump();
        extra.push_back(flag + "=" + v);
    }
    args.insert(args.begin() + insert_at, extra.begin(), extra.end());
    return args;
}

int main(int argc, char** argv) {
    CLI::App app{"torus-lab: Diophantine toolkit, ergodic sums, torus partitions and "
                 "ergodicity probes"};
    app.require_subcommand(1);

    unsigned long seed = 20260801;
    int precision_bits = kDefaultFracBits;
    app.add_option("--seed", seed, "Monte-Carlo seed (recorded in outputs)");
    app.add_option("--precision-bits", precision_bits, "fixed-point fractional bits");

    std::string value, out, csv, svg, json_path, alpha_s, x0_s, map_name, schedule, tri_s;
    std::string theta_s, xs, betas_s, levels_s, a_s, suite, kernel, nlist;
    int depth = 20, ell = 5, grid = 1024, sup_grid = 0, points = 100, samples = 100000;
    long n = 1, qmax = 10000, nmax = 10000, Nlong = 100000, size = 0;
    double vlo = 0.001, vhi = 0.002, y0 = 0.0;
    int hmax = 256;
    bool no_diagonals = false, codings = false;

    auto* c_cf = app.add_subcommand("cf", "continued fraction expansion");
    c_cf->add_option("--value", value)->required();
    c_cf->add_option("--depth", depth);
    c_cf->add_option("--out", out);

    auto* c_ost = app.add_subcommand("ostrowski", "Ostrowski digits of n");
    c_ost->add_option("--alpha", alpha_s)->required();
    c_ost->add_option("--n", n)->required();
    c_ost->add_option("--depth", depth);
    c_ost->add_option("--out", out);

    auto* c_bad = app.add_subcommand("badmargin", "min q ||q theta - x||");
    c_bad->add_option("--theta", theta_s)->required();
    c_bad->add_option("--x", xs)->default_val("0");
    c_bad->add_option("--qmax", qmax);
    c_bad->add_option("--out", out);

    auto* c_sums = app.add_subcommand("sums", "Birkhoff sums along a schedule");
    c_sums->add_option("--map", map_name)->required();
    c_sums->add_option("--alpha", alpha_s)->required();
    c_sums->add_option("--x0", x0_s)->default_val("0");
    c_sums->add_option("--schedule", schedule)->required();
    c_sums->add_option("--sup-grid", sup_grid);
    c_sums->add_option("--csv", csv);
    c_sums->add_option("--out", out);

    std::string growth_csv, nsched = "16,64,256,1024,4096,16384";
    double t_exp = 1.5;
    auto* c_fou = app.add_subcommand("fourier", "triangle Fourier spectrum");
    c_fou->add_option("--triangle", tri_s)->required();
    c_fou->add_option("--hmax", hmax);
    c_fou->add_option("--csv", csv);
    c_fou->add_option("--alpha", alpha_s);
    c_fou->add_option("--t", t_exp);
    c_fou->add_option("--nsched", nsched);
    c_fou->add_option("--growth-csv", growth_csv);
    c_fou->add_option("--out", out);

    auto* c_cob = app.add_subcommand("coboundary", "solve x(1-x)-1/6 = psi oT - psi");
    c_cob->add_option("--alpha", alpha_s)->required();
    c_cob->add_option("--hmax", hmax)->default_val(1000);
    c_cob->add_option("--grid", grid)->default_val(10000);
    c_cob->add_option("--csv", csv);
    c_cob->add_option("--out", out);

    auto* c_part = app.add_subcommand("partition", "torus partition P_ell / R_ell");
    c_part->add_option("--alpha", alpha_s)->required();
    c_part->add_option("--ell", ell)->required();
    c_part->add_flag("--no-diagonals", no_diagonals);
    c_part->add_flag("--codings", codings);
    c_part->add_option("--svg", svg);
    c_part->add_option("--json", json_path);
    c_part->add_option("--out", out);

    auto* c_eq = app.add_subcommand("eqfunct", "coding-proposition hypothesis checks");
    c_eq->add_option("--alpha", alpha_s)->required();
    c_eq->add_option("--levels", levels_s);
    c_eq->add_option("--out", out);

    auto* c_gaps = app.add_subcommand("gaps", "three-distance gap statistics");
    c_gaps->add_option("--alpha1", theta_s)->required();
    c_gaps->add_option("--betas", betas_s)->default_val("0");
    c_gaps->add_option("--n", n)->required();
    c_gaps->add_option("--out", out);

    auto* c_sch = app.add_subcommand("schmidt", "||n1 a1 - n2 a2|| exponent probe");
    c_sch->add_option("--alpha", alpha_s)->required();
    c_sch->add_option("--nmax", nmax);
    c_sch->add_option("--csv", csv);
    c_sch->add_option("--out", out);

    auto* c_rec = app.add_subcommand("recur", "near-return statistics");
    c_rec->add_option("--alpha", alpha_s)->required();
    c_rec->add_option("--map", map_name)->required();
    c_rec->add_option("--nmax", nmax)->default_val(1000000);
    c_rec->add_option("--points", points);
    c_rec->add_option("--out", out);

    auto* c_ess = app.add_subcommand("essval", "essential-value event probe");
    c_ess->add_option("--alpha", alpha_s)->required();
    c_ess->add_option("--map", map_name)->default_val("xy_quarter");
    c_ess->add_option("--vlo", vlo);
    c_ess->add_option("--vhi", vhi);
    c_ess->add_option("--nlist", nlist)->required();
    c_ess->add_option("--grid", grid)->default_val(2048);
    c_ess->add_option("--out", out);

    auto* c_weyl = app.add_subcommand("weyl", "Weyl averages along the compact extension");
    c_weyl->add_option("--alpha", alpha_s)->required();
    c_weyl->add_option("--a", a_s)->required();
    c_weyl->add_option("--N", Nlong)->default_val(400000);
    c_weyl->add_option("--x0", x0_s)->default_val("0,0");
    c_weyl->add_option("--y0", y0);
    c_weyl->add_option("--csv", csv);
    c_weyl->add_option("--out", out);

    auto* c_conj = app.add_subcommand("conjugation", "shear conjugation identity check");
    c_conj->add_option("--alpha", alpha_s)->required();
    c_conj->add_option("--a", a_s)->required();
    c_conj->add_option("--samples", samples);
    c_conj->add_option("--out", out);

    auto* c_rep = app.add_subcommand("reproduce", "run an acceptance suite");
    c_rep->add_option("suite", suite, "suite name or 'all'")->required();

    auto* c_bench = app.add_subcommand("bench", "throughput kernels");
    c_bench->add_option("--kernel", kernel)->required();
    c_bench->add_option("--size", size)->default_val(1000000);
    c_bench->add_option("--out", out);

    try {
        auto args = merge_config(argc, argv);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        reversed.pop_back(); // drop the program name
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? EXIT_CONFIG : EXIT_OK;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    }

    try {
        set_default_frac_bits(precision_bits);
        g_cfg.seed = seed;
        g_cfg.precision_bits = precision_bits;
        if (const char* dir = std::getenv("OUTPUT_DIR"))
            g_cfg.output_dir = dir;

        if (c_cf->parsed()) {
            g_cfg.command = "cf";
            return cmd_cf(value, depth, out);
        }
        if (c_ost->parsed()) {
            g_cfg.command = "ostrowski";
            return cmd_ostrowski(alpha_s, n, depth, out);
        }
        if (c_bad->parsed()) {
            g_cfg.command = "badmargin";
            return cmd_badmargin(theta_s, xs, qmax, out);
        }
        if (c_sums->parsed()) {
            g_cfg.command = "sums";
            return cmd_sums(map_name, alpha_s, x0_s, schedule, sup_grid, csv, out);
        }
        if (c_fou->parsed()) {
            g_cfg.command = "fourier";
            return cmd_fourier(tri_s, hmax, csv, alpha_s, t_exp, nsched, growth_csv, out);
        }
        if (c_cob->parsed()) {
            g_cfg.command = "coboundary";
            return cmd_coboundary(alpha_s, hmax, grid, csv, out);
        }
        if (c_part->parsed()) {
            g_cfg.command = "partition";
            return cmd_partition(alpha_s, ell, no_diagonals, codings, svg, json_path, out);
        }
        if (c_eq->parsed()) {
            g_cfg.command = "eqfunct";
            return cmd_eqfunct(alpha_s, levels_s, out);
        }
        if (c_gaps->parsed()) {
            g_cfg.command = "gaps";
            return cmd_gaps(theta_s, betas_s, n, out);
        }
        if (c_sch->parsed()) {
            g_cfg.command = "schmidt";
            return cmd_schmidt(alpha_s, nmax, csv, out);
        }
        if (c_rec->parsed()) {
            g_cfg.command = "recur";
            return cmd_recur(alpha_s, map_name, nmax, points, out);
        }
        if (c_ess->parsed()) {
            g_cfg.command = "essval";
            return cmd_essval(alpha_s, map_name, vlo, vhi, nlist, grid, out);
        }
        if (c_weyl->parsed()) {
            g_cfg.command = "weyl";
            return cmd_weyl(alpha_s, a_s, Nlong, x0_s, y0, csv, out);
        }
        if (c_conj->parsed()) {
            g_cfg.command = "conjugation";
            return cmd_conjugation(alpha_s, a_s, samples, out);
        }
        if (c_rep->parsed()) {
            g_cfg.command = "reproduce";
            return cmd_reproduce(suite);
        }
        if (c_bench->parsed()) {
            g_cfg.command = "bench";
            return cmd_bench(kernel, size, out);
        }
        return EXIT_CONFIG;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_CONFIG;
    }
}
