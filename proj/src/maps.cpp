#include "tlab/maps.hpp"

#include <algorithm>
#include <cmath>

#include "tlab/errors.hpp"

namespace tlab {

namespace {

double frac(double u) {
    double f = u - std::floor(u);
    return f < 1.0 ? f : 0.0;
}

// distance of {u} to the nearest breakpoint set element (cyclic)
double cyclic_dist(double u, const std::vector<double>& pts) {
    double best = 1.0;
    double f = frac(u);
    for (double p : pts) {
        double d = std::abs(f - p);
        best = std::min(best, std::min(d, 1.0 - d));
    }
    return best;
}

double default_partial_fd(const PlanarMap& m, int comp, int axis, const Pt& x) {
    const double h = 1e-6;
    Pt a = x, b = x;
    a[axis] -= h;
    b[axis] += h;
    return (m.evaluate(b).value[comp] - m.evaluate(a).value[comp]) / (2 * h);
}

class ZeroMap final : public PlanarMap {
public:
    std::string name() const override { return "zero"; }
    int dim() const override { return 1; }
    int rho() const override { return 2; }
    MapClass cls() const override { return MapClass::F2; }
    MapEval evaluate(const Pt&, double) const override { return {}; }
    double partial(int, int, const Pt&) const override { return 0; }
    double piece_value(int, int, int, const Pt&) const override { return 0; }
};

class PsiMap final : public PlanarMap {
public:
    std::string name() const override { return "psi"; }
    int dim() const override { return 1; }
    int rho() const override { return 1; }
    MapClass cls() const override { return MapClass::STEP; }
    MapEval evaluate(const Pt& x, double tol) const override {
        MapEval e;
        double f = frac(x[0]);
        e.value[0] = f - 0.5;
        e.boundary = std::min(f, 1.0 - f) < tol;
        return e;
    }
    double partial(int, int axis, const Pt&) const override { return axis == 0 ? 1.0 : 0.0; }
    double piece_value(int, int, int, const Pt& x) const override { return x[0] - 0.5; }
    double variation() const override { return 1.0; }
    const std::vector<SawtoothTerm>* sawtooth() const override { return &terms_; }

private:
    std::vector<SawtoothTerm> terms_{{1.0, 1, 0, 0.0, ExactReal::from_long(0)}};
};

class Step1DMap final : public PlanarMap {
public:
    explicit Step1DMap(const ExactReal& beta) : beta_exact_(beta.mod1()) {
        beta_ = beta_exact_.to_double();
        if (beta_ <= 0 || beta_ >= 1)
            throw ConfigError("step(beta): beta must be in (0,1)");
        terms_ = {{1.0, 1, 0, -beta_, -beta_exact_}, {-1.0, 1, 0, 0.0, ExactReal::from_long(0)}};
    }
    std::string name() const override { return "step"; }
    int dim() const override { return 1; }
    int rho() const override { return 1; }
    MapClass cls() const override { return MapClass::STEP; }
    MapEval evaluate(const Pt& x, double tol) const override {
        MapEval e;
        double f = frac(x[0]);
        e.value[0] = (f < beta_ ? 1.0 : 0.0) - beta_;
        e.cell = f < beta_ ? 0 : 1;
        e.boundary = cyclic_dist(f, {0.0, beta_}) < tol;
        return e;
    }
    double partial(int, int, const Pt&) const override { return 0.0; }
    double piece_value(int, int jx, int, const Pt&) const override {
        return (jx == 0 ? 1.0 : 0.0) - beta_;
    }
    std::vector<double> breakpoints(int axis) const override {
        if (axis == 0)
            return {0.0, beta_, 1.0};
        return {0.0, 1.0};
    }
    double variation() const override { return 2.0; }
    const std::vector<SawtoothTerm>* sawtooth() const override { return &terms_; }

private:
    double beta_;
    ExactReal beta_exact_;
    std::vector<SawtoothTerm> terms_;
};

// 1_Delta(a,b,c) - ac/2 with vertices (0,0), (a,b), (0,c).
class TriangleIndicatorMap : public PlanarMap {
public:
    TriangleIndicatorMap(TriangleSpec tri, bool centered) : tri_(tri), centered_(centered) {}

    std::string name() const override { return "indicator"; }
    int dim() const override { return 1; }
    int rho() const override { return 2; }
    MapClass cls() const override { return MapClass::TRIANGLE; }

    MapEval evaluate(const Pt& x, double tol) const override {
        MapEval e;
        double fx = frac(x[0]), fy = frac(x[1]);
        bool inside = contains(fx, fy);
        e.value[0] = (inside ? 1.0 : 0.0) - (centered_ ? tri_.area() : 0.0);
        e.cell = inside ? 0 : 1;
        e.boundary = boundary_dist(fx, fy) < tol;
        return e;
    }
    double partial(int, int, const Pt&) const override { return 0.0; }
    std::vector<double> mean() const override { return {centered_ ? 0.0 : tri_.area()}; }
    std::vector<DecayFormPair> decay_forms() const override {
        // coefficients act on h = (s, t)
        return {
            {{{0, 1}}, {{1, 0}}},                    // (t, s)
            {{{0, 1}}, {{tri_.a, tri_.b}}},          // (t, bt + as)
            {{{0, 1}}, {{tri_.a, tri_.b - tri_.c}}}, // (t, (b-c)t + as)
        };
    }
    const TriangleSpec& tri() const { return tri_; }

protected:
    bool contains(double x, double y) const {
        if (x <= 0 || x >= tri_.a)
            return false;
        double lo = tri_.b / tri_.a * x;
        double hi = (tri_.b - tri_.c) / tri_.a * x + tri_.c;
        return y > lo && y < hi;
    }
    double boundary_dist(double x, double y) const {
        double d0 = std::min(std::abs(x), std::abs(x - tri_.a));
        double nb = std::hypot(tri_.b, tri_.a);
        double d1 = std::abs(tri_.b * x - tri_.a * y) / nb;
        double nc = std::hypot(tri_.b - tri_.c, tri_.a);
        double d2 = std::abs((tri_.b - tri_.c) * x - tri_.a * (y - tri_.c)) / nc;
        return std::min({d0, d1, d2});
    }

    TriangleSpec tri_;
    bool centered_;
};

// Delta_0 = Delta(1,1,1) = {x < y}; the sawtooth identity
// 1_{x<y} - 1/2 = psi(x-y) + psi(y) - psi(x) powers the fast engines.
class Triangle0Map final : public TriangleIndicatorMap {
public:
    explicit Triangle0Map(bool centered) : TriangleIndicatorMap(TriangleSpec{1, 1, 1}, centered) {
        if (centered)
            terms_ = {{1.0, 1, -1, 0.0, ExactReal::from_long(0)},
                      {1.0, 0, 1, 0.0, ExactReal::from_long(0)},
                      {-1.0, 1, 0, 0.0, ExactReal::from_long(0)}};
    }
    std::string name() const override { return centered_ ? "triangle0" : "indicator0"; }
    MapEval evaluate(const Pt& x, double tol) const override {
        MapEval e;
        double fx = frac(x[0]), fy = frac(x[1]);
        bool inside = fx < fy;
        e.value[0] = (inside ? 1.0 : 0.0) - (centered_ ? 0.5 : 0.0);
        e.cell = inside ? 0 : 1;
        double dd = std::abs(fx - fy);
        double ddiag = std::min(dd, 1.0 - dd) / std::sqrt(2.0);
        double dv = std::min(fx, 1.0 - fx);
        double dh = std::min(fy, 1.0 - fy);
        e.boundary = std::min({ddiag, dv, dh}) < tol;
        return e;
    }
    const std::vector<SawtoothTerm>* sawtooth() const override {
        return centered_ ? &terms_ : nullptr;
    }

private:
    std::vector<SawtoothTerm> terms_;
};

// {g1 x1}{g2 x2} - mu(g1,g2); g = (1,1) gives xy_quarter.
class GammaMap final : public PlanarMap {
public:
    GammaMap(double g1, double g2, bool frac_product)
        : g1_(g1), g2_(g2), frac_product_(frac_product) {
        if (g1 < 1 || g1 >= 2 || g2 < 1 || g2 >= 2)
            throw ConfigError("gamma(g1,g2): require g in [1,2)");
        mean_ = moment(g1_) * moment(g2_);
    }

    static double moment(double g) { return 0.5 * g - 1.0 + 1.0 / g; } // int {g u} du
    double lambda1_closed() const { return g1_ * moment(g2_); }
    double lambda2_closed() const { return g2_ * moment(g1_); }

    std::string name() const override { return frac_product_ ? "xy_quarter" : "gamma"; }
    int dim() const override { return 1; }
    int rho() const override { return 2; }
    MapClass cls() const override { return MapClass::F2; }

    MapEval evaluate(const Pt& x, double tol) const override {
        MapEval e;
        double fx = frac(x[0]), fy = frac(x[1]);
        e.value[0] = frac(g1_ * fx) * frac(g2_ * fy) - mean_;
        int jx = (g1_ > 1 && fx >= 1.0 / g1_) ? 1 : 0;
        int jy = (g2_ > 1 && fy >= 1.0 / g2_) ? 1 : 0;
        e.cell = jx * 2 + jy;
        e.boundary = cyclic_dist(fx, xbreaks(g1_)) < tol || cyclic_dist(fy, xbreaks(g2_)) < tol;
        return e;
    }
    double partial(int, int axis, const Pt& x) const override {
        double fx = frac(x[0]), fy = frac(x[1]);
        if (axis == 0)
            return g1_ * frac(g2_ * fy);
        return g2_ * frac(g1_ * fx);
    }
    double piece_value(int, int jx, int jy, const Pt& x) const override {
        double vx = g1_ * x[0] - (jx == 1 ? 1.0 : 0.0);
        double vy = g2_ * x[1] - (jy == 1 ? 1.0 : 0.0);
        return vx * vy - mean_;
    }
    std::vector<double> breakpoints(int axis) const override {
        double g = axis == 0 ? g1_ : g2_;
        if (g > 1)
            return {0.0, 1.0 / g, 1.0};
        return {0.0, 1.0};
    }
    std::vector<double> mean() const override { return {0.0}; }
    bool is_frac_product() const override { return frac_product_; }

private:
    static std::vector<double> xbreaks(double g) {
        if (g > 1)
            return {0.0, 1.0 / g};
        return {0.0};
    }
    double g1_, g2_, mean_;
    bool frac_product_;
};

// two scalar T^2 maps as one R^2-valued map (lambda matrix / det M checks)
class PairMap final : public PlanarMap {
public:
    PairMap(MapPtr a, MapPtr b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_->rho() != 2 || b_->rho() != 2 || a_->dim() != 1 || b_->dim() != 1)
            throw ConfigError("pair(...) takes two scalar T^2 maps");
    }
    std::string name() const override { return "pair"; }
    int dim() const override { return 2; }
    int rho() const override { return 2; }
    MapClass cls() const override { return MapClass::F2; }
    MapEval evaluate(const Pt& x, double tol) const override {
        MapEval ea = a_->evaluate(x, tol);
        MapEval eb = b_->evaluate(x, tol);
        MapEval e;
        e.value[0] = ea.value[0];
        e.value[1] = eb.value[0];
        e.boundary = ea.boundary || eb.boundary;
        e.cell = ea.cell;
        return e;
    }
    double partial(int comp, int axis, const Pt& x) const override {
        return comp == 0 ? a_->partial(0, axis, x) : b_->partial(0, axis, x);
    }
    double piece_value(int comp, int jx, int jy, const Pt& x) const override {
        // the breakpoint grid is the common refinement; map indices through it
        const PlanarMap& m = comp == 0 ? *a_ : *b_;
        auto xb = breakpoints(0);
        auto yb = breakpoints(1);
        Pt mid{(xb[jx] + xb[jx + 1]) / 2, (yb[jy] + yb[jy + 1]) / 2};
        auto sub = [&](const PlanarMap& mm, int axis, double v) {
            auto bs = mm.breakpoints(axis);
            int j = 0;
            while (j + 2 < int(bs.size()) && bs[j + 1] <= v)
                ++j;
            return j;
        };
        return m.piece_value(comp == 0 ? 0 : 0, sub(m, 0, mid[0]), sub(m, 1, mid[1]), x);
    }
    std::vector<double> breakpoints(int axis) const override {
        auto xa = a_->breakpoints(axis);
        auto xb = b_->breakpoints(axis);
        xa.insert(xa.end(), xb.begin(), xb.end());
        std::sort(xa.begin(), xa.end());
        xa.erase(std::unique(xa.begin(), xa.end()), xa.end());
        return xa;
    }
    std::vector<double> mean() const override { return {a_->mean()[0], b_->mean()[0]}; }

private:
    MapPtr a_, b_;
};

class CosineMap final : public PlanarMap {
public:
    CosineMap(int h1, int h2) : h1_(h1), h2_(h2) {
        if (h1 == 0 && h2 == 0)
            throw ConfigError("cosine(0,0) is constant");
    }
    std::string name() const override { return "cosine"; }
    int dim() const override { return 1; }
    int rho() const override { return 2; }
    MapClass cls() const override { return MapClass::G; }
    MapEval evaluate(const Pt& x, double) const override {
        MapEval e;
        e.value[0] = std::cos(2 * M_PI * (h1_ * x[0] + h2_ * x[1]));
        return e;
    }
    double partial(int, int axis, const Pt& x) const override {
        int h = axis == 0 ? h1_ : h2_;
        return -2 * M_PI * h * std::sin(2 * M_PI * (h1_ * x[0] + h2_ * x[1]));
    }
    double piece_value(int comp, int, int, const Pt& x) const override {
        return evaluate(x, 0.0).value[comp];
    }

private:
    int h1_, h2_;
};

std::vector<std::string> split_args(const std::string& spec, size_t open) {
    if (spec.back() != ')')
        throw ConfigError("map spec: missing ')' in " + spec);
    std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    std::vector<std::string> args;
    size_t pos = 0;
    int depth = 0;
    std::string cur;
    for (char c : inner) {
        if (c == '(')
            ++depth;
        if (c == ')')
            --depth;
        if (c == ',' && depth == 0) {
            args.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    (void)pos;
    if (!cur.empty())
        args.push_back(cur);
    return args;
}

} // namespace

double PlanarMap::partial(int comp, int axis, const Pt& x) const {
    return default_partial_fd(*this, comp, axis, x);
}

double PlanarMap::piece_value(int comp, int, int, const Pt& x) const {
    return evaluate(x).value[comp];
}

std::vector<double> PlanarMap::breakpoints(int) const { return {0.0, 1.0}; }

MapPtr make_map(const std::string& spec) {
    size_t open = spec.find('(');
    std::string base = open == std::string::npos ? spec : spec.substr(0, open);
    if (base == "zero")
        return std::make_shared<ZeroMap>();
    if (base == "psi")
        return std::make_shared<PsiMap>();
    if (base == "triangle0")
        return std::make_shared<Triangle0Map>(true);
    if (base == "indicator0")
        return std::make_shared<Triangle0Map>(false);
    if (base == "xy_quarter")
        return std::make_shared<GammaMap>(1.0, 1.0, true);
    if (open == std::string::npos)
        throw ConfigError("unknown map: " + spec);
    auto args = split_args(spec, open);
    if (base == "step") {
        if (args.size() != 1)
            throw ConfigError("step(beta) takes one argument");
        return std::make_shared<Step1DMap>(parse_real(args[0]));
    }
    if (base == "indicator") {
        if (args.size() != 3)
            throw ConfigError("indicator(a,b,c) takes three arguments");
        TriangleSpec t{parse_real(args[0]).to_double(), parse_real(args[1]).to_double(),
                       parse_real(args[2]).to_double()};
        if (!(t.a > 0 && t.a <= 1 && t.c > 0 && t.c <= 1 && t.b >= t.c - 1 && t.b <= 1))
            throw ConfigError("indicator(a,b,c): need 0<a,c<=1 and c-1<=b<=1");
        return std::make_shared<TriangleIndicatorMap>(t, true);
    }
    if (base == "gamma") {
        if (args.size() != 2)
            throw ConfigError("gamma(g1,g2) takes two arguments");
        return std::make_shared<GammaMap>(parse_real(args[0]).to_double(),
                                          parse_real(args[1]).to_double(), false);
    }
    if (base == "pair") {
        if (args.size() != 2)
            throw ConfigError("pair(mapA,mapB) takes two map specs");
        return std::make_shared<PairMap>(make_map(args[0]), make_map(args[1]));
    }
    if (base == "cosine") {
        if (args.size() != 2)
            throw ConfigError("cosine(h1,h2) takes two arguments");
        return std::make_shared<CosineMap>(static_cast<int>(parse_real(args[0]).to_double()),
                                           static_cast<int>(parse_real(args[1]).to_double()));
    }
    throw ConfigError("unknown map: " + spec);
}

} // namespace tlab
