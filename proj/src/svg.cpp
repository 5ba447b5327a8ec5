#include "tlab/svg.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>

namespace tlab {

namespace {

void fmt(std::string& out, const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    out += buf;
}

uint32_t fnv1a(const std::vector<uint8_t>& bytes) {
    uint32_t h = 2166136261u;
    for (uint8_t b : bytes) {
        h ^= b;
        h *= 16777619u;
    }
    return h;
}

// pastel color from the coding hash
std::string coding_fill(const std::vector<uint8_t>& coding, int fallback) {
    uint32_t h = coding.empty() ? uint32_t(fallback) * 2654435761u : fnv1a(coding);
    int r = 180 + int(h % 64);
    int g = 180 + int((h >> 8) % 64);
    int b = 180 + int((h >> 16) % 64);
    char buf[8];
    snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

// clip a convex polygon (lifted coords) to [s, s+1] along one axis
std::vector<Pt> clip_axis(const std::vector<Pt>& poly, int axis, double bound, bool keep_below) {
    std::vector<Pt> out;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        Pt p = poly[i], q = poly[(i + 1) % n];
        double sp = keep_below ? bound - p[axis] : p[axis] - bound;
        double sq = keep_below ? bound - q[axis] : q[axis] - bound;
        if (sp >= 0)
            out.push_back(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
            double t = sp / (sp - sq);
            Pt m{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
            m[axis] = bound;
            out.push_back(m);
        }
    }
    return out;
}

} // namespace

std::string partition_to_svg(const TorusPartition& part, const SvgStyle& style) {
    const int S = style.size_px;
    std::string out;
    fmt(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    fmt(out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" "
        "viewBox=\"0 0 %d %d\">\n",
        S, S, S, S);
    fmt(out, "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n", S, S);

    auto emit_poly = [&](const std::vector<Pt>& poly, const std::string& fill) {
        if (poly.size() < 3)
            return;
        out += "<polygon points=\"";
        for (size_t i = 0; i < poly.size(); ++i) {
            if (i)
                out += ' ';
            // y axis flipped so that (0,0) is bottom-left
            fmt(out, "%.6f,%.6f", poly[i][0] * S, (1.0 - poly[i][1]) * S);
        }
        fmt(out, "\" fill=\"%s\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n", fill.c_str());
    };

    if (style.shade_by_coding) {
        for (const auto& cell : part.cells) {
            std::string fill = coding_fill(cell.coding, cell.id);
            // lifted cells can cross x=1 or y=1: draw the wrapped pieces
            for (int sx = 0; sx <= 1; ++sx) {
                for (int sy = 0; sy <= 1; ++sy) {
                    std::vector<Pt> p;
                    for (const Pt& v : cell.poly)
                        p.push_back({v[0] - sx, v[1] - sy});
                    p = clip_axis(p, 0, 0.0, false);
                    p = clip_axis(p, 0, 1.0, true);
                    p = clip_axis(p, 1, 0.0, false);
                    p = clip_axis(p, 1, 1.0, true);
                    emit_poly(p, fill);
                }
            }
        }
    }

    if (style.draw_lines) {
        out += "<g stroke=\"#000000\" stroke-width=\"0.8\" fill=\"none\">\n";
        for (double v : part.v_lines)
            fmt(out, "<line x1=\"%.6f\" y1=\"0\" x2=\"%.6f\" y2=\"%d\"/>\n", v * S, v * S, S);
        for (double h : part.h_lines)
            fmt(out, "<line x1=\"0\" y1=\"%.6f\" x2=\"%d\" y2=\"%.6f\"/>\n", (1.0 - h) * S, S,
                (1.0 - h) * S);
        for (double d : part.d_lines) {
            // x - y = d (mod 1): two slope-1 segments in the unit square,
            // (c,0)-(1,1-c) and (0,1-c)-(c,1), with the screen y axis flipped
            double c = d - std::floor(d);
            fmt(out, "<line x1=\"%.6f\" y1=\"%d\" x2=\"%d\" y2=\"%.6f\"/>\n", c * S, S, S,
                c * S);
            fmt(out, "<line x1=\"0\" y1=\"%.6f\" x2=\"%.6f\" y2=\"0\"/>\n", c * S, c * S);
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace tlab
