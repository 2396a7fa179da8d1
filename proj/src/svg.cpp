#include "minpart/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace minpart {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.5g", v);
    return buf;
}

// world -> pixel mapping with a fixed margin; y flips
struct Canvas {
    double wx0, wy0, wx1, wy1;
    double scale;
    double margin;
    int width, height;

    Canvas(double ax, double ay, double bx, double by, int px_width)
        : wx0(ax), wy0(ay), wx1(bx), wy1(by) {
        margin = 0.06 * (wx1 - wx0);
        const double ww = wx1 - wx0 + 2 * margin;
        const double wh = wy1 - wy0 + 2 * margin;
        width = px_width;
        scale = width / ww;
        height = static_cast<int>(std::lround(wh * scale));
    }
    double px(double x) const { return (x - wx0 + margin) * scale; }
    double py(double y) const { return height - (y - wy0 + margin) * scale; }
};

const char* kPartFills[] = {"#8ecae6", "#ffb4a2", "#b7e4c7", "#e9c46a",
                            "#cdb4db", "#f4a261"};

std::string polyline_path(const Canvas& cv, const std::vector<Point>& line) {
    std::string d;
    for (size_t i = 0; i < line.size(); ++i) {
        d += i == 0 ? "M" : "L";
        d += fmt(cv.px(line[i].x)) + " " + fmt(cv.py(line[i].y));
    }
    return d;
}

}  // namespace

std::string nodal_family_svg(FamilyCoeffs c, double eps, const NodalSet& set,
                             int px_width) {
    const double W = kPi * eps, H = kPi;
    const Canvas cv(-W / 2, -H / 2, W / 2, H / 2, px_width);
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(cv.width) + "\" height=\"" + std::to_string(cv.height) +
           "\" viewBox=\"0 0 " + std::to_string(cv.width) + " " +
           std::to_string(cv.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    svg += "<rect x=\"" + fmt(cv.px(-W / 2)) + "\" y=\"" + fmt(cv.py(H / 2)) +
           "\" width=\"" + fmt(W * cv.scale) + "\" height=\"" + fmt(H * cv.scale) +
           "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
    for (const auto& line : set.polylines) {
        if (line.size() < 2) continue;
        svg += "<path d=\"" + polyline_path(cv, line) +
               "\" fill=\"none\" stroke=\"#1d3557\" stroke-width=\"1.6\"/>\n";
    }
    for (const auto& p : set.boundary_hits)
        svg += "<circle cx=\"" + fmt(cv.px(p.x)) + "\" cy=\"" + fmt(cv.py(p.y)) +
               "\" r=\"3\" fill=\"none\" stroke=\"#e07a00\" stroke-width=\"1.2\"/>\n";
    for (const auto& cp : set.interior_critical)
        svg += "<circle cx=\"" + fmt(cv.px(cp.p.x)) + "\" cy=\"" + fmt(cv.py(cp.p.y)) +
               "\" r=\"4\" fill=\"#d62828\"/>\n";
    for (const auto& cp : set.boundary_critical)
        svg += "<rect x=\"" + fmt(cv.px(cp.p.x) - 4) + "\" y=\"" +
               fmt(cv.py(cp.p.y) - 4) +
               "\" width=\"8\" height=\"8\" fill=\"#d62828\"/>\n";
    svg += "<text x=\"8\" y=\"16\" font-family=\"monospace\" font-size=\"12\" "
           "fill=\"#222222\">alpha=" +
           fmt(c.alpha) + " beta=" + fmt(c.beta) + " eps=" + fmt(eps) + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

std::string partition_svg(const Partition& p, const TripleAngles* angles,
                          int px_width) {
    const Grid& g = p.grid;
    const Canvas cv(-g.a / 2, -g.b / 2, g.a / 2, g.b / 2, px_width);
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(cv.width) + "\" height=\"" + std::to_string(cv.height) +
           "\" viewBox=\"0 0 " + std::to_string(cv.width) + " " +
           std::to_string(cv.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    // per-row runs of constant label, drawn as cell rectangles
    for (int j = 0; j < g.ny; ++j) {
        int i = 0;
        while (i < g.nx) {
            const int l = p.labels[g.id(i, j)];
            int i2 = i;
            while (i2 + 1 < g.nx && p.labels[g.id(i2 + 1, j)] == l) ++i2;
            if (l > 0) {
                const char* fill = kPartFills[(l - 1) % 6];
                const double x0 = g.x(i) - g.hx / 2, x1 = g.x(i2) + g.hx / 2;
                const double y0 = g.y(j) - g.hy / 2, y1 = g.y(j) + g.hy / 2;
                svg += "<rect x=\"" + fmt(cv.px(x0)) + "\" y=\"" + fmt(cv.py(y1)) +
                       "\" width=\"" + fmt((x1 - x0) * cv.scale) + "\" height=\"" +
                       fmt((y1 - y0) * cv.scale) + "\" fill=\"" + fill + "\"/>\n";
            }
            i = i2 + 1;
        }
    }
    svg += "<rect x=\"" + fmt(cv.px(-g.a / 2)) + "\" y=\"" + fmt(cv.py(g.b / 2)) +
           "\" width=\"" + fmt(g.a * cv.scale) + "\" height=\"" +
           fmt(g.b * cv.scale) + "\" fill=\"none\" stroke=\"#222222\" "
           "stroke-width=\"1.5\"/>\n";
    for (const auto& ip : interface_points(g, p.labels, p.values))
        svg += "<circle cx=\"" + fmt(cv.px(ip.p.x)) + "\" cy=\"" + fmt(cv.py(ip.p.y)) +
               "\" r=\"1\" fill=\"#1d3557\"/>\n";
    for (const auto& cp : p.interior_points)
        svg += "<circle cx=\"" + fmt(cv.px(cp.p.x)) + "\" cy=\"" + fmt(cv.py(cp.p.y)) +
               "\" r=\"4\" fill=\"none\" stroke=\"#d62828\" stroke-width=\"1.5\"/>\n";
    for (const auto& cp : p.boundary_points)
        svg += "<rect x=\"" + fmt(cv.px(cp.p.x) - 3) + "\" y=\"" +
               fmt(cv.py(cp.p.y) - 3) +
               "\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"#e07a00\" "
               "stroke-width=\"1.2\"/>\n";
    std::string caption = std::string("parts=") + std::to_string(p.parts) +
                          " topology=" + topology_name(p.topology) +
                          " Lambda=" + fmt(p.lambda_max);
    if (angles && angles->ok) {
        caption += " sectors=";
        for (size_t i = 0; i < angles->sector_angles.size(); ++i) {
            if (i) caption += ",";
            caption += fmt(angles->sector_angles[i]);
        }
    }
    svg += "<text x=\"8\" y=\"16\" font-family=\"monospace\" font-size=\"12\" "
           "fill=\"#222222\">" + caption + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

void write_svg_atomic(const std::filesystem::path& path, const std::string& svg) {
    const std::filesystem::path tmp = path.string() + ".tmp~";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << svg;
        if (!os.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace minpart
