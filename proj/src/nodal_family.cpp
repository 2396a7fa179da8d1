#include "minpart/nodal_family.hpp"

#include "minpart/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace minpart {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_domain(double eps, double x, double y) {
    const double W = kPi * eps, H = kPi;
    const double sx = 1e-12 * W, sy = 1e-12 * H;
    if (x < -W / 2 - sx || x > W / 2 + sx || y < -H / 2 - sy || y > H / 2 + sy)
        throw std::domain_error("point outside the closed rectangle");
}

void check_coeffs(const FamilyCoeffs& c) {
    if (c.alpha == 0.0 && c.beta == 0.0)
        throw std::invalid_argument("coefficients must not both vanish");
}

void check_eps(double eps) {
    if (!(eps > 0.0) || eps > 1.0)
        throw std::invalid_argument("eps must lie in ]0, 1]");
}

}  // namespace

double family_phi(FamilyCoeffs c, double eps, double x, double y) {
    check_coeffs(c);
    check_eps(eps);
    check_domain(eps, x, y);
    return c.alpha * std::cos(x / eps) * std::cos(3.0 * y) +
           c.beta * std::sin(2.0 * x / eps) * std::cos(y);
}

double family_psi(FamilyCoeffs c, double eps, double x, double y) {
    check_coeffs(c);
    check_eps(eps);
    check_domain(eps, x, y);
    const double sy = std::sin(y);
    return c.alpha * (1.0 - 4.0 * sy * sy) + 2.0 * c.beta * std::sin(x / eps);
}

double family_psi_dx(FamilyCoeffs c, double eps, double x, double y) {
    check_coeffs(c);
    check_eps(eps);
    check_domain(eps, x, y);
    return 2.0 * c.beta * std::cos(x / eps) / eps;
}

double family_psi_dy(FamilyCoeffs c, double eps, double x, double y) {
    check_coeffs(c);
    check_eps(eps);
    check_domain(eps, x, y);
    return -4.0 * c.alpha * std::sin(2.0 * y);
}

LabelResult label_signed_components(int nx, int ny, const std::vector<double>& values,
                                    double band) {
    if (nx < 1 || ny < 1 || static_cast<int>(values.size()) != nx * ny)
        throw std::invalid_argument("value array does not match grid shape");
    LabelResult out;
    out.labels.assign(values.size(), 0);
    out.count = 0;
    std::deque<int> queue;
    for (int start = 0; start < nx * ny; ++start) {
        if (out.labels[start] != 0 || std::abs(values[start]) <= band) continue;
        const int label = ++out.count;
        const bool positive = values[start] > 0.0;
        out.labels[start] = label;
        queue.push_back(start);
        while (!queue.empty()) {
            const int p = queue.front();
            queue.pop_front();
            const int i = p % nx, j = p / nx;
            const int nbr[4] = {i > 0 ? p - 1 : -1, i + 1 < nx ? p + 1 : -1,
                                j > 0 ? p - nx : -1, j + 1 < ny ? p + nx : -1};
            for (int q : nbr) {
                if (q < 0 || out.labels[q] != 0) continue;
                if (std::abs(values[q]) <= band) continue;
                if ((values[q] > 0.0) != positive) continue;
                out.labels[q] = label;
                queue.push_back(q);
            }
        }
    }
    return out;
}

namespace {

struct ScanField {
    int res;
    double W, H, hx, hy;
    std::vector<double> psi;          // (res+1)^2 samples, row-major by j
    double scale = 0.0;               // max |psi|

    double x(int i) const { return -W / 2 + i * hx; }
    double y(int j) const { return -H / 2 + j * hy; }
    double v(int i, int j) const { return psi[j * (res + 1) + i]; }
};

ScanField sample_psi(const FamilyCoeffs& c, double eps, int res) {
    ScanField f;
    f.res = res;
    f.W = kPi * eps;
    f.H = kPi;
    f.hx = f.W / res;
    f.hy = f.H / res;
    f.psi.resize(static_cast<size_t>(res + 1) * (res + 1));
    for (int j = 0; j <= res; ++j)
        for (int i = 0; i <= res; ++i) {
            const double v = family_psi(c, eps, f.x(i), f.y(j));
            f.psi[static_cast<size_t>(j) * (res + 1) + i] = v;
            f.scale = std::max(f.scale, std::abs(v));
        }
    return f;
}

// Lattice-edge ids for the contour graph. Horizontal edge (i,j)->(i+1,j),
// vertical edge (i,j)->(i,j+1).
int h_edge_id(const ScanField& f, int i, int j) { return j * f.res + i; }
int v_edge_id(const ScanField& f, int i, int j) {
    return f.res * (f.res + 1) + j * (f.res + 1) + i;
}

struct CrossingGraph {
    std::unordered_map<int, Point> pos;
    std::unordered_map<int, std::vector<int>> adj;
    std::vector<int> boundary_edges;
};

// Marching squares on the psi samples. Crossing positions are computed once
// per lattice edge, so the two cells sharing an edge chain exactly.
CrossingGraph build_crossings(const ScanField& f) {
    CrossingGraph g;
    const int res = f.res;
    auto sgn = [&](int i, int j) { return f.v(i, j) > 0.0; };
    auto cross_point = [&](double x0, double y0, double x1, double y1, double v0,
                           double v1) {
        const double t = v0 / (v0 - v1);
        return Point{x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
    };
    for (int j = 0; j <= res; ++j)
        for (int i = 0; i < res; ++i)
            if (sgn(i, j) != sgn(i + 1, j)) {
                const int id = h_edge_id(f, i, j);
                g.pos[id] = cross_point(f.x(i), f.y(j), f.x(i + 1), f.y(j),
                                        f.v(i, j), f.v(i + 1, j));
                if (j == 0 || j == res) g.boundary_edges.push_back(id);
            }
    for (int j = 0; j < res; ++j)
        for (int i = 0; i <= res; ++i)
            if (sgn(i, j) != sgn(i, j + 1)) {
                const int id = v_edge_id(f, i, j);
                g.pos[id] = cross_point(f.x(i), f.y(j), f.x(i), f.y(j + 1),
                                        f.v(i, j), f.v(i, j + 1));
                if (i == 0 || i == res) g.boundary_edges.push_back(id);
            }
    auto link = [&](int a, int b) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    };
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            int e[4];
            int ne = 0;
            const int bottom = h_edge_id(f, i, j), top = h_edge_id(f, i, j + 1);
            const int left = v_edge_id(f, i, j), right = v_edge_id(f, i + 1, j);
            if (g.pos.count(bottom)) e[ne++] = bottom;
            if (g.pos.count(right)) e[ne++] = right;
            if (g.pos.count(top)) e[ne++] = top;
            if (g.pos.count(left)) e[ne++] = left;
            if (ne == 2) {
                link(e[0], e[1]);
            } else if (ne == 4) {
                // saddle cell: split by the bilinear sign at the cell centre
                const double vc = 0.25 * (f.v(i, j) + f.v(i + 1, j) +
                                          f.v(i, j + 1) + f.v(i + 1, j + 1));
                if ((vc > 0.0) == sgn(i, j)) {
                    link(bottom, right);
                    link(top, left);
                } else {
                    link(bottom, left);
                    link(top, right);
                }
            }
        }
    return g;
}

std::vector<std::vector<Point>> chain_polylines(const CrossingGraph& g) {
    std::vector<std::vector<Point>> lines;
    std::unordered_map<int, bool> used;
    auto walk = [&](int start) {
        std::vector<Point> line;
        int prev = -1, cur = start;
        while (cur >= 0 && !used[cur]) {
            used[cur] = true;
            line.push_back(g.pos.at(cur));
            int next = -1;
            auto it = g.adj.find(cur);
            if (it != g.adj.end())
                for (int nb : it->second)
                    if (nb != prev && !used[nb]) {
                        next = nb;
                        break;
                    }
            prev = cur;
            cur = next;
        }
        return line;
    };
    for (const auto& [id, nbrs] : g.adj)
        if (nbrs.size() == 1 && !used[id]) lines.push_back(walk(id));
    for (const auto& [id, nbrs] : g.adj)
        if (!used[id]) {
            auto loop = walk(id);
            if (!loop.empty()) loop.push_back(loop.front());
            lines.push_back(loop);
        }
    // isolated crossings (no adjacency entry) are dropped; they can only come
    // from degenerate sampling exactly on a zero line and carry no arc
    std::sort(lines.begin(), lines.end(),
              [](const auto& l, const auto& r) {
                  if (l.size() != r.size()) return l.size() > r.size();
                  if (l.empty()) return false;
                  if (l.front().x != r.front().x) return l.front().x < r.front().x;
                  return l.front().y < r.front().y;
              });
    return lines;
}

struct TraceZero {
    Point p;
    int arcs;
};

// Double zeros of psi restricted to one wall mark spots where the nodal set
// meets the boundary tangentially or with several arcs.
std::vector<TraceZero> wall_double_zeros(const FamilyCoeffs& c, double eps,
                                         const ScanField& f) {
    std::vector<TraceZero> out;
    const int res = f.res;
    struct Wall {
        bool vertical;
        double fixed;
    };
    const Wall walls[4] = {{true, -f.W / 2}, {true, f.W / 2},
                           {false, -f.H / 2}, {false, f.H / 2}};
    for (const auto& w : walls) {
        auto g = [&](double t) {
            return w.vertical ? family_psi(c, eps, w.fixed, t)
                              : family_psi(c, eps, t, w.fixed);
        };
        auto gp = [&](double t) {
            return w.vertical ? family_psi_dy(c, eps, w.fixed, t)
                              : family_psi_dx(c, eps, t, w.fixed);
        };
        const double lo = w.vertical ? -f.H / 2 : -f.W / 2;
        const double span = w.vertical ? f.H : f.W;
        const double h = span / res;
        double gscale = 0.0;
        for (int i = 0; i <= res; ++i) gscale = std::max(gscale, std::abs(gp(lo + i * h)));
        for (int i = 0; i < res; ++i) {
            const double t0 = lo + i * h, t1 = t0 + h;
            const double d0 = gp(t0), d1 = gp(t1);
            if (d0 == 0.0 ? false : (d0 > 0.0) == (d1 > 0.0)) continue;
            // Newton on g' from the bracket midpoint
            double t = 0.5 * (t0 + t1);
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                const double d = gp(t);
                const double dd = w.vertical
                                      ? -8.0 * c.alpha * std::cos(2.0 * t)
                                      : -2.0 * c.beta * std::sin(t / eps) / (eps * eps);
                if (std::abs(dd) < 1e-300) break;
                const double step = d / dd;
                t -= step;
                t = std::clamp(t, lo, lo + span);
                if (std::abs(step) <= 1e-14 * span) {
                    ok = true;
                    break;
                }
            }
            if (!ok) continue;
            if (std::abs(gp(t)) > 1e-8 * std::max(gscale, 1e-300)) continue;
            if (std::abs(g(t)) > 1e-8 * std::max(f.scale, 1e-300)) continue;
            // interior of the wall only; corners belong to two walls at once
            if (t - lo < 1e-9 * span || lo + span - t < 1e-9 * span) continue;
            Point p = w.vertical ? Point{w.fixed, t} : Point{t, w.fixed};
            bool dup = false;
            for (const auto& z : out)
                if (std::hypot(z.p.x - p.x, z.p.y - p.y) < 4 * std::min(f.hx, f.hy))
                    dup = true;
            if (dup) continue;
            // arcs entering the domain: sign changes along an inward half circle
            const double rho = 3.0 * std::max(f.hx, f.hy);
            const double nxn = w.vertical ? (w.fixed < 0 ? 1.0 : -1.0) : 0.0;
            const double nyn = w.vertical ? 0.0 : (w.fixed < 0 ? 1.0 : -1.0);
            int changes = 0;
            double prev = 0.0;
            bool have_prev = false;
            for (int s = 0; s <= 48; ++s) {
                const double ang = -kPi / 2 + kPi * s / 48.0;
                const double tx = w.vertical ? 0.0 : 1.0, ty = w.vertical ? 1.0 : 0.0;
                const double px = p.x + rho * (nxn * std::cos(ang) + tx * std::sin(ang));
                const double py = p.y + rho * (nyn * std::cos(ang) + ty * std::sin(ang));
                const double cx = std::clamp(px, -f.W / 2, f.W / 2);
                const double cy = std::clamp(py, -f.H / 2, f.H / 2);
                const double v = family_psi(c, eps, cx, cy);
                if (std::abs(v) <= 1e-9 * f.scale) continue;
                if (have_prev && (v > 0.0) != (prev > 0.0)) ++changes;
                prev = v;
                have_prev = true;
            }
            out.push_back({p, changes});
        }
    }
    return out;
}

// Newton search for interior points with vanishing gradient that also lie on
// the zero set. The Hessian of psi is diagonal, which keeps the step simple.
std::vector<CriticalPoint> interior_gradient_zeros(const FamilyCoeffs& c, double eps,
                                                   const ScanField& f) {
    std::vector<CriticalPoint> out;
    const int res = f.res;
    double gscale = 0.0;
    for (int j = 0; j <= res; ++j)
        for (int i = 0; i <= res; ++i)
            gscale = std::max(gscale, std::hypot(family_psi_dx(c, eps, f.x(i), f.y(j)),
                                                 family_psi_dy(c, eps, f.x(i), f.y(j))));
    for (int j = 0; j <= res; ++j)
        for (int i = 0; i <= res; ++i) {
            double x = f.x(i), y = f.y(j);
            if (std::abs(f.v(i, j)) > 0.15 * f.scale) continue;
            const double g0 = std::hypot(family_psi_dx(c, eps, x, y),
                                         family_psi_dy(c, eps, x, y));
            if (g0 > 0.15 * std::max(gscale, 1e-300)) continue;
            bool ok = true;
            for (int it = 0; it < 60 && ok; ++it) {
                double sx = 0.0, sy = 0.0;
                if (c.beta != 0.0) {
                    const double d2 = -2.0 * c.beta * std::sin(x / eps) / (eps * eps);
                    if (std::abs(d2) < 1e-300) { ok = false; break; }
                    sx = family_psi_dx(c, eps, x, y) / d2;
                }
                if (c.alpha != 0.0) {
                    const double d2 = -8.0 * c.alpha * std::cos(2.0 * y);
                    if (std::abs(d2) < 1e-300) { ok = false; break; }
                    sy = family_psi_dy(c, eps, x, y) / d2;
                }
                x = std::clamp(x - sx, -f.W / 2, f.W / 2);
                y = std::clamp(y - sy, -f.H / 2, f.H / 2);
                if (std::hypot(sx, sy) <= 1e-14 * std::max(f.W, f.H)) break;
            }
            if (!ok) continue;
            const double gg = std::hypot(family_psi_dx(c, eps, x, y),
                                         family_psi_dy(c, eps, x, y));
            if (gg > 1e-10 * std::max(gscale, 1e-300)) continue;
            if (std::abs(family_psi(c, eps, x, y)) > 1e-10 * std::max(f.scale, 1e-300))
                continue;
            const double margin = 1e-7;
            if (f.W / 2 - std::abs(x) < margin * f.W || f.H / 2 - std::abs(y) < margin * f.H)
                continue;
            bool dup = false;
            for (const auto& z : out)
                if (std::hypot(z.p.x - x, z.p.y - y) < 4 * std::min(f.hx, f.hy)) dup = true;
            if (dup) continue;
            // valence from sign changes around a small circle
            const double rho = 2.0 * std::max(f.hx, f.hy);
            int changes = 0;
            double prev = 0.0;
            bool have_prev = false;
            for (int s = 0; s < 64; ++s) {
                const double ang = 2.0 * kPi * s / 64.0;
                const double px = std::clamp(x + rho * std::cos(ang), -f.W / 2, f.W / 2);
                const double py = std::clamp(y + rho * std::sin(ang), -f.H / 2, f.H / 2);
                const double v = family_psi(c, eps, px, py);
                if (std::abs(v) <= 1e-9 * f.scale) continue;
                if (have_prev && (v > 0.0) != (prev > 0.0)) ++changes;
                prev = v;
                have_prev = true;
            }
            out.push_back({{x, y}, changes});
        }
    return out;
}

}  // namespace

NodalSet nodal_contours(FamilyCoeffs c, double eps, int resolution) {
    check_coeffs(c);
    check_eps(eps);
    if (resolution < 16 || resolution > 4096)
        throw std::invalid_argument("resolution out of range [16, 4096]");
    const ScanField f = sample_psi(c, eps, resolution);
    const CrossingGraph g = build_crossings(f);
    NodalSet out;
    out.polylines = chain_polylines(g);
    for (int id : g.boundary_edges) out.boundary_hits.push_back(g.pos.at(id));
    std::sort(out.boundary_hits.begin(), out.boundary_hits.end(),
              [](const Point& l, const Point& r) {
                  return l.x != r.x ? l.x < r.x : l.y < r.y;
              });
    out.interior_critical = interior_gradient_zeros(c, eps, f);
    for (const auto& z : wall_double_zeros(c, eps, f))
        out.boundary_critical.push_back({z.p, z.arcs});
    return out;
}

SignGridLabeling count_nodal_domains(FamilyCoeffs c, double eps, int resolution) {
    check_coeffs(c);
    check_eps(eps);
    if (resolution < 16 || resolution > 4096)
        throw std::invalid_argument("resolution out of range [16, 4096]");
    auto labels_at = [&](int res) {
        const ScanField f = sample_psi(c, eps, res);
        return label_signed_components(res + 1, res + 1, f.psi,
                                       kSignBandRel * f.scale);
    };
    const LabelResult base = labels_at(resolution);
    const LabelResult fine = labels_at(std::min(2 * resolution, 4096));
    SignGridLabeling out;
    out.nx = resolution + 1;
    out.ny = resolution + 1;
    out.labels = base.labels;
    out.domain_count = base.count;
    out.stable = base.count == fine.count;
    return out;
}

CriticalScan interior_critical_scan(FamilyCoeffs c, double eps) {
    check_coeffs(c);
    check_eps(eps);
    const int res = 512;
    const ScanField f = sample_psi(c, eps, res);
    CriticalScan out;
    for (const auto& z : interior_gradient_zeros(c, eps, f))
        out.interior_points.push_back(z.p);
    for (const auto& z : wall_double_zeros(c, eps, f))
        out.boundary_points.push_back({z.p, z.arcs});
    out.exclusion_radius = 6.0 * std::max(f.hx, f.hy);

    // Certified gradient floor on the zero set: sample |grad psi| at every
    // lattice-edge crossing, then subtract a Hessian-Lipschitz correction
    // covering the distance from any zero point to its nearest sample.
    const CrossingGraph g = build_crossings(f);
    double minmag = std::numeric_limits<double>::infinity();
    for (const auto& [id, p] : g.pos) {
        bool excluded = false;
        for (const auto& b : out.boundary_points)
            if (std::hypot(p.x - b.p.x, p.y - b.p.y) < out.exclusion_radius)
                excluded = true;
        for (const auto& b : out.interior_points)
            if (std::hypot(p.x - b.x, p.y - b.y) < out.exclusion_radius)
                excluded = true;
        if (excluded) continue;
        minmag = std::min(minmag, std::hypot(family_psi_dx(c, eps, p.x, p.y),
                                             family_psi_dy(c, eps, p.x, p.y)));
    }
    const double lip = std::max(2.0 * std::abs(c.beta) / (eps * eps),
                                8.0 * std::abs(c.alpha));
    const double diag = std::hypot(f.hx, f.hy);
    if (std::isfinite(minmag))
        out.gradient_lower_bound = minmag - lip * diag;
    else
        out.gradient_lower_bound = 0.0;
    return out;
}

}  // namespace minpart
