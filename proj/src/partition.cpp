#include "minpart/partition.hpp"

#include "minpart/labeling.hpp"
#include "minpart/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace minpart {

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

const char* topology_name(Partition::Topology t) {
    switch (t) {
        case Partition::Topology::TypeA: return "a";
        case Partition::Topology::TypeB: return "b";
        case Partition::Topology::TypeC: return "c";
        case Partition::Topology::Nodal: return "nodal";
        case Partition::Topology::Other: return "other";
    }
    return "?";
}

namespace {

// Junction candidates: plaquettes whose corners carry >= 3 distinct part
// labels, plus zero-band nodes whose 8-neighborhood does (interfaces running
// along exact-zero node lines hide the meeting from the plaquette test).
struct JunctionMarks {
    std::vector<Point> positions;
};

JunctionMarks junction_marks(const Grid& g, const std::vector<int>& labels) {
    JunctionMarks out;
    auto lab = [&](int i, int j) { return labels[g.id(i, j)]; };
    for (int j = 0; j + 1 < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) {
            std::set<int> s;
            for (int dj = 0; dj <= 1; ++dj)
                for (int di = 0; di <= 1; ++di)
                    if (lab(i + di, j + dj) > 0) s.insert(lab(i + di, j + dj));
            if (s.size() >= 3)
                out.positions.push_back({g.x(i) + g.hx / 2, g.y(j) + g.hy / 2});
        }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (lab(i, j) != 0) continue;
            std::set<int> s;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) continue;
                    if (lab(ii, jj) > 0) s.insert(lab(ii, jj));
                }
            if (s.size() >= 3) out.positions.push_back({g.x(i), g.y(j)});
        }
    return out;
}

std::vector<Point> cluster_points(const std::vector<Point>& pts, double radius) {
    std::vector<Point> centers;
    std::vector<int> assign(pts.size(), -1);
    for (size_t s = 0; s < pts.size(); ++s) {
        if (assign[s] >= 0) continue;
        // grow one cluster by proximity
        std::deque<size_t> queue{s};
        assign[s] = static_cast<int>(centers.size());
        std::vector<size_t> members{s};
        while (!queue.empty()) {
            const size_t p = queue.front();
            queue.pop_front();
            for (size_t q = 0; q < pts.size(); ++q) {
                if (assign[q] >= 0) continue;
                if (std::hypot(pts[p].x - pts[q].x, pts[p].y - pts[q].y) <= radius) {
                    assign[q] = assign[s];
                    members.push_back(q);
                    queue.push_back(q);
                }
            }
        }
        Point c{0.0, 0.0};
        for (size_t m : members) {
            c.x += pts[m].x;
            c.y += pts[m].y;
        }
        c.x /= members.size();
        c.y /= members.size();
        centers.push_back(c);
    }
    return centers;
}

// Label transitions along the lattice ring of Chebyshev radius r around the
// node nearest to c; zero-label runs are skipped, so an interface along a
// zero-node line still counts as one crossing.
int ring_transitions(const Grid& g, const std::vector<int>& labels, Point c, int r) {
    int ci = static_cast<int>(std::lround((c.x + g.a / 2) / g.hx)) - 1;
    int cj = static_cast<int>(std::lround((c.y + g.b / 2) / g.hy)) - 1;
    ci = std::clamp(ci, 0, g.nx - 1);
    cj = std::clamp(cj, 0, g.ny - 1);
    if (ci - r < 0 || ci + r >= g.nx || cj - r < 0 || cj + r >= g.ny) return -1;
    std::vector<int> seq;
    auto push = [&](int i, int j) {
        const int l = labels[g.id(i, j)];
        if (l > 0) seq.push_back(l);
    };
    for (int j = cj - r; j <= cj + r; ++j) push(ci + r, j);
    for (int i = ci + r - 1; i >= ci - r; --i) push(i, cj + r);
    for (int j = cj + r - 1; j >= cj - r; --j) push(ci - r, j);
    for (int i = ci - r + 1; i <= ci + r - 1; ++i) push(i, cj - r);
    if (seq.size() < 2) return 0;
    int transitions = 0;
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        if (seq[i] != seq[i + 1]) ++transitions;
    if (seq.back() != seq.front()) ++transitions;
    return transitions;
}

// Walk the perimeter ring (nodes one step inside each wall) and collect label
// transitions; nearby transitions merge into one boundary point with their
// count as the arc multiplicity.
std::vector<CriticalPoint> boundary_hits(const Grid& g, const std::vector<int>& labels) {
    struct Event {
        Point p;
        double arc;  // position along the ring, in node steps
    };
    std::vector<Event> events;
    std::vector<std::pair<int, int>> ring;
    for (int i = 0; i < g.nx; ++i) ring.push_back({i, 0});
    for (int j = 1; j < g.ny; ++j) ring.push_back({g.nx - 1, j});
    for (int i = g.nx - 2; i >= 0; --i) ring.push_back({i, g.ny - 1});
    for (int j = g.ny - 2; j >= 1; --j) ring.push_back({0, j});
    const int M = static_cast<int>(ring.size());
    int prev_label = 0;
    double prev_arc = 0.0;
    Point prev_pos{0, 0};
    // start from a nonzero label so wrap-around transitions are counted once
    int start = 0;
    while (start < M && labels[g.id(ring[start].first, ring[start].second)] == 0)
        ++start;
    if (start == M) return {};
    for (int t = 0; t <= M; ++t) {
        const auto [i, j] = ring[(start + t) % M];
        const int l = labels[g.id(i, j)];
        if (l == 0) continue;
        const Point pos{g.x(i), g.y(j)};
        if (t > 0 && prev_label != 0 && l != prev_label) {
            Event e;
            e.p = {(pos.x + prev_pos.x) / 2, (pos.y + prev_pos.y) / 2};
            e.arc = (prev_arc + t) / 2;
            events.push_back(e);
        }
        prev_label = l;
        prev_arc = t;
        prev_pos = pos;
    }
    // project onto the nearest wall
    for (auto& e : events) {
        const double dl = e.p.x + g.a / 2, dr = g.a / 2 - e.p.x;
        const double db = e.p.y + g.b / 2, dt = g.b / 2 - e.p.y;
        const double m = std::min({dl, dr, db, dt});
        if (m == dl) e.p.x = -g.a / 2;
        else if (m == dr) e.p.x = g.a / 2;
        else if (m == db) e.p.y = -g.b / 2;
        else e.p.y = g.b / 2;
    }
    std::vector<CriticalPoint> out;
    std::vector<bool> used(events.size(), false);
    for (size_t s = 0; s < events.size(); ++s) {
        if (used[s]) continue;
        std::vector<size_t> group{s};
        used[s] = true;
        for (size_t q = s + 1; q < events.size(); ++q) {
            if (used[q]) continue;
            if (std::abs(events[q].arc - events[s].arc) <= 4.0) {
                used[q] = true;
                group.push_back(q);
            }
        }
        Point c{0, 0};
        for (size_t m : group) {
            c.x += events[m].p.x;
            c.y += events[m].p.y;
        }
        c.x /= group.size();
        c.y /= group.size();
        out.push_back({c, static_cast<int>(group.size())});
    }
    return out;
}

}  // namespace

Partition evaluate_partition(const Grid& g, const std::vector<int>& labels,
                             const std::vector<double>& values, double tol) {
    if (static_cast<int>(labels.size()) != g.size())
        throw std::invalid_argument("label array does not match the grid");
    int parts = 0;
    for (int l : labels) parts = std::max(parts, l);
    if (parts < 1) throw std::invalid_argument("partition has no parts");

    Partition p;
    p.grid = g;
    p.labels = labels;
    p.values = values;
    p.parts = parts;
    p.per_part_lambda.assign(parts, 0.0);

    std::vector<std::string> errors(parts);
    parallel_for(parts, [&](int part) {
        DomainMask mask;
        mask.inside.assign(labels.size(), 0);
        for (size_t q = 0; q < labels.size(); ++q)
            mask.inside[q] = labels[q] == part + 1;
        try {
            const SparseOperator op = assemble_masked(g, mask);
            const auto sp = lowest_eigenpairs(op, 1, tol);
            if (!sp.converged) throw std::runtime_error("eigensolve did not converge");
            p.per_part_lambda[part] = sp.eigenvalues[0];
        } catch (const std::exception& e) {
            errors[part] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error("part evaluation failed: " + e);
    p.lambda_max = *std::max_element(p.per_part_lambda.begin(), p.per_part_lambda.end());

    const auto marks = junction_marks(g, labels);
    const double cluster_r = 2.5 * std::max(g.hx, g.hy);
    for (const Point& c : cluster_points(marks.positions, cluster_r)) {
        int valence = -1;
        for (int r = 3; r <= 6 && valence < 0; ++r)
            valence = ring_transitions(g, labels, c, r);
        p.interior_points.push_back({c, valence});
    }
    p.boundary_points = boundary_hits(g, labels);

    int rho_sum = 0;
    for (const auto& b : p.boundary_points) rho_sum += b.valence;
    if (p.interior_points.empty()) {
        p.topology = Partition::Topology::Nodal;
    } else if (parts == 3 && p.interior_points.size() == 1 &&
               p.interior_points[0].valence == 3 && rho_sum == 3) {
        p.topology = Partition::Topology::TypeA;
    } else if (parts == 3 && p.interior_points.size() == 2) {
        // type b traces its two nodal segments into the short walls at y ~ 0
        int wall_axis_hits = 0;
        for (const auto& b : p.boundary_points)
            if (std::abs(std::abs(b.p.x) - g.a / 2) < 1e-9 &&
                std::abs(b.p.y) <= 3 * g.hy)
                ++wall_axis_hits;
        p.topology = wall_axis_hits >= 2 ? Partition::Topology::TypeB
                                         : Partition::Topology::TypeC;
    } else {
        p.topology = Partition::Topology::Other;
    }
    return p;
}

std::vector<InterfacePoint> interface_points(const Grid& g,
                                             const std::vector<int>& labels,
                                             const std::vector<double>& values) {
    if (static_cast<int>(labels.size()) != g.size())
        throw std::invalid_argument("label array does not match the grid");
    const bool with_values = static_cast<int>(values.size()) == g.size();
    std::vector<InterfacePoint> out;
    auto lab = [&](int i, int j) { return labels[g.id(i, j)]; };
    auto emit = [&](int l0, int l1, Point p) {
        InterfacePoint ip;
        ip.label_lo = std::min(l0, l1);
        ip.label_hi = std::max(l0, l1);
        ip.p = p;
        out.push_back(ip);
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int l = lab(i, j);
            if (l == 0) {
                // interface running through a zero node: take the two labels
                // flanking it
                std::set<int> s;
                const int di[4] = {-1, 1, 0, 0};
                const int dj[4] = {0, 0, -1, 1};
                for (int d = 0; d < 4; ++d) {
                    const int ii = i + di[d], jj = j + dj[d];
                    if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) continue;
                    if (lab(ii, jj) > 0) s.insert(lab(ii, jj));
                }
                if (s.size() == 2)
                    emit(*s.begin(), *std::next(s.begin()), {g.x(i), g.y(j)});
                continue;
            }
            // east and north edges with both labels nonzero and different
            const int nbr[2][2] = {{i + 1, j}, {i, j + 1}};
            for (const auto& nb : nbr) {
                const int ii = nb[0], jj = nb[1];
                if (ii >= g.nx || jj >= g.ny) continue;
                const int l2 = lab(ii, jj);
                if (l2 == 0 || l2 == l) continue;
                Point p{(g.x(i) + g.x(ii)) / 2, (g.y(j) + g.y(jj)) / 2};
                if (with_values) {
                    const double v0 = values[g.id(i, j)], v1 = values[g.id(ii, jj)];
                    if ((v0 > 0) != (v1 > 0) && v0 != v1) {
                        const double t = v0 / (v0 - v1);
                        p = {g.x(i) + t * (g.x(ii) - g.x(i)),
                             g.y(j) + t * (g.y(jj) - g.y(j))};
                    }
                }
                emit(l, l2, p);
            }
        }
    return out;
}

namespace {

struct FitLine {
    Point centroid;
    double dx = 0.0, dy = 0.0;  // unit direction
    int count = 0;
};

FitLine fit_line(const std::vector<Point>& pts) {
    FitLine f;
    f.count = static_cast<int>(pts.size());
    for (const auto& p : pts) {
        f.centroid.x += p.x;
        f.centroid.y += p.y;
    }
    f.centroid.x /= f.count;
    f.centroid.y /= f.count;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : pts) {
        const double ux = p.x - f.centroid.x, uy = p.y - f.centroid.y;
        sxx += ux * ux;
        sxy += ux * uy;
        syy += uy * uy;
    }
    // leading eigenvector of the 2x2 covariance
    const double tr = sxx + syy, det = sxx * syy - sxy * sxy;
    const double l1 = tr / 2 + std::sqrt(std::max(tr * tr / 4 - det, 0.0));
    double vx = sxy, vy = l1 - sxx;
    if (std::hypot(vx, vy) < 1e-30) {
        vx = l1 - syy;
        vy = sxy;
    }
    if (std::hypot(vx, vy) < 1e-30) {
        vx = 1;
        vy = 0;
    }
    const double n = std::hypot(vx, vy);
    f.dx = vx / n;
    f.dy = vy / n;
    return f;
}

}  // namespace

TripleAngles triple_point_angles(const Partition& p) {
    TripleAngles out;
    if (p.interior_points.size() != 1) return out;
    const Grid& g = p.grid;
    const double R = 6.0 * std::max(g.hx, g.hy);
    const auto pts = interface_points(g, p.labels, p.values);
    out.center = p.interior_points[0].p;

    std::vector<FitLine> branches;
    for (int pass = 0; pass < 2; ++pass) {
        std::map<std::pair<int, int>, std::vector<Point>> groups;
        for (const auto& ip : pts) {
            const double d = std::hypot(ip.p.x - out.center.x, ip.p.y - out.center.y);
            if (d > R || d < 0.5 * std::max(g.hx, g.hy)) continue;
            groups[{ip.label_lo, ip.label_hi}].push_back(ip.p);
        }
        branches.clear();
        for (const auto& [pair, gp] : groups)
            if (gp.size() >= 3) branches.push_back(fit_line(gp));
        if (branches.size() < 2) return out;
        // center: least-squares meet of the branch lines
        double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
        for (const auto& f : branches) {
            const double pxx = 1.0 - f.dx * f.dx, pxy = -f.dx * f.dy,
                         pyy = 1.0 - f.dy * f.dy;
            a11 += pxx;
            a12 += pxy;
            a22 += pyy;
            b1 += pxx * f.centroid.x + pxy * f.centroid.y;
            b2 += pxy * f.centroid.x + pyy * f.centroid.y;
        }
        const double det = a11 * a22 - a12 * a12;
        if (std::abs(det) > 1e-12) {
            out.center = {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det};
        }
    }

    for (const auto& f : branches) {
        double dx = f.dx, dy = f.dy;
        if (dx * (f.centroid.x - out.center.x) + dy * (f.centroid.y - out.center.y) < 0) {
            dx = -dx;
            dy = -dy;
        }
        double ang = std::atan2(dy, dx);
        if (ang < 0) ang += 2 * kPi;
        out.branch_angles.push_back(ang);
    }
    std::sort(out.branch_angles.begin(), out.branch_angles.end());
    for (size_t i = 0; i < out.branch_angles.size(); ++i) {
        const double next =
            i + 1 < out.branch_angles.size() ? out.branch_angles[i + 1]
                                             : out.branch_angles[0] + 2 * kPi;
        out.sector_angles.push_back(next - out.branch_angles[i]);
    }

    // wall meeting angles: fit the interface within a strip along each wall
    struct Wall {
        bool vertical;
        double coord;
        double tx, ty;
    };
    const Wall walls[4] = {{true, -g.a / 2, 0, 1},
                           {true, g.a / 2, 0, 1},
                           {false, -g.b / 2, 1, 0},
                           {false, g.b / 2, 1, 0}};
    for (const auto& w : walls) {
        std::map<std::pair<int, int>, std::vector<Point>> groups;
        std::map<std::pair<int, int>, double> closest;
        for (const auto& ip : pts) {
            const double d = w.vertical ? std::abs(ip.p.x - w.coord)
                                        : std::abs(ip.p.y - w.coord);
            if (d > R) continue;
            auto key = std::make_pair(ip.label_lo, ip.label_hi);
            groups[key].push_back(ip.p);
            auto it = closest.find(key);
            if (it == closest.end() || d < it->second) closest[key] = d;
        }
        for (const auto& [key, gp] : groups) {
            if (gp.size() < 3) continue;
            if (closest[key] > 2.0 * std::max(g.hx, g.hy)) continue;  // no hit
            const FitLine f = fit_line(gp);
            const double dot = std::abs(f.dx * w.tx + f.dy * w.ty);
            out.boundary_meeting.push_back(std::acos(std::clamp(dot, 0.0, 1.0)));
        }
    }

    out.ok = branches.size() == 3;
    return out;
}

std::pair<Grid, std::vector<double>> symmetrize_axis(
    const RectGeometry& geom, const HalfGrid& hg,
    const std::vector<std::uint8_t>& neumann, const SparseOperator& op,
    const Eigen::VectorXd& vec) {
    if (static_cast<int>(neumann.size()) != hg.n_xi)
        throw std::invalid_argument("neumann flags do not match the half grid");
    const Grid full = Grid::node_lattice(geom, hg.n_xi, 2 * hg.n_eta + 1);
    if (std::abs(full.hy - hg.h_eta) > 1e-12 * hg.h_eta)
        throw std::invalid_argument("half grid is not the even sector of this lattice");
    std::vector<double> values(full.size(), 0.0);
    const int c = hg.n_eta;  // centre row of the full lattice
    for (int p = 0; p < op.dim(); ++p) {
        const auto [i, j] = op.nodes[p];
        const double phys = op.weight_sqrt.empty() ? vec(p) : vec(p) / op.weight_sqrt[p];
        values[full.id(i, c + j)] = phys;
        if (j > 0) values[full.id(i, c - j)] = phys;
    }
    // Dirichlet nodes on the centre row stay exactly zero, so the sign flood
    // fill cannot leak between the mirror copies across the nodal segment.
    return {full, values};
}

std::vector<double> symmetrize_diagonal(const Grid& g, const DiagonalSpec& spec,
                                        const SparseOperator& op,
                                        const Eigen::VectorXd& vec) {
    if (g.nx != g.ny) throw std::invalid_argument("diagonal mirror needs a square grid");
    std::vector<double> values(g.size(), 0.0);
    const int n = g.nx;
    const bool main_diag =
        spec.half == DiagonalHalf::MainUpper || spec.half == DiagonalHalf::MainLower;
    for (int p = 0; p < op.dim(); ++p) {
        const auto [i, j] = op.nodes[p];
        const double phys = op.weight_sqrt.empty() ? vec(p) : vec(p) / op.weight_sqrt[p];
        values[g.id(i, j)] = phys;
        const int mi = main_diag ? j : n - 1 - j;
        const int mj = main_diag ? i : n - 1 - i;
        values[g.id(mi, mj)] = phys;
    }
    return values;
}

namespace {

struct PointLabels {
    std::vector<int> labels;
    int parts = 0;
};

PointLabels label_field(const Grid& g, const std::vector<double>& values) {
    const double band = kSignBandRel * max_abs(values);
    const LabelResult lr = label_signed_components(g.nx, g.ny, values, band);
    return {lr.labels, lr.count};
}

struct CandidateOutcome {
    SweepPoint point;
    int pick = 1;  // 1 -> u2, 2 -> u3
};

// Shared feasibility logic: symmetrize the second eigenfunction, count parts,
// and fall back to the third one across a near-degenerate gap.
template <typename Symmetrize>
CandidateOutcome judge_candidate(const SpectrumResult& sp, Symmetrize&& symm) {
    CandidateOutcome out;
    out.point.lambda1 = sp.eigenvalues[0];
    out.point.lambda2 = sp.eigenvalues[1];
    out.point.lambda3 = sp.eigenvalues[2];
    const auto [grid2, values2] = symm(1);
    const PointLabels pl2 = label_field(grid2, values2);
    out.point.parts = pl2.parts;
    out.point.energy = sp.eigenvalues[1];
    out.point.feasible = pl2.parts == 3;
    if (!out.point.feasible &&
        sp.eigenvalues[2] - sp.eigenvalues[1] <= 1e-3 * sp.eigenvalues[1]) {
        const auto [grid3, values3] = symm(2);
        const PointLabels pl3 = label_field(grid3, values3);
        if (pl3.parts == 3) {
            out.point.parts = pl3.parts;
            // the pair is one level at this resolution; lambda2 is its value
            out.point.energy = sp.eigenvalues[1];
            out.point.feasible = true;
            out.point.degenerate_pick = true;
            out.pick = 2;
        }
    }
    return out;
}

}  // namespace

SweepResult dn_sweep(double eps, char type, double target_h, int sweep_resolution,
                     double tol) {
    if (type != 'a' && type != 'b' && type != 'c')
        throw std::invalid_argument("sweep type must be one of a, b, c");
    if (sweep_resolution < 3) throw std::invalid_argument("sweep resolution too small");
    const RectGeometry geom = RectGeometry::from_epsilon(eps);
    const HalfGrid hg = HalfGrid::from_target_h(geom.a, geom.b / 2, target_h);
    const int slots = hg.n_xi + 2;  // walls plus every junction node
    auto slot_x = [&](int m) { return -geom.a / 2 + m * hg.h_xi; };

    std::vector<int> coarse;
    const int res = std::min(sweep_resolution, slots);
    for (int t = 0; t < res; ++t) {
        const int m = static_cast<int>(
            std::lround(static_cast<double>(t) * (slots - 1) / (res - 1)));
        if (coarse.empty() || coarse.back() != m) coarse.push_back(m);
    }

    struct Job {
        int m0, m1;
    };
    std::vector<Job> jobs;
    if (type == 'a') {
        for (int m : coarse) jobs.push_back({m, slots - 1});
    } else {
        for (size_t i = 0; i < coarse.size(); ++i)
            for (size_t j = i + 1; j < coarse.size(); ++j)
                jobs.push_back({coarse[i], coarse[j]});
    }

    auto solve_job = [&](const Job& job) {
        BoundarySpec bc;
        const double x0 = slot_x(job.m0), x1 = slot_x(job.m1);
        if (type == 'a') bc = BoundarySpec::type_a(x0);
        else if (type == 'b') bc = BoundarySpec::type_b(x0, x1);
        else bc = BoundarySpec::type_c(x0, x1);
        const SparseOperator op = assemble_mixed(hg, bc);
        const auto sp = lowest_eigenpairs(op, 3, tol);
        if (!sp.converged) throw std::runtime_error("sweep eigensolve did not converge");
        auto outcome = judge_candidate(sp, [&](int col) {
            return symmetrize_axis(geom, hg, bc.snap(hg).neumann, op,
                                   Eigen::VectorXd(sp.eigenvectors.col(col)));
        });
        outcome.point.x0 = x0;
        outcome.point.x1 = type == 'a' ? geom.a / 2 : x1;
        return outcome.point;
    };

    SweepResult out;
    out.type = type;
    out.eps = eps;
    out.h = hg.h_xi;
    out.points.resize(jobs.size());
    parallel_for(static_cast<int>(jobs.size()),
                 [&](int idx) { out.points[idx] = solve_job(jobs[idx]); });

    auto better = [](const SweepPoint& l, const SweepPoint& r) {
        if (l.feasible != r.feasible) return l.feasible;
        return l.energy < r.energy;
    };

    if (type == 'a') {
        // local pass at full node resolution around the coarse argmin
        int best = -1;
        for (size_t i = 0; i < out.points.size(); ++i)
            if (out.points[i].feasible &&
                (best < 0 || better(out.points[i], out.points[best])))
                best = static_cast<int>(i);
        if (best >= 0) {
            const int stride = std::max(1, (slots - 1) / std::max(res - 1, 1));
            const int m_best =
                static_cast<int>(std::lround((out.points[best].x0 + geom.a / 2) / hg.h_xi));
            std::set<int> have;
            for (const auto& p : out.points)
                have.insert(static_cast<int>(std::lround((p.x0 + geom.a / 2) / hg.h_xi)));
            std::vector<Job> fine;
            for (int m = std::max(0, m_best - stride);
                 m <= std::min(slots - 1, m_best + stride); ++m)
                if (!have.count(m)) fine.push_back({m, slots - 1});
            std::vector<SweepPoint> extra(fine.size());
            parallel_for(static_cast<int>(fine.size()),
                         [&](int idx) { extra[idx] = solve_job(fine[idx]); });
            out.points.insert(out.points.end(), extra.begin(), extra.end());
        }
        std::sort(out.points.begin(), out.points.end(),
                  [](const SweepPoint& l, const SweepPoint& r) { return l.x0 < r.x0; });
    }

    for (size_t i = 0; i < out.points.size(); ++i)
        if (out.points[i].feasible &&
            (out.argmin < 0 || better(out.points[i], out.points[out.argmin])))
            out.argmin = static_cast<int>(i);
    out.found = out.argmin >= 0;
    if (!out.found) return out;

    const SweepPoint& bestp = out.points[out.argmin];
    out.x0_refined = bestp.x0;
    out.energy_refined = bestp.energy;
    if (type == 'a' && out.argmin > 0 &&
        out.argmin + 1 < static_cast<int>(out.points.size())) {
        const SweepPoint& lft = out.points[out.argmin - 1];
        const SweepPoint& rgt = out.points[out.argmin + 1];
        const bool adjacent =
            std::abs(lft.x0 - (bestp.x0 - hg.h_xi)) < 1e-9 * hg.h_xi &&
            std::abs(rgt.x0 - (bestp.x0 + hg.h_xi)) < 1e-9 * hg.h_xi;
        if (adjacent && lft.feasible && rgt.feasible) {
            const double em = lft.energy, e0 = bestp.energy, ep = rgt.energy;
            const double denom = em - 2 * e0 + ep;
            if (denom > 0 && em >= e0 && ep >= e0) {
                double delta = 0.5 * (em - ep) / denom * hg.h_xi;
                delta = std::clamp(delta, -hg.h_xi / 2, hg.h_xi / 2);
                out.x0_refined = bestp.x0 + delta;
                out.energy_refined =
                    e0 - 0.125 * (em - ep) * (em - ep) / denom;
            }
        }
    }

    // evaluate the winning partition on the full lattice
    {
        BoundarySpec bc;
        if (type == 'a') bc = BoundarySpec::type_a(bestp.x0);
        else if (type == 'b') bc = BoundarySpec::type_b(bestp.x0, bestp.x1);
        else bc = BoundarySpec::type_c(bestp.x0, bestp.x1);
        const SparseOperator op = assemble_mixed(hg, bc);
        const auto sp = lowest_eigenpairs(op, 3, tol);
        const int col = bestp.degenerate_pick ? 2 : 1;
        const auto [full, values] = symmetrize_axis(
            geom, hg, bc.snap(hg).neumann, op, Eigen::VectorXd(sp.eigenvectors.col(col)));
        const PointLabels pl = label_field(full, values);
        out.best = evaluate_partition(full, pl.labels, values, tol);
    }
    return out;
}

SweepResult diagonal_search(double target_h, int sweep_resolution, double tol) {
    if (sweep_resolution < 3) throw std::invalid_argument("sweep resolution too small");
    const RectGeometry geom = RectGeometry::from_epsilon(1.0);
    const Grid g = Grid::from_target_h(geom, target_h, GridMode::NodeLattice, true);
    const int n = g.nx;
    const double step = std::sqrt(2.0) * g.hx;
    // junction slots: one past the lower corner (all Neumann) through every
    // hypotenuse node to the upper corner (all Dirichlet)
    const int slots = n + 1;
    auto slot_s = [&](int m) {
        return std::sqrt(2.0) * (-geom.a / 2 + m * g.hx);
    };

    std::vector<int> coarse;
    const int res = std::min(sweep_resolution, slots);
    for (int t = 0; t < res; ++t) {
        const int m = static_cast<int>(
            std::lround(static_cast<double>(t) * (slots - 1) / (res - 1)));
        if (coarse.empty() || coarse.back() != m) coarse.push_back(m);
    }

    auto solve_slot = [&](int m) {
        DiagonalSpec spec;
        spec.half = DiagonalHalf::MainUpper;
        spec.s0 = slot_s(m);
        const SparseOperator op = assemble_diagonal_mixed(g, spec);
        const auto sp = lowest_eigenpairs(op, 3, tol);
        if (!sp.converged) throw std::runtime_error("sweep eigensolve did not converge");
        auto outcome = judge_candidate(sp, [&](int col) {
            return std::make_pair(g, symmetrize_diagonal(
                                         g, spec, op,
                                         Eigen::VectorXd(sp.eigenvectors.col(col))));
        });
        outcome.point.x0 = spec.s0;
        outcome.point.x1 = slot_s(slots - 1);
        return outcome.point;
    };

    SweepResult out;
    out.type = 'd';
    out.eps = 1.0;
    out.diagonal = true;
    out.h = step;
    out.points.resize(coarse.size());
    parallel_for(static_cast<int>(coarse.size()),
                 [&](int idx) { out.points[idx] = solve_slot(coarse[idx]); });

    auto better = [](const SweepPoint& l, const SweepPoint& r) {
        if (l.feasible != r.feasible) return l.feasible;
        return l.energy < r.energy;
    };
    auto slot_of = [&](double s) {
        return static_cast<int>(std::lround(s / step + 0.5 * (n + 1)));
    };
    int best = -1;
    for (size_t i = 0; i < out.points.size(); ++i)
        if (out.points[i].feasible &&
            (best < 0 || better(out.points[i], out.points[best])))
            best = static_cast<int>(i);
    if (best >= 0) {
        const int stride = std::max(1, (slots - 1) / std::max(res - 1, 1));
        const int m_best = slot_of(out.points[best].x0);
        std::set<int> have;
        for (const auto& p : out.points) have.insert(slot_of(p.x0));
        std::vector<int> fine;
        for (int m = std::max(0, m_best - stride);
             m <= std::min(slots - 1, m_best + stride); ++m)
            if (!have.count(m)) fine.push_back(m);
        std::vector<SweepPoint> extra(fine.size());
        parallel_for(static_cast<int>(fine.size()),
                     [&](int idx) { extra[idx] = solve_slot(fine[idx]); });
        out.points.insert(out.points.end(), extra.begin(), extra.end());
        std::sort(out.points.begin(), out.points.end(),
                  [](const SweepPoint& l, const SweepPoint& r) { return l.x0 < r.x0; });
    }

    for (size_t i = 0; i < out.points.size(); ++i)
        if (out.points[i].feasible &&
            (out.argmin < 0 || better(out.points[i], out.points[out.argmin])))
            out.argmin = static_cast<int>(i);
    out.found = out.argmin >= 0;
    if (!out.found) return out;

    const SweepPoint& bestp = out.points[out.argmin];
    out.x0_refined = bestp.x0;
    out.energy_refined = bestp.energy;
    if (out.argmin > 0 && out.argmin + 1 < static_cast<int>(out.points.size())) {
        const SweepPoint& lft = out.points[out.argmin - 1];
        const SweepPoint& rgt = out.points[out.argmin + 1];
        const bool adjacent = std::abs(lft.x0 - (bestp.x0 - step)) < 1e-9 * step &&
                              std::abs(rgt.x0 - (bestp.x0 + step)) < 1e-9 * step;
        if (adjacent && lft.feasible && rgt.feasible) {
            const double em = lft.energy, e0 = bestp.energy, ep = rgt.energy;
            const double denom = em - 2 * e0 + ep;
            if (denom > 0 && em >= e0 && ep >= e0) {
                double delta = 0.5 * (em - ep) / denom * step;
                delta = std::clamp(delta, -step / 2, step / 2);
                out.x0_refined = bestp.x0 + delta;
                out.energy_refined = e0 - 0.125 * (em - ep) * (em - ep) / denom;
            }
        }
    }

    {
        DiagonalSpec spec;
        spec.half = DiagonalHalf::MainUpper;
        spec.s0 = bestp.x0;
        const SparseOperator op = assemble_diagonal_mixed(g, spec);
        const auto sp = lowest_eigenpairs(op, 3, tol);
        const int col = bestp.degenerate_pick ? 2 : 1;
        const auto values = symmetrize_diagonal(
            g, spec, op, Eigen::VectorXd(sp.eigenvectors.col(col)));
        const PointLabels pl = label_field(g, values);
        out.best = evaluate_partition(g, pl.labels, values, tol);
    }
    return out;
}

std::vector<double> transition_schedule() {
    const double crit = std::sqrt(3.0 / 8.0);
    std::vector<double> eps;
    for (double t : {0.0, 2.0, 3.45, 7.0, 11.0, 15.0, 20.0})
        eps.push_back((1.0 - t / 20.0) * crit + t / 20.0);
    return eps;
}

std::vector<TransitionRow> transition_study(const std::vector<double>& eps_schedule,
                                            double target_h, int sweep_resolution,
                                            double tol) {
    if (eps_schedule.empty()) throw std::invalid_argument("empty schedule");
    std::vector<TransitionRow> rows;
    const double crit = std::sqrt(3.0 / 8.0);
    for (double eps : eps_schedule) {
        const SweepResult sw = dn_sweep(eps, 'a', target_h, sweep_resolution, tol);
        TransitionRow row;
        row.eps = eps;
        row.feasible = sw.found;
        row.bound = 9.0 + 1.0 / (eps * eps);
        if (sw.found) {
            row.x0 = sw.x0_refined;
            row.x0_scaled = sw.x0_refined / eps;
            row.energy = sw.energy_refined;
            row.lambda_max = sw.best.lambda_max;
            row.strict_below = eps > crit + 1e-12 && row.lambda_max < row.bound;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace minpart
