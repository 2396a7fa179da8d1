#include "minpart/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace minpart {

Grid Grid::node_lattice(const RectGeometry& geom, int nx, int ny) {
    if (nx < 8 || ny < 8)
        throw std::invalid_argument("grid needs at least 8 nodes per axis");
    Grid g;
    g.mode = GridMode::NodeLattice;
    g.nx = nx;
    g.ny = ny;
    g.a = geom.a;
    g.b = geom.b;
    g.hx = geom.a / (nx + 1);
    g.hy = geom.b / (ny + 1);
    return g;
}

Grid Grid::cell_centered(const RectGeometry& geom, int nx, int ny) {
    if (nx < 8 || ny < 8)
        throw std::invalid_argument("grid needs at least 8 nodes per axis");
    if (nx % 2 || ny % 2)
        throw std::invalid_argument("cell-centered grids need even node counts");
    Grid g;
    g.mode = GridMode::CellCentered;
    g.nx = nx;
    g.ny = ny;
    g.a = geom.a;
    g.b = geom.b;
    g.hx = geom.a / nx;
    g.hy = geom.b / ny;
    return g;
}

Grid Grid::from_target_h(const RectGeometry& geom, double h, GridMode mode,
                         bool force_odd) {
    if (!(h > 0.0)) throw std::invalid_argument("target spacing must be positive");
    if (mode == GridMode::NodeLattice) {
        int nx = std::max(8, static_cast<int>(std::lround(geom.a / h)) - 1);
        int ny = std::max(8, static_cast<int>(std::lround(geom.b / h)) - 1);
        if (force_odd) {
            nx |= 1;
            ny |= 1;
        }
        return node_lattice(geom, nx, ny);
    }
    int nx = static_cast<int>(std::lround(geom.a / h));
    int ny = static_cast<int>(std::lround(geom.b / h));
    nx += nx % 2;
    ny += ny % 2;
    return cell_centered(geom, std::max(8, nx), std::max(8, ny));
}

HalfGrid HalfGrid::from_target_h(double W, double H, double h) {
    if (!(W > 0.0) || !(H > 0.0) || !(h > 0.0))
        throw std::invalid_argument("half-grid dimensions must be positive");
    int n_xi = static_cast<int>(std::lround(W / h)) - 1;
    if (n_xi % 2 == 0) n_xi += 1;
    n_xi = std::max(9, n_xi);
    const int n_eta = std::max(8, static_cast<int>(std::lround(H / h)) - 1);
    HalfGrid g;
    g.n_xi = n_xi;
    g.n_eta = n_eta;
    g.W = W;
    g.H = H;
    g.h_xi = W / (n_xi + 1);
    g.h_eta = H / (n_eta + 1);
    return g;
}

BoundarySpec::Snapped BoundarySpec::snap(const HalfGrid& g) const {
    Snapped s;
    s.neumann.assign(g.n_xi, 0);
    const double tiny = 1e-9 * g.h_xi;
    for (auto [lo, hi] : neumann_intervals) {
        const double lo_c = std::max(lo, -g.W / 2);
        const double hi_c = std::min(hi, g.W / 2);
        if (!(hi_c > lo_c)) continue;
        auto snap_one = [&](double v) {
            // lattice coordinate with the wall at 0 and nodes at 1..n_xi
            long k = std::lround((v + g.W / 2) / g.h_xi);
            k = std::clamp(k, 0L, static_cast<long>(g.n_xi) + 1);
            const double snapped = -g.W / 2 + k * g.h_xi;
            s.max_snap = std::max(s.max_snap, std::abs(snapped - v));
            return snapped;
        };
        const double lo_s = snap_one(lo_c);
        const double hi_s = snap_one(hi_c);
        for (int i = 0; i < g.n_xi; ++i) {
            const double x = g.xi(i);
            if (x > lo_s + tiny && x < hi_s - tiny) s.neumann[i] = 1;
        }
    }
    return s;
}

int DomainMask::count() const {
    int c = 0;
    for (uint8_t v : inside) c += v != 0;
    return c;
}

bool DomainMask::connected(const Grid& g) const {
    if (static_cast<int>(inside.size()) != g.size())
        throw std::invalid_argument("mask size does not match the grid");
    const int total = count();
    if (total == 0) return false;
    int start = 0;
    while (!inside[start]) ++start;
    std::vector<uint8_t> seen(inside.size(), 0);
    std::deque<int> queue{start};
    seen[start] = 1;
    int reached = 1;
    while (!queue.empty()) {
        const int p = queue.front();
        queue.pop_front();
        const int i = p % g.nx, j = p / g.nx;
        const int nbr[4] = {i > 0 ? p - 1 : -1, i + 1 < g.nx ? p + 1 : -1,
                            j > 0 ? p - g.nx : -1, j + 1 < g.ny ? p + g.nx : -1};
        for (int q : nbr) {
            if (q < 0 || seen[q] || !inside[q]) continue;
            seen[q] = 1;
            ++reached;
            queue.push_back(q);
        }
    }
    return reached == total;
}

}  // namespace minpart
