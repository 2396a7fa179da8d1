#include "minpart/assemble.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace minpart {

namespace {

using Triplet = Eigen::Triplet<double>;

void finalize(SparseOperator& op, std::vector<Triplet>& triplets,
              std::vector<double>& weights) {
    const int n = static_cast<int>(op.nodes.size());
    bool any_weight = false;
    for (double w : weights)
        if (w != 1.0) any_weight = true;
    if (any_weight) {
        op.weight_sqrt.resize(n);
        for (int p = 0; p < n; ++p) op.weight_sqrt[p] = std::sqrt(weights[p]);
        for (auto& t : triplets) {
            const double v =
                t.value() / (op.weight_sqrt[t.row()] * op.weight_sqrt[t.col()]);
            t = Triplet(t.row(), t.col(), v);
        }
    }
    op.matrix.resize(n, n);
    op.matrix.setFromTriplets(triplets.begin(), triplets.end());
    op.matrix.makeCompressed();
}

}  // namespace

void SparseOperator::write_coordinate(std::ostream& os) const {
    char buf[96];
    for (int k = 0; k < matrix.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, k); it; ++it) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n",
                          static_cast<int>(it.row()), static_cast<int>(it.col()),
                          it.value());
            os << buf;
        }
}

SparseOperator assemble_dirichlet(const Grid& g) {
    if (g.mode != GridMode::NodeLattice)
        throw std::invalid_argument("dirichlet assembly expects the node lattice");
    SparseOperator op;
    op.grid_mode = g.mode;
    op.grid_nx = g.nx;
    op.grid_ny = g.ny;
    op.hx = g.hx;
    op.hy = g.hy;
    op.family = "dirichlet";
    op.node_index.assign(g.size(), 0);
    op.nodes.reserve(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            op.node_index[g.id(i, j)] = static_cast<int>(op.nodes.size());
            op.nodes.push_back({i, j});
        }
    const double cx = 1.0 / (g.hx * g.hx), cy = 1.0 / (g.hy * g.hy);
    std::vector<Triplet> triplets;
    triplets.reserve(5 * op.nodes.size());
    for (int p = 0; p < static_cast<int>(op.nodes.size()); ++p) {
        const auto [i, j] = op.nodes[p];
        triplets.emplace_back(p, p, 2.0 * cx + 2.0 * cy);
        if (i > 0) triplets.emplace_back(p, op.index_of(i - 1, j), -cx);
        if (i + 1 < g.nx) triplets.emplace_back(p, op.index_of(i + 1, j), -cx);
        if (j > 0) triplets.emplace_back(p, op.index_of(i, j - 1), -cy);
        if (j + 1 < g.ny) triplets.emplace_back(p, op.index_of(i, j + 1), -cy);
    }
    std::vector<double> weights(op.nodes.size(), 1.0);
    finalize(op, triplets, weights);
    return op;
}

double discrete_dirichlet_eigenvalue(const Grid& g, ModeIndex mode) {
    if (mode.m < 1 || mode.m > g.nx || mode.n < 1 || mode.n > g.ny)
        throw std::invalid_argument("mode index outside the discrete range");
    constexpr double kPi = 3.14159265358979323846;
    const double sx = std::sin(mode.m * kPi * g.hx / (2.0 * g.a));
    const double sy = std::sin(mode.n * kPi * g.hy / (2.0 * g.b));
    return 4.0 * sx * sx / (g.hx * g.hx) + 4.0 * sy * sy / (g.hy * g.hy);
}

SparseOperator assemble_mixed(const HalfGrid& g, const BoundarySpec& bc) {
    const auto snapped = bc.snap(g);
    SparseOperator op;
    op.grid_mode = GridMode::NodeLattice;
    op.grid_nx = g.n_xi;
    op.grid_ny = g.rows();
    op.hx = g.h_xi;
    op.hy = g.h_eta;
    op.family = "mixed";
    op.snap_distance = snapped.max_snap;
    op.node_index.assign(static_cast<size_t>(g.n_xi) * g.rows(), -1);
    for (int j = 0; j <= g.n_eta; ++j)
        for (int i = 0; i < g.n_xi; ++i) {
            if (j == 0 && !snapped.neumann[i]) continue;
            op.node_index[j * g.n_xi + i] = static_cast<int>(op.nodes.size());
            op.nodes.push_back({i, j});
        }
    const double cx = 1.0 / (g.h_xi * g.h_xi), cy = 1.0 / (g.h_eta * g.h_eta);
    std::vector<Triplet> triplets;
    triplets.reserve(5 * op.nodes.size());
    std::vector<double> weights(op.nodes.size(), 1.0);
    for (int p = 0; p < static_cast<int>(op.nodes.size()); ++p) {
        const auto [i, j] = op.nodes[p];
        // the mixed edge carries half mass and half-weight horizontal edges
        const double wrow = j == 0 ? 0.5 : 1.0;
        if (j == 0) weights[p] = 0.5;
        double diag = 2.0 * wrow * cx;
        for (int di = -1; di <= 1; di += 2) {
            const int ii = i + di;
            if (ii < 0 || ii >= g.n_xi) continue;  // wall: keep diag term only
            const int q = op.index_of(ii, j);
            if (q >= 0) triplets.emplace_back(p, q, -wrow * cx);
        }
        diag += cy;  // north edge always exists (neighbor row or the far wall)
        if (j + 1 <= g.n_eta) triplets.emplace_back(p, op.index_of(i, j + 1), -cy);
        if (j > 0) {
            diag += cy;
            const int q = op.index_of(i, j - 1);
            if (q >= 0) triplets.emplace_back(p, q, -cy);
        }
        triplets.emplace_back(p, p, diag);
    }
    finalize(op, triplets, weights);
    return op;
}

SparseOperator assemble_masked(const Grid& g, const DomainMask& mask) {
    if (static_cast<int>(mask.inside.size()) != g.size())
        throw std::invalid_argument("mask size does not match the grid");
    if (mask.count() == 0) throw std::invalid_argument("mask is empty");
    if (!mask.connected(g)) throw std::invalid_argument("mask is not connected");
    SparseOperator op;
    op.grid_mode = g.mode;
    op.grid_nx = g.nx;
    op.grid_ny = g.ny;
    op.hx = g.hx;
    op.hy = g.hy;
    op.family = "masked";
    op.node_index.assign(g.size(), -1);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (mask.inside[g.id(i, j)]) {
                op.node_index[g.id(i, j)] = static_cast<int>(op.nodes.size());
                op.nodes.push_back({i, j});
            }
    const double cx = 1.0 / (g.hx * g.hx), cy = 1.0 / (g.hy * g.hy);
    const bool offset = g.mode == GridMode::CellCentered;
    std::vector<Triplet> triplets;
    triplets.reserve(5 * op.nodes.size());
    for (int p = 0; p < static_cast<int>(op.nodes.size()); ++p) {
        const auto [i, j] = op.nodes[p];
        double diag = 0.0;
        const int di[4] = {-1, 1, 0, 0};
        const int dj[4] = {0, 0, -1, 1};
        for (int d = 0; d < 4; ++d) {
            const double c = d < 2 ? cx : cy;
            const int ii = i + di[d], jj = j + dj[d];
            if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) {
                // wall: odd ghost at h/2 on the offset grid, on-lattice zero
                // on the node lattice
                diag += offset ? 2.0 * c : c;
                continue;
            }
            diag += c;
            const int q = op.index_of(ii, jj);
            if (q >= 0) triplets.emplace_back(p, q, -c);
        }
        triplets.emplace_back(p, p, diag);
    }
    std::vector<double> weights(op.nodes.size(), 1.0);
    finalize(op, triplets, weights);
    return op;
}

namespace {

int ab_edge_sign(const Grid& g, const CutSpec& cut, int i0, int j0, int i1, int j1) {
    if (cut.path == CutPath::LeftHorizontal) {
        // vertical edges crossing {y = 0, x < 0}
        if (i0 == i1 && std::min(j0, j1) == g.ny / 2 - 1 && i0 < g.nx / 2) return -1;
    } else {
        // horizontal edges crossing {x = 0, y < 0}
        if (j0 == j1 && std::min(i0, i1) == g.nx / 2 - 1 && j0 < g.ny / 2) return -1;
    }
    return 1;
}

}  // namespace

SparseOperator assemble_ab(const Grid& g, const CutSpec& cut) {
    if (g.mode != GridMode::CellCentered)
        throw std::invalid_argument("ab assembly expects the offset grid");
    if (g.nx % 2 || g.ny % 2)
        throw std::invalid_argument("ab assembly needs even node counts");
    if (std::abs(g.hx - g.hy) > 1e-12 * g.hx)
        throw std::invalid_argument("ab assembly needs uniform spacing");
    SparseOperator op;
    op.grid_mode = g.mode;
    op.grid_nx = g.nx;
    op.grid_ny = g.ny;
    op.hx = g.hx;
    op.hy = g.hy;
    op.family = "ab";
    op.magnetic = true;
    op.node_index.assign(g.size(), 0);
    op.nodes.reserve(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            op.node_index[g.id(i, j)] = static_cast<int>(op.nodes.size());
            op.nodes.push_back({i, j});
        }
    const double c = 1.0 / (g.hx * g.hx);
    std::vector<Triplet> triplets;
    triplets.reserve(5 * op.nodes.size());
    for (int p = 0; p < static_cast<int>(op.nodes.size()); ++p) {
        const auto [i, j] = op.nodes[p];
        double diag = 0.0;
        const int di[4] = {-1, 1, 0, 0};
        const int dj[4] = {0, 0, -1, 1};
        for (int d = 0; d < 4; ++d) {
            const int ii = i + di[d], jj = j + dj[d];
            if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) {
                diag += 2.0 * c;
                continue;
            }
            diag += c;
            const int s = ab_edge_sign(g, cut, i, j, ii, jj);
            triplets.emplace_back(p, op.index_of(ii, jj), -s * c);
        }
        triplets.emplace_back(p, p, diag);
    }
    std::vector<double> weights(op.nodes.size(), 1.0);
    finalize(op, triplets, weights);
    return op;
}

int ab_plaquette_holonomy(const Grid& g, const CutSpec& cut, int i, int j) {
    if (g.mode != GridMode::CellCentered)
        throw std::invalid_argument("holonomy expects the offset grid");
    if (i < 0 || i + 1 >= g.nx || j < 0 || j + 1 >= g.ny)
        throw std::invalid_argument("plaquette index out of range");
    int s = 1;
    s *= ab_edge_sign(g, cut, i, j, i + 1, j);
    s *= ab_edge_sign(g, cut, i + 1, j, i + 1, j + 1);
    s *= ab_edge_sign(g, cut, i, j + 1, i + 1, j + 1);
    s *= ab_edge_sign(g, cut, i, j, i, j + 1);
    return s;
}

SparseOperator assemble_diagonal_mixed(const Grid& g, const DiagonalSpec& spec) {
    if (g.mode != GridMode::NodeLattice)
        throw std::invalid_argument("diagonal assembly expects the node lattice");
    if (g.nx != g.ny || std::abs(g.a - g.b) > 1e-12 * g.b)
        throw std::invalid_argument("diagonal halves are defined on the square");
    const int n = g.nx;
    const double h = g.hx;
    const double sq2 = std::sqrt(2.0);

    auto inside = [&](int i, int j) {
        switch (spec.half) {
            case DiagonalHalf::MainUpper: return i < j;
            case DiagonalHalf::MainLower: return i > j;
            case DiagonalHalf::AntiLower: return i + j < n - 1;
            case DiagonalHalf::AntiUpper: return i + j > n - 1;
        }
        return false;
    };
    const bool main_diag =
        spec.half == DiagonalHalf::MainUpper || spec.half == DiagonalHalf::MainLower;

    // hypotenuse node k sits at arc position sq2 * x(k); snap the junction to
    // the nearest node slot (one past either corner means all-N / all-D)
    const double s_lo = sq2 * (-g.a / 2), s_hi = sq2 * (g.a / 2);
    const double s_clamped = std::clamp(spec.s0, s_lo, s_hi);
    long k0 = std::lround((s_clamped / sq2 + g.a / 2) / h) - 1;
    k0 = std::clamp(k0, -1L, static_cast<long>(n));
    const double snapped_s = sq2 * (-g.a / 2 + (k0 + 1) * h);
    auto diag_neumann = [&](int k) { return k > k0; };

    SparseOperator op;
    op.grid_mode = g.mode;
    op.grid_nx = g.nx;
    op.grid_ny = g.ny;
    op.hx = g.hx;
    op.hy = g.hy;
    op.family = "diagonal";
    op.snap_distance = std::abs(snapped_s - s_clamped);
    op.node_index.assign(g.size(), -1);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const bool diag_node = main_diag ? i == j : i + j == n - 1;
            const int k = i;
            if (inside(i, j) || (diag_node && diag_neumann(k))) {
                op.node_index[g.id(i, j)] = static_cast<int>(op.nodes.size());
                op.nodes.push_back({i, j});
            }
        }
    if (op.nodes.empty()) throw std::invalid_argument("empty diagonal half grid");

    const double c = 1.0 / (h * h);
    std::vector<Triplet> triplets;
    triplets.reserve(5 * op.nodes.size());
    std::vector<double> weights(op.nodes.size(), 1.0);
    for (int p = 0; p < static_cast<int>(op.nodes.size()); ++p) {
        const auto [i, j] = op.nodes[p];
        const bool diag_node = main_diag ? i == j : i + j == n - 1;
        if (!diag_node) {
            triplets.emplace_back(p, p, 4.0 * c);
            const int di[4] = {-1, 1, 0, 0};
            const int dj[4] = {0, 0, -1, 1};
            for (int d = 0; d < 4; ++d) {
                const int ii = i + di[d], jj = j + dj[d];
                if (ii < 0 || ii >= n || jj < 0 || jj >= n) continue;
                const int q = op.index_of(ii, jj);
                if (q >= 0) triplets.emplace_back(p, q, -c);
            }
            continue;
        }
        // hypotenuse node: only the two in-half edges survive the even
        // restriction of the square form, and the node carries half mass
        weights[p] = 0.5;
        triplets.emplace_back(p, p, 2.0 * c);
        int nbr[2][2];
        switch (spec.half) {
            case DiagonalHalf::MainUpper:
                nbr[0][0] = i - 1; nbr[0][1] = j;
                nbr[1][0] = i;     nbr[1][1] = j + 1;
                break;
            case DiagonalHalf::MainLower:
                nbr[0][0] = i + 1; nbr[0][1] = j;
                nbr[1][0] = i;     nbr[1][1] = j - 1;
                break;
            case DiagonalHalf::AntiLower:
                nbr[0][0] = i - 1; nbr[0][1] = j;
                nbr[1][0] = i;     nbr[1][1] = j - 1;
                break;
            case DiagonalHalf::AntiUpper:
            default:
                nbr[0][0] = i + 1; nbr[0][1] = j;
                nbr[1][0] = i;     nbr[1][1] = j + 1;
                break;
        }
        for (auto& nb : nbr) {
            const int ii = nb[0], jj = nb[1];
            if (ii < 0 || ii >= n || jj < 0 || jj >= n) continue;  // corner wall
            const int q = op.index_of(ii, jj);
            if (q >= 0) triplets.emplace_back(p, q, -c);
        }
    }
    finalize(op, triplets, weights);
    return op;
}

}  // namespace minpart
