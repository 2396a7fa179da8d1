#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "minpart/geometry.hpp"

namespace minpart {

enum class GridMode {
    NodeLattice,   // nodes at -L/2 + (i+1)h, h = L/(n+1); walls on the lattice
    CellCentered,  // nodes at -L/2 + (i+1/2)h, h = L/n; n even, axes between nodes
};

// Uniform tensor grid over the full rectangle.
struct Grid {
    GridMode mode = GridMode::NodeLattice;
    int nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;
    double a = 0.0, b = 0.0;

    double x(int i) const {
        return mode == GridMode::NodeLattice ? -0.5 * a + (i + 1) * hx
                                             : -0.5 * a + (i + 0.5) * hx;
    }
    double y(int j) const {
        return mode == GridMode::NodeLattice ? -0.5 * b + (j + 1) * hy
                                             : -0.5 * b + (j + 0.5) * hy;
    }
    int size() const { return nx * ny; }
    int id(int i, int j) const { return j * nx + i; }

    static Grid node_lattice(const RectGeometry& geom, int nx, int ny);
    static Grid cell_centered(const RectGeometry& geom, int nx, int ny);
    // Nearest node counts for a target spacing. force_odd applies to the node
    // lattice when a node is required on x=0 / y=0 (symmetry-line problems).
    static Grid from_target_h(const RectGeometry& geom, double h, GridMode mode,
                              bool force_odd = false);
};

// Half-domain grid in frame coordinates: xi runs along the symmetry line
// (the edge carrying the mixed condition, at eta = 0), eta into the domain.
// xi nodes: -W/2 + (i+1) h_xi, i = 0..n_xi-1, with n_xi odd so xi = 0 is a node.
// eta rows: j*h_eta, j = 0..n_eta (row 0 is the mixed edge, wall at eta = H).
struct HalfGrid {
    int n_xi = 0, n_eta = 0;
    double h_xi = 0.0, h_eta = 0.0;
    double W = 0.0, H = 0.0;

    double xi(int i) const { return -0.5 * W + (i + 1) * h_xi; }
    double eta(int j) const { return j * h_eta; }
    int rows() const { return n_eta + 1; }

    static HalfGrid from_target_h(double W, double H, double h);
};

// Condition on the eta=0 edge: Dirichlet outside the Neumann intervals.
// Interval endpoints snap to the nearest xi node (or wall); nodes at snapped
// endpoints stay Dirichlet, so junctions are Dirichlet points.
struct BoundarySpec {
    std::vector<std::pair<double, double>> neumann_intervals;

    static BoundarySpec all_dirichlet() { return {}; }
    static BoundarySpec type_a(double x0) { return {{{x0, 1e300}}}; }
    static BoundarySpec type_b(double x0, double x1) { return {{{x0, x1}}}; }
    static BoundarySpec type_c(double x0, double x1) {
        return {{{-1e300, x0}, {x1, 1e300}}};
    }
    // Prop.-style half split: Neumann on ]0, W/2].
    static BoundarySpec half_split() { return type_a(0.0); }

    struct Snapped {
        std::vector<uint8_t> neumann;  // per xi node
        double max_snap = 0.0;         // largest endpoint move
    };
    Snapped snap(const HalfGrid& g) const;
};

enum class CutPath {
    LeftHorizontal,  // {(x, 0): x < 0}
    DownVertical,    // {(0, y): y < 0}
};

struct CutSpec {
    CutPath path = CutPath::LeftHorizontal;
};

// Diagonal half-domains of the square (node lattice, nx == ny).
enum class DiagonalHalf {
    MainUpper,  // {y > x}
    MainLower,  // {y < x}
    AntiLower,  // {x + y < 0}
    AntiUpper,  // {x + y > 0}
};

struct DiagonalSpec {
    DiagonalHalf half = DiagonalHalf::MainUpper;
    // Junction arc position along the hypotenuse, measured from the center
    // (positive toward the corner with larger x). Neumann strictly beyond s0.
    double s0 = 0.0;
};

// Subset of full-grid nodes (1 = inside).
struct DomainMask {
    std::vector<uint8_t> inside;

    int count() const;
    bool connected(const Grid& g) const;  // 4-connectivity
};

}  // namespace minpart
