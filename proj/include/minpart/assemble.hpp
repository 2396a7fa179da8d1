#pragma once

#include <Eigen/SparseCore>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "minpart/grid.hpp"

namespace minpart {

// Symmetric discrete operator plus the bookkeeping needed to map eigenvector
// entries back onto grid nodes. Problems with a half-weighted boundary row are
// stored in similarity-transformed form W^{-1/2} A W^{-1/2}; weight_sqrt keeps
// sqrt(W) so callers can recover physical node values (signs are unaffected).
struct SparseOperator {
    Eigen::SparseMatrix<double> matrix;
    std::vector<std::pair<int, int>> nodes;  // unknown -> (i, j)
    std::vector<int> node_index;             // (i, j) -> unknown or -1
    int grid_nx = 0, grid_ny = 0;            // index-space dimensions
    std::vector<double> weight_sqrt;         // empty means all ones

    GridMode grid_mode = GridMode::NodeLattice;
    double hx = 0.0, hy = 0.0;
    bool magnetic = false;
    double snap_distance = 0.0;
    std::string family;  // "dirichlet", "mixed", "masked", "ab", "diagonal"

    int dim() const { return static_cast<int>(matrix.rows()); }
    int index_of(int i, int j) const { return node_index[j * grid_nx + i]; }

    // coordinate text format: one "row col value" line per stored entry
    void write_coordinate(std::ostream& os) const;
};

// 5-point Dirichlet Laplacian on the full rectangle (node lattice).
SparseOperator assemble_dirichlet(const Grid& g);

// Closed-form eigenvalues of the discrete scheme (both grid modes):
// (4/hx^2) sin^2(m pi hx / (2a)) + (4/hy^2) sin^2(n pi hy / (2b)).
double discrete_dirichlet_eigenvalue(const Grid& g, ModeIndex mode);

// Mixed Dirichlet/Neumann problem on a half-domain in frame coordinates.
SparseOperator assemble_mixed(const HalfGrid& g, const BoundarySpec& bc);

// Dirichlet restriction to a masked node set: principal submatrix of the full
// operator, i.e. the complement acts as a zero boundary one node away.
SparseOperator assemble_masked(const Grid& g, const DomainMask& mask);

// Aharonov-Bohm operator at half flux through the center, cut-line gauge:
// real symmetric, hopping sign -1 on grid edges crossing the cut path.
// Requires a cell-centered grid with nx, ny even and hx == hy.
SparseOperator assemble_ab(const Grid& g, const CutSpec& cut);

// Product of edge signs around the plaquette with lower-left node (i, j).
// -1 exactly for the plaquette whose corner carries the puncture.
int ab_plaquette_holonomy(const Grid& g, const CutSpec& cut, int i, int j);

// Mixed problem on a diagonal half of the square: Dirichlet on the two sides,
// hypotenuse nodes Dirichlet up to the junction and Neumann beyond it.
SparseOperator assemble_diagonal_mixed(const Grid& g, const DiagonalSpec& spec);

}  // namespace minpart
