#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "minpart/ab_lab.hpp"
#include "minpart/eigensolve.hpp"
#include "minpart/nodal_family.hpp"

namespace minpart {

struct Partition {
    Grid grid;
    std::vector<int> labels;     // per node; 0 = sign band / boundary of parts
    std::vector<double> values;  // field behind the labels (may be empty)
    int parts = 0;
    std::vector<double> per_part_lambda;
    double lambda_max = 0.0;
    enum class Topology { TypeA, TypeB, TypeC, Nodal, Other } topology = Topology::Other;
    std::vector<CriticalPoint> interior_points;  // valence = nu
    std::vector<CriticalPoint> boundary_points;  // valence = rho
};

const char* topology_name(Partition::Topology t);

// Ground eigenvalue of every part (masked assembly), Lambda = max, plus the
// critical-point tally that classifies the topology type.
Partition evaluate_partition(const Grid& g, const std::vector<int>& labels,
                             const std::vector<double>& values = {},
                             double tol = kDefaultTol);

// Interface sample between nodes of different nonzero labels; when field
// values are available the point interpolates the zero crossing.
struct InterfacePoint {
    int label_lo = 0, label_hi = 0;
    Point p;
};
std::vector<InterfacePoint> interface_points(const Grid& g,
                                             const std::vector<int>& labels,
                                             const std::vector<double>& values);

struct TripleAngles {
    Point center;
    std::vector<double> branch_angles;     // one direction per interface branch
    std::vector<double> sector_angles;     // gaps between consecutive branches
    std::vector<double> boundary_meeting;  // interface vs wall, one per hit
    bool ok = false;
};

// Least-squares fit of the interface branch directions around the (unique)
// interior critical point, within a disk of radius 6h.
TripleAngles triple_point_angles(const Partition& p);

// Even mirror of a half-domain eigenvector onto the full node lattice
// (Dirichlet bottom nodes stay exact zeros and separate the mirror copies).
std::pair<Grid, std::vector<double>> symmetrize_axis(
    const RectGeometry& geom, const HalfGrid& hg,
    const std::vector<std::uint8_t>& neumann, const SparseOperator& op,
    const Eigen::VectorXd& vec);

// Same across a diagonal of the square.
std::vector<double> symmetrize_diagonal(const Grid& g, const DiagonalSpec& spec,
                                        const SparseOperator& op,
                                        const Eigen::VectorXd& vec);

struct SweepPoint {
    double x0 = 0.0, x1 = 0.0;  // junction positions (x1 used by types b, c)
    double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
    double energy = 0.0;        // energy of the qualifying eigenfunction
    int parts = 0;
    bool feasible = false;
    bool degenerate_pick = false;  // eigenfunction taken from the near-degenerate level
};

struct SweepResult {
    char type = 'a';
    double eps = 1.0;
    bool diagonal = false;
    double h = 0.0;  // realized xi spacing
    std::vector<SweepPoint> points;
    int argmin = -1;
    bool found = false;
    double x0_refined = 0.0;  // parabolic sub-grid refinement of the junction
    double energy_refined = 0.0;
    Partition best;  // evaluated at the discrete argmin
};

// Junction sweep for the DN family of 3-partition candidates.
// type 'a': Neumann on [x0, a/2]; 'b': on [x0, x1]; 'c': the complement.
SweepResult dn_sweep(double eps, char type, double target_h, int sweep_resolution,
                     double tol = kDefaultTol);

// Same sweep along the main diagonal of the square.
SweepResult diagonal_search(double target_h, int sweep_resolution,
                            double tol = kDefaultTol);

struct TransitionRow {
    double eps = 0.0;
    double x0 = 0.0;         // refined junction
    double x0_scaled = 0.0;  // x0 / eps, the coordinate of the monotone claim
    double energy = 0.0;     // refined sweep energy
    double lambda_max = 0.0; // Lambda of the evaluated best partition
    double bound = 0.0;      // 9 + 1/eps^2
    bool feasible = false;
    bool strict_below = false;  // Lambda < bound (expected for eps beyond critical)
};

// The 7-point schedule eps(t) = (1 - t/20) sqrt(3/8) + t/20.
std::vector<double> transition_schedule();

std::vector<TransitionRow> transition_study(const std::vector<double>& eps_schedule,
                                            double target_h, int sweep_resolution,
                                            double tol = kDefaultTol);

}  // namespace minpart
