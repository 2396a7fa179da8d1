#pragma once

#include <vector>

#include "minpart/geometry.hpp"

namespace minpart {

// Eigenfunction family of the double eigenvalue 9 + 1/eps^2 at eps = sqrt(3/8):
//   phi(x,y) = alpha cos(x/eps) cos(3y) + beta sin(2x/eps) cos(y)
// on ]-pi eps/2, pi eps/2[ x ]-pi/2, pi/2[. Interior zeros are governed by the
// reduced factor psi = alpha(1 - 4 sin^2 y) + 2 beta sin(x/eps).
struct FamilyCoeffs {
    double alpha = 1.0;
    double beta = 0.0;
};

double family_phi(FamilyCoeffs c, double eps, double x, double y);
double family_psi(FamilyCoeffs c, double eps, double x, double y);
double family_psi_dx(FamilyCoeffs c, double eps, double x, double y);
double family_psi_dy(FamilyCoeffs c, double eps, double x, double y);

// Relative half-width of the zero sign band used when labeling sample grids.
inline constexpr double kSignBandRel = 1e-9;

struct CriticalPoint {
    Point p;
    int valence = 0;  // arcs meeting at the point (nu inside, rho on the boundary)
};

struct NodalSet {
    std::vector<std::vector<Point>> polylines;  // interior zero set of psi
    std::vector<Point> boundary_hits;           // polyline endpoints on the walls
    std::vector<CriticalPoint> interior_critical;
    std::vector<CriticalPoint> boundary_critical;
};

// Marching-squares contours of psi at the given sampling resolution,
// plus Newton-refined critical points of the zero set.
NodalSet nodal_contours(FamilyCoeffs c, double eps, int resolution);

struct SignGridLabeling {
    int nx = 0, ny = 0;            // sample counts per axis
    std::vector<int> labels;       // 0 = inside the sign band, else component id
    int domain_count = 0;
    bool stable = false;           // count unchanged when resolution is doubled
};

// mu(phi): number of nodal domains, via sign flood fill of phi samples.
SignGridLabeling count_nodal_domains(FamilyCoeffs c, double eps, int resolution);

struct CriticalScan {
    std::vector<Point> interior_points;        // psi = 0 with grad psi = 0 (expected empty)
    std::vector<CriticalPoint> boundary_points;
    double gradient_lower_bound = 0.0;         // certified min |grad psi| on the zero set
    double exclusion_radius = 0.0;             // disks around boundary_points not covered
};

// Certified scan for interior critical points of the zero set.
CriticalScan interior_critical_scan(FamilyCoeffs c, double eps);

}  // namespace minpart
