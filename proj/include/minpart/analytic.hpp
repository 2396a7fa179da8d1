#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "minpart/geometry.hpp"

namespace minpart {

// Relative tolerance used to group analytically equal eigenvalues.
inline constexpr double kLevelGroupTol = 1e-12;

// lambda_{m,n} = pi^2 (m^2/a^2 + n^2/b^2)
double dirichlet_eigenvalue(const RectGeometry& geom, ModeIndex mode);

// First `count` distinct levels, ascending, with all attaining modes.
std::vector<AnalyticLevel> spectrum_sorted(const RectGeometry& geom, int count);

struct RationalRatio {
    long long num = 0;
    long long den = 1;
};

// Continued-fraction detection of a rational a^2/b^2 (denominators up to 1e6).
std::optional<RationalRatio> rational_ratio(double r);

struct LkResult {
    double value = 0.0;
    std::vector<ModeIndex> argmin;  // all factorizations m*n = k attaining the min
    bool rational_ratio_warning = false;
};

// L_k = pi^2 inf_{m n = k} (m^2/a^2 + n^2/b^2): smallest eigenvalue whose
// eigenfunction has exactly k nodal domains.
LkResult L_k(const RectGeometry& geom, int k);

struct CourantSharpRule {
    ModeIndex mode;
    double lo = 0.0;   // inclusive unless lo == 0 (then the bound is vacuous)
    double hi = 1.0;   // inclusive
    bool active = false;
};

// Complete list of Courant-sharp eigenfunctions of the rectangle as a function
// of r = a^2/b^2, with activation flags for the given ratio. Exact comparisons.
std::vector<CourantSharpRule> courant_sharp_cases(double ratio_sq);
std::vector<CourantSharpRule> courant_sharp_cases(const RectGeometry& geom);

struct NodalBound3 {
    double value = 0.0;
    bool exact = false;  // true: equals frak_L3; false: strict upper bound
};

// 9 + 1/eps^2, exact for eps <= sqrt(3/8), strict upper bound beyond.
NodalBound3 frak_L3_nodal(double eps);

}  // namespace minpart
