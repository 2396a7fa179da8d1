#pragma once

#include <stdexcept>
#include <vector>

namespace minpart {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Open rectangle ]-a/2, a/2[ x ]-b/2, b/2[ with 0 < a <= b.
// The one-parameter family of the study is a = pi*eps, b = pi.
struct RectGeometry {
    double a = 0.0;
    double b = 0.0;

    static RectGeometry from_sides(double a, double b) {
        if (!(a > 0.0) || !(b > 0.0))
            throw std::invalid_argument("rectangle sides must be positive");
        if (a > b)
            throw std::invalid_argument("convention requires a <= b");
        return RectGeometry{a, b};
    }

    static RectGeometry from_epsilon(double eps) {
        if (!(eps > 0.0) || eps > 1.0)
            throw std::invalid_argument("eps must lie in ]0, 1]");
        constexpr double pi = 3.14159265358979323846;
        return RectGeometry{pi * eps, pi};
    }

    double epsilon() const { return a / b; }
    double ratio_sq() const { return (a * a) / (b * b); }
};

struct ModeIndex {
    int m = 1;  // x direction, 1-based
    int n = 1;  // y direction, 1-based
};

// One eigenvalue level with every (m,n) that attains it.
struct AnalyticLevel {
    double value = 0.0;
    std::vector<ModeIndex> modes;
    int multiplicity() const { return static_cast<int>(modes.size()); }
};

}  // namespace minpart
