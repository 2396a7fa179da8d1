#include "minpart/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minpart {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double dirichlet_eigenvalue(const RectGeometry& geom, ModeIndex mode) {
    if (mode.m < 1 || mode.n < 1)
        throw std::invalid_argument("mode indices are 1-based");
    const double mm = static_cast<double>(mode.m) * mode.m;
    const double nn = static_cast<double>(mode.n) * mode.n;
    return kPi * kPi * (mm / (geom.a * geom.a) + nn / (geom.b * geom.b));
}

std::vector<AnalyticLevel> spectrum_sorted(const RectGeometry& geom, int count) {
    if (count < 1) throw std::invalid_argument("count must be positive");
    double bound = dirichlet_eigenvalue(geom, {1, 1}) * std::max(count, 4);
    for (;;) {
        std::vector<std::pair<double, ModeIndex>> modes;
        const int m_max = static_cast<int>(std::floor(geom.a * std::sqrt(bound) / kPi));
        for (int m = 1; m <= m_max; ++m) {
            const double lx = kPi * kPi * double(m) * m / (geom.a * geom.a);
            if (lx > bound) break;
            const int n_max =
                static_cast<int>(std::floor(geom.b * std::sqrt(bound - lx) / kPi));
            for (int n = 1; n <= n_max; ++n)
                modes.push_back({dirichlet_eigenvalue(geom, {m, n}), {m, n}});
        }
        std::sort(modes.begin(), modes.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        std::vector<AnalyticLevel> levels;
        for (const auto& [v, mode] : modes) {
            if (!levels.empty() &&
                v - levels.back().value <= kLevelGroupTol * std::abs(v)) {
                levels.back().modes.push_back(mode);
            } else {
                levels.push_back({v, {mode}});
            }
        }
        for (auto& level : levels)
            std::sort(level.modes.begin(), level.modes.end(),
                      [](const ModeIndex& l, const ModeIndex& r) {
                          return l.m != r.m ? l.m < r.m : l.n < r.n;
                      });
        // every mode up to `bound` was enumerated, so the first `count`
        // levels are final once the last one clears the cutoff
        if (static_cast<int>(levels.size()) > count ||
            (static_cast<int>(levels.size()) == count && levels.back().value < bound)) {
            levels.resize(count);
            return levels;
        }
        bound *= 2.0;
    }
}

std::optional<RationalRatio> rational_ratio(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) return std::nullopt;
    constexpr long long kDenCap = 1000000;
    if (r >= static_cast<double>(kDenCap)) return std::nullopt;
    double x = r;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // convergents p/q of r
    for (int it = 0; it < 64; ++it) {
        const double fa = std::floor(x);
        if (fa > 9e17) break;
        const long long a = static_cast<long long>(fa);
        if (q1 > 0 && a > (kDenCap - q0) / q1) break;
        const long long p2 = a * p1 + p0;
        const long long q2 = a * q1 + q0;
        if (q2 > kDenCap) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (q1 > 0) {
            const double approx = static_cast<double>(p1) / static_cast<double>(q1);
            // far below the generic 1/q^2 approximation scale, so a hit
            // means actual rationality rather than a lucky convergent
            if (std::abs(r - approx) <= 1e-14 * std::max(1.0, r))
                return RationalRatio{p1, q1};
        }
        const double frac = x - fa;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

LkResult L_k(const RectGeometry& geom, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    LkResult out;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, ModeIndex>> candidates;
    for (int m = 1; m <= k; ++m) {
        if (k % m) continue;
        const ModeIndex mode{m, k / m};
        const double v = dirichlet_eigenvalue(geom, mode);
        candidates.push_back({v, mode});
        best = std::min(best, v);
    }
    out.value = best;
    for (const auto& [v, mode] : candidates)
        if (v - best <= kLevelGroupTol * std::abs(best)) out.argmin.push_back(mode);
    out.rational_ratio_warning = rational_ratio(geom.ratio_sq()).has_value();
    return out;
}

std::vector<CourantSharpRule> courant_sharp_cases(double ratio_sq) {
    if (!(ratio_sq > 0.0) || ratio_sq > 1.0)
        throw std::invalid_argument("a^2/b^2 must lie in ]0, 1]");
    std::vector<CourantSharpRule> rules;
    rules.push_back({{3, 2}, 0.6, 0.625, ratio_sq >= 0.6 && ratio_sq <= 0.625});
    rules.push_back({{2, 2}, 0.6, 1.0, ratio_sq >= 0.6});
    // (1, n) is Courant-sharp exactly for r <= 3/(n^2 - 1); emit every rule
    // active at this ratio plus the first inactive one for context.
    for (int n = 2;; ++n) {
        const double hi = 3.0 / (static_cast<double>(n) * n - 1.0);
        const bool active = ratio_sq <= hi;
        rules.push_back({{1, n}, 0.0, hi, active});
        if (!active) break;
    }
    return rules;
}

std::vector<CourantSharpRule> courant_sharp_cases(const RectGeometry& geom) {
    return courant_sharp_cases(geom.ratio_sq());
}

NodalBound3 frak_L3_nodal(double eps) {
    if (!(eps > 0.0) || eps > 1.0)
        throw std::invalid_argument("eps must lie in ]0, 1]");
    NodalBound3 out;
    out.value = 9.0 + 1.0 / (eps * eps);
    out.exact = eps <= std::sqrt(3.0 / 8.0);
    return out;
}

}  // namespace minpart
