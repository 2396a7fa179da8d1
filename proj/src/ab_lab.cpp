#include "minpart/ab_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace minpart {

namespace {

double rel_dev(double x, double y) {
    return std::abs(x - y) / std::max(std::abs(y), 1e-300);
}

}  // namespace

std::string half_domain_label(HalfDomain which) {
    switch (which) {
        case HalfDomain::Upper: return "uh";
        case HalfDomain::Lower: return "lh";
        case HalfDomain::Left: return "leh";
        case HalfDomain::Right: return "rih";
        case HalfDomain::DiagMainUpper: return "dmu";
        case HalfDomain::DiagMainLower: return "dml";
        case HalfDomain::DiagAntiLower: return "dal";
        case HalfDomain::DiagAntiUpper: return "dau";
    }
    return "?";
}

bool is_diagonal(HalfDomain which) {
    switch (which) {
        case HalfDomain::DiagMainUpper:
        case HalfDomain::DiagMainLower:
        case HalfDomain::DiagAntiLower:
        case HalfDomain::DiagAntiUpper: return true;
        default: return false;
    }
}

SparseOperator ab_operator(const RectGeometry& geom, double target_h, CutSpec cut) {
    int ny = static_cast<int>(std::lround(geom.b / target_h));
    ny += ny % 2;
    ny = std::max(8, ny);
    const double h = geom.b / ny;
    const double nx_exact = geom.a / h;
    const int nx = static_cast<int>(std::lround(nx_exact));
    if (nx % 2 || std::abs(nx * h - geom.a) > 1e-9 * geom.a)
        throw std::invalid_argument(
            "no uniform offset grid matches this rectangle at the target spacing");
    const Grid g = Grid::cell_centered(geom, nx, ny);
    return assemble_ab(g, cut);
}

SparseOperator dn_half_operator(const RectGeometry& geom, HalfDomain which,
                                double target_h) {
    if (!is_diagonal(which)) {
        const bool horizontal = which == HalfDomain::Upper || which == HalfDomain::Lower;
        const double W = horizontal ? geom.a : geom.b;
        const double H = horizontal ? geom.b / 2 : geom.a / 2;
        const HalfGrid hg = HalfGrid::from_target_h(W, H, target_h);
        return assemble_mixed(hg, BoundarySpec::half_split());
    }
    if (std::abs(geom.a - geom.b) > 1e-12 * geom.b)
        throw std::invalid_argument("diagonal halves require a square");
    const Grid g = Grid::from_target_h(geom, target_h, GridMode::NodeLattice, true);
    DiagonalSpec spec;
    spec.s0 = 0.0;
    switch (which) {
        case HalfDomain::DiagMainUpper: spec.half = DiagonalHalf::MainUpper; break;
        case HalfDomain::DiagMainLower: spec.half = DiagonalHalf::MainLower; break;
        case HalfDomain::DiagAntiLower: spec.half = DiagonalHalf::AntiLower; break;
        default: spec.half = DiagonalHalf::AntiUpper; break;
    }
    return assemble_diagonal_mixed(g, spec);
}

SpectrumResult ab_spectrum(const RectGeometry& geom, double target_h, int k,
                           CutSpec cut, double tol) {
    return lowest_eigenpairs(ab_operator(geom, target_h, cut), k, tol);
}

SpectrumResult dn_half_spectrum(const RectGeometry& geom, HalfDomain which,
                                double target_h, int k, double tol) {
    return lowest_eigenpairs(dn_half_operator(geom, which, target_h), k, tol);
}

IsospectralReport isospec_battery(const RectGeometry& geom, int k,
                                  const std::vector<double>& hs, bool diagonals,
                                  double tol) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (hs.empty()) throw std::invalid_argument("need at least one spacing");
    const bool square = std::abs(geom.a - geom.b) <= 1e-12 * geom.b;
    if (diagonals && !square)
        throw std::invalid_argument("diagonal halves require a square");

    IsospectralReport rep;
    rep.k = k;
    rep.hs = hs;

    std::vector<HalfDomain> halves = {HalfDomain::Upper, HalfDomain::Lower,
                                      HalfDomain::Left, HalfDomain::Right};
    if (diagonals)
        halves.insert(halves.end(),
                      {HalfDomain::DiagMainUpper, HalfDomain::DiagMainLower,
                       HalfDomain::DiagAntiLower, HalfDomain::DiagAntiUpper});

    struct PerH {
        std::vector<double> ab_distinct;
        std::vector<int> ab_mult;
        std::vector<std::vector<double>> half_distinct;
        std::vector<std::vector<int>> half_mult;
    };
    std::vector<PerH> data(hs.size());

    for (size_t hi = 0; hi < hs.size(); ++hi) {
        const double h = hs[hi];
        const int ab_raw = 2 * k + 2;
        const auto ab = lowest_eigenpairs(ab_operator(geom, h, {}), ab_raw, tol);
        if (!ab.converged) throw std::runtime_error("ab eigensolve did not converge");
        rep.problems.push_back({"ab", h, ab.eigenvalues});

        auto ab_levels = collapse_levels(ab.eigenvalues);
        if (!ab_levels.empty()) ab_levels.pop_back();  // last level may be truncated
        for (const auto& l : ab_levels) {
            if (static_cast<int>(data[hi].ab_distinct.size()) < k) {
                data[hi].ab_distinct.push_back(l.value);
                data[hi].ab_mult.push_back(l.multiplicity);
            }
            if (l.multiplicity % 2) rep.ab_pairs_even = false;
        }

        data[hi].half_distinct.resize(halves.size());
        data[hi].half_mult.resize(halves.size());
        for (size_t w = 0; w < halves.size(); ++w) {
            const auto sp =
                lowest_eigenpairs(dn_half_operator(geom, halves[w], h), k + 3, tol);
            if (!sp.converged)
                throw std::runtime_error("half-domain eigensolve did not converge");
            rep.problems.push_back({half_domain_label(halves[w]), h, sp.eigenvalues});
            auto levels = collapse_levels(sp.eigenvalues);
            if (!levels.empty()) levels.pop_back();
            for (const auto& l : levels) {
                if (static_cast<int>(data[hi].half_distinct[w].size()) == k) break;
                data[hi].half_distinct[w].push_back(l.value);
                data[hi].half_mult[w].push_back(l.multiplicity);
            }
        }
    }

    auto half_pos = [&](HalfDomain which) {
        for (size_t w = 0; w < halves.size(); ++w)
            if (halves[w] == which) return w;
        throw std::logic_error("half domain not in battery");
    };
    auto add_row = [&](const std::string& name, auto lhs_of, auto rhs_of) {
        DeviationRow row;
        row.pair = name;
        for (size_t hi = 0; hi < hs.size(); ++hi) {
            const std::vector<double>& lv = lhs_of(data[hi]);
            const std::vector<double>& rv = rhs_of(data[hi]);
            const size_t m = std::min({lv.size(), rv.size(), static_cast<size_t>(k)});
            double worst = 0.0;
            for (size_t i = 0; i < m; ++i)
                worst = std::max(worst, rel_dev(lv[i], rv[i]));
            row.per_h.push_back(worst);
        }
        rep.deviations.push_back(std::move(row));
        return rep.deviations.back().per_h;
    };

    const size_t uh = half_pos(HalfDomain::Upper), lh = half_pos(HalfDomain::Lower);
    const size_t leh = half_pos(HalfDomain::Left), rih = half_pos(HalfDomain::Right);
    add_row("ab_vs_uh", [](const PerH& d) -> const std::vector<double>& { return d.ab_distinct; },
            [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[uh]; });
    add_row("ab_vs_leh", [](const PerH& d) -> const std::vector<double>& { return d.ab_distinct; },
            [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[leh]; });
    const auto split_uh = add_row(
        "uh_vs_lh", [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[uh]; },
        [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[lh]; });
    const auto split_lr = add_row(
        "leh_vs_rih", [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[leh]; },
        [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[rih]; });
    for (double v : split_uh) rep.max_axis_split = std::max(rep.max_axis_split, v);
    for (double v : split_lr) rep.max_axis_split = std::max(rep.max_axis_split, v);
    if (square)
        add_row("uh_vs_leh",
                [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[uh]; },
                [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[leh]; });
    if (diagonals) {
        const size_t dmu = half_pos(HalfDomain::DiagMainUpper);
        const size_t dml = half_pos(HalfDomain::DiagMainLower);
        const size_t dal = half_pos(HalfDomain::DiagAntiLower);
        const size_t dau = half_pos(HalfDomain::DiagAntiUpper);
        add_row("dmu_vs_uh",
                [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[dmu]; },
                [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[uh]; });
        add_row("dmu_vs_dml",
                [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[dmu]; },
                [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[dml]; });
        add_row("dal_vs_dau",
                [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[dal]; },
                [&](const PerH& d) -> const std::vector<double>& { return d.half_distinct[dau]; });
    }

    for (size_t hi = 0; hi < hs.size(); ++hi) {
        const auto& d = data[hi];
        const size_t m = std::min(d.ab_mult.size(), d.half_mult[uh].size());
        for (size_t i = 0; i < m; ++i)
            if (d.ab_mult[i] != 2 * d.half_mult[uh][i]) rep.multiplicity_doubling = false;
    }
    return rep;
}

namespace {

// Twisted sign changes along the square lattice ring of Chebyshev radius r
// around the centre node. Exact zeros (the Dirichlet segment) are skipped;
// values inside the noise band abort the count so the caller can widen.
struct RingCount {
    int changes = -1;
    bool ambiguous = false;
};

RingCount count_ring(const std::vector<double>& w, int nx, int ny, int ci, int cj,
                     int r, double noise_floor) {
    RingCount out;
    if (ci - r < 0 || ci + r >= nx || cj - r < 0 || cj + r >= ny) {
        out.ambiguous = true;
        return out;
    }
    std::vector<std::pair<int, int>> ring;
    for (int j = cj - r; j <= cj + r; ++j) ring.push_back({ci + r, j});
    for (int i = ci + r - 1; i >= ci - r; --i) ring.push_back({i, cj + r});
    for (int j = cj + r - 1; j >= cj - r; --j) ring.push_back({ci - r, j});
    for (int i = ci - r + 1; i <= ci + r - 1; ++i) ring.push_back({i, cj - r});
    const int M = static_cast<int>(ring.size());
    // the branch cut lives on horizontal steps between columns ci-1 and ci
    // below the centre row
    auto step_twist = [&](int m) {
        const auto [i0, j0] = ring[m];
        const auto [i1, j1] = ring[(m + 1) % M];
        if (j0 == j1 && j0 < cj && std::min(i0, i1) == ci - 1) return -1;
        return 1;
    };
    double ring_max = 0.0;
    for (const auto& [i, j] : ring)
        ring_max = std::max(ring_max, std::abs(w[j * nx + i]));
    if (ring_max == 0.0) {
        out.ambiguous = true;
        return out;
    }
    std::vector<double> eff;
    int g = 1;
    int total_twist = 1;
    for (int m = 0; m < M; ++m) {
        const auto [i, j] = ring[m];
        const double v = w[j * nx + i];
        if (std::abs(v) > noise_floor * ring_max) {
            eff.push_back(g * v);
        } else if (std::abs(v) > 1e-12 * ring_max) {
            out.ambiguous = true;  // not structurally zero, not clearly signed
            return out;
        }
        g *= step_twist(m);
        total_twist *= step_twist(m);
    }
    (void)total_twist;
    if (eff.size() < 2) {
        out.ambiguous = true;
        return out;
    }
    int changes = 0;
    for (size_t i = 0; i + 1 < eff.size(); ++i)
        if (eff[i] * eff[i + 1] < 0.0) ++changes;
    if (eff.back() * (g * eff.front()) < 0.0) ++changes;
    out.changes = changes;
    return out;
}

}  // namespace

std::vector<KRealLevel> kreal_nodal_check(const RectGeometry& geom, double target_h,
                                          int levels, double tol) {
    if (levels < 1) throw std::invalid_argument("levels must be positive");
    const HalfGrid hg = HalfGrid::from_target_h(geom.a, geom.b / 2, target_h);
    const SparseOperator op = assemble_mixed(hg, BoundarySpec::half_split());
    const int raw = 2 * levels + 4;
    const auto sp = lowest_eigenpairs(op, raw, tol);
    if (!sp.converged) throw std::runtime_error("eigensolve did not converge");
    const auto groups = collapse_levels(sp.eigenvalues);

    const int nx = hg.n_xi;
    const int ny = 2 * hg.n_eta + 1;
    const int cj = hg.n_eta;       // centre row (y = 0)
    const int ci = (nx - 1) / 2;   // centre column (x = 0)

    std::vector<KRealLevel> out;
    for (int li = 0; li < levels && li < static_cast<int>(groups.size()); ++li) {
        const auto& grp = groups[li];
        Eigen::VectorXd v = sp.eigenvectors.col(grp.first_index);
        std::vector<double> w(static_cast<size_t>(nx) * ny, 0.0);
        for (int p = 0; p < op.dim(); ++p) {
            const auto [i, j] = op.nodes[p];
            const double phys =
                op.weight_sqrt.empty() ? v(p) : v(p) / op.weight_sqrt[p];
            // upper half copies u; the lower half is the K-real continuation:
            // even in y right of the puncture, odd left of it
            const double s = i >= ci ? 1.0 : -1.0;
            w[(cj + j) * nx + i] = phys;
            if (j > 0) w[(cj - j) * nx + i] = s * phys;
        }
        KRealLevel rec;
        rec.level = li;
        rec.lambda = grp.value;
        bool all_odd = true;
        for (int base : {3, 5}) {
            int r = base;
            RingCount rc;
            for (; r <= base + 8; r += 2) {
                rc = count_ring(w, nx, ny, ci, cj, r, 1e-7);
                if (!rc.ambiguous) break;
            }
            rec.ring_counts.push_back(rc.changes);
            if (rc.changes < 0 || rc.changes % 2 == 0) all_odd = false;
        }
        rec.odd = all_odd;
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace minpart
