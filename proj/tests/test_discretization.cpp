#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "minpart/assemble.hpp"
#include "minpart/eigensolve.hpp"

using namespace minpart;

namespace {

constexpr double kPi = 3.14159265358979323846;

double scheme_eig(double h, double L, int m) {
    const double s = std::sin(m * kPi * h / (2.0 * L));
    return 4.0 / (h * h) * s * s;
}

std::vector<double> sorted_dense(const SparseOperator& op) {
    return dense_reference(op).eigenvalues;
}

void check_spectra_equal(const std::vector<double>& got,
                         const std::vector<double>& want, double rel) {
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(rel));
}

DomainMask full_mask(const Grid& g) {
    DomainMask m;
    m.inside.assign(g.size(), 1);
    return m;
}

}  // namespace

TEST_CASE("grid coordinate conventions") {
    const auto geom = RectGeometry::from_sides(1.0, 2.0);
    const Grid gn = Grid::node_lattice(geom, 9, 9);
    CHECK(gn.hx == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(gn.x(0) == doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(gn.x(8) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(gn.y(4) == doctest::Approx(0.0).epsilon(1e-12));

    const Grid gc = Grid::cell_centered(geom, 10, 10);
    CHECK(gc.hx == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(gc.x(0) == doctest::Approx(-0.45).epsilon(1e-12));
    CHECK(gc.x(9) == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(gc.y(4) == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(gc.y(5) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("from_target_h honors the spacing and parity requests") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    Grid g = Grid::from_target_h(sq, kPi / 10, GridMode::NodeLattice);
    CHECK(g.nx == 9);
    CHECK(g.hx == doctest::Approx(kPi / 10).epsilon(1e-14));

    g = Grid::from_target_h(sq, kPi / 10, GridMode::NodeLattice, true);
    CHECK(g.nx == 9);
    g = Grid::from_target_h(sq, kPi / 9, GridMode::NodeLattice, true);
    CHECK(g.nx % 2 == 1);

    g = Grid::from_target_h(sq, kPi / 10, GridMode::CellCentered);
    CHECK(g.nx == 10);
    CHECK(g.x(4) == doctest::Approx(-g.hx / 2).epsilon(1e-12));

    const HalfGrid hg = HalfGrid::from_target_h(kPi, kPi / 2, kPi / 20);
    CHECK(hg.n_xi == 19);
    CHECK(hg.h_xi == doctest::Approx(kPi / 20).epsilon(1e-14));
    CHECK(hg.h_eta == doctest::Approx(hg.H / (hg.n_eta + 1)).epsilon(1e-15));
    CHECK(hg.xi(9) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("node lattice dirichlet matches its closed-form spectrum") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::node_lattice(sq, 12, 12);
    const auto op = assemble_dirichlet(g);
    CHECK((op.matrix - Eigen::SparseMatrix<double>(op.matrix.transpose())).norm() == 0.0);

    std::vector<double> want;
    for (int m = 1; m <= g.nx; ++m)
        for (int n = 1; n <= g.ny; ++n)
            want.push_back(scheme_eig(g.hx, g.a, m) + scheme_eig(g.hy, g.b, n));
    std::sort(want.begin(), want.end());
    check_spectra_equal(sorted_dense(op), want, 1e-10);

    CHECK(discrete_dirichlet_eigenvalue(g, {1, 1}) ==
          doctest::Approx(want.front()).epsilon(1e-13));
    CHECK_THROWS_AS(discrete_dirichlet_eigenvalue(g, {13, 1}), std::invalid_argument);
    CHECK_THROWS_AS(assemble_dirichlet(Grid::cell_centered(sq, 12, 12)),
                    std::invalid_argument);
}

TEST_CASE("cell centered dirichlet via the full mask matches the closed form") {
    const auto geom = RectGeometry::from_sides(1.0, 1.5);
    const Grid g = Grid::cell_centered(geom, 10, 12);
    const auto op = assemble_masked(g, full_mask(g));

    std::vector<double> want;
    for (int m = 1; m <= g.nx; ++m)
        for (int n = 1; n <= g.ny; ++n)
            want.push_back(scheme_eig(g.hx, g.a, m) + scheme_eig(g.hy, g.b, n));
    std::sort(want.begin(), want.end());
    check_spectra_equal(sorted_dense(op), want, 1e-10);
}

TEST_CASE("discrete eigenvalues converge to the continuum at second order") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    auto err = [&](int n) {
        const Grid g = Grid::node_lattice(sq, n, n);
        const auto res = lowest_eigenpairs(assemble_dirichlet(g), 4);
        REQUIRE(res.converged);
        return std::abs(res.eigenvalues[3] - 8.0) / 8.0;
    };
    const double e1 = err(24), e2 = err(48);
    const double order = std::log2(e1 / e2);
    CHECK(order > 1.7);
    CHECK(order < 2.3);
}

TEST_CASE("masked restriction of the full rectangle equals plain dirichlet") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::node_lattice(sq, 11, 11);
    const auto direct = assemble_dirichlet(g);
    const auto masked = assemble_masked(g, full_mask(g));
    CHECK((direct.matrix - masked.matrix).norm() == 0.0);
}

TEST_CASE("masked half plane equals the half-width rectangle") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::node_lattice(sq, 11, 11);  // node 5 sits on x = 0
    DomainMask m;
    m.inside.assign(g.size(), 0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < 5; ++i) m.inside[g.id(i, j)] = 1;
    REQUIRE(m.connected(g));

    // excluded column x = 0 acts as the Dirichlet wall of a width pi/2 strip
    std::vector<double> want;
    for (int mm = 1; mm <= 5; ++mm)
        for (int n = 1; n <= g.ny; ++n)
            want.push_back(scheme_eig(g.hx, g.a / 2, mm) + scheme_eig(g.hy, g.b, n));
    std::sort(want.begin(), want.end());
    check_spectra_equal(sorted_dense(assemble_masked(g, m)), want, 1e-10);
}

TEST_CASE("masked input validation") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::node_lattice(sq, 9, 9);
    DomainMask bad;
    bad.inside.assign(5, 1);
    CHECK_THROWS_AS(assemble_masked(g, bad), std::invalid_argument);

    DomainMask empty;
    empty.inside.assign(g.size(), 0);
    CHECK_THROWS_AS(assemble_masked(g, empty), std::invalid_argument);

    DomainMask split;
    split.inside.assign(g.size(), 0);
    split.inside[g.id(0, 0)] = 1;
    split.inside[g.id(8, 8)] = 1;
    CHECK_FALSE(split.connected(g));
    CHECK_THROWS_AS(assemble_masked(g, split), std::invalid_argument);
}

TEST_CASE("mixed problem with a fully dirichlet edge is the half rectangle") {
    const HalfGrid hg = HalfGrid::from_target_h(kPi, kPi / 2, kPi / 16);
    const auto op = assemble_mixed(hg, BoundarySpec::all_dirichlet());
    CHECK(op.dim() == hg.n_xi * hg.n_eta);

    std::vector<double> want;
    for (int m = 1; m <= hg.n_xi; ++m)
        for (int n = 1; n <= hg.n_eta; ++n)
            want.push_back(scheme_eig(hg.h_xi, hg.W, m) + scheme_eig(hg.h_eta, hg.H, n));
    std::sort(want.begin(), want.end());
    check_spectra_equal(sorted_dense(op), want, 1e-10);
}

TEST_CASE("mixed problem with a fully neumann edge is the even sector") {
    const HalfGrid hg = HalfGrid::from_target_h(kPi, kPi / 2, kPi / 16);
    const auto op = assemble_mixed(hg, BoundarySpec::type_a(-hg.W / 2));
    CHECK(op.dim() == hg.n_xi * (hg.n_eta + 1));
    CHECK((op.matrix - Eigen::SparseMatrix<double>(op.matrix.transpose())).norm() == 0.0);

    // reflecting across eta = 0 gives the full rectangle of height 2H whose
    // odd-n modes vanish on the symmetry line; the even sector keeps n odd
    std::vector<double> want;
    for (int m = 1; m <= hg.n_xi; ++m)
        for (int n = 1; n <= 2 * hg.n_eta + 1; n += 2)
            want.push_back(scheme_eig(hg.h_xi, hg.W, m) +
                           scheme_eig(hg.h_eta, 2.0 * hg.H, n));
    std::sort(want.begin(), want.end());
    check_spectra_equal(sorted_dense(op), want, 1e-10);
}

TEST_CASE("boundary interval snapping") {
    const HalfGrid hg = HalfGrid::from_target_h(kPi, kPi / 2, kPi / 20);
    REQUIRE(hg.n_xi == 19);

    auto snapped = BoundarySpec::half_split().snap(hg);
    CHECK(snapped.max_snap <= 1e-12);
    CHECK(snapped.neumann[9] == 0);  // junction node x = 0 stays dirichlet
    CHECK(snapped.neumann[10] == 1);
    CHECK(snapped.neumann[18] == 1);
    int count = 0;
    for (auto v : snapped.neumann) count += v;
    CHECK(count == 9);

    snapped = BoundarySpec::type_a(0.01).snap(hg);
    CHECK(snapped.max_snap == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(snapped.neumann[9] == 0);
    CHECK(snapped.neumann[10] == 1);

    snapped = BoundarySpec::type_b(-kPi / 4, kPi / 4).snap(hg);
    CHECK(snapped.neumann[4] == 0);
    CHECK(snapped.neumann[5] == 1);
    CHECK(snapped.neumann[13] == 1);
    CHECK(snapped.neumann[14] == 0);

    snapped = BoundarySpec::type_c(-kPi / 4, kPi / 4).snap(hg);
    CHECK(snapped.neumann[4] == 0);  // junctions dirichlet on both sides
    CHECK(snapped.neumann[5] == 0);
    CHECK(snapped.neumann[3] == 1);
    CHECK(snapped.neumann[14] == 0);
    CHECK(snapped.neumann[15] == 1);

    // degenerate interval collapses to all-dirichlet
    snapped = BoundarySpec::type_a(hg.W / 2).snap(hg);
    for (auto v : snapped.neumann) CHECK(v == 0);
}

TEST_CASE("ab holonomy concentrates at the puncture plaquette") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::cell_centered(sq, 8, 8);
    for (CutPath path : {CutPath::LeftHorizontal, CutPath::DownVertical}) {
        const CutSpec cut{path};
        const auto op = assemble_ab(g, cut);
        CHECK(op.magnetic);
        int negative = 0;
        for (int j = 0; j + 1 < g.ny; ++j)
            for (int i = 0; i + 1 < g.nx; ++i) {
                const int hol = ab_plaquette_holonomy(g, cut, i, j);
                if (hol == -1) {
                    ++negative;
                    CHECK(i == g.nx / 2 - 1);
                    CHECK(j == g.ny / 2 - 1);
                } else {
                    CHECK(hol == 1);
                }
            }
        CHECK(negative == 1);
    }
}

TEST_CASE("the two cut gauges are isospectral to rounding") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::cell_centered(sq, 10, 10);
    const auto left = sorted_dense(assemble_ab(g, {CutPath::LeftHorizontal}));
    const auto down = sorted_dense(assemble_ab(g, {CutPath::DownVertical}));
    check_spectra_equal(left, down, 1e-12);
}

TEST_CASE("ab eigenvalues arrive in exact pairs") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::cell_centered(sq, 10, 10);
    const auto vals = sorted_dense(assemble_ab(g, {}));
    REQUIRE(vals.size() % 2 == 0);
    for (size_t i = 0; i + 1 < vals.size(); i += 2)
        CHECK(vals[i + 1] - vals[i] <= 1e-11 * vals[i]);
}

TEST_CASE("ab assembly validation") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    CHECK_THROWS_AS(assemble_ab(Grid::node_lattice(sq, 9, 9), {}), std::invalid_argument);
    CHECK_THROWS_AS(assemble_ab(Grid::cell_centered(sq, 10, 8), {}), std::invalid_argument);
    const auto rect = RectGeometry::from_sides(kPi / 2, kPi);
    CHECK_THROWS_AS(assemble_ab(Grid::cell_centered(rect, 10, 10), {}), std::invalid_argument);
}

TEST_CASE("diagonal halves reproduce the symmetry sectors of the square") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::node_lattice(sq, 9, 9);

    std::vector<double> neumann_want, dirichlet_want;
    for (int m = 1; m <= g.nx; ++m)
        for (int n = m; n <= g.ny; ++n) {
            const double v = scheme_eig(g.hx, g.a, m) + scheme_eig(g.hy, g.b, n);
            neumann_want.push_back(v);
            if (n > m) dirichlet_want.push_back(v);
        }
    std::sort(neumann_want.begin(), neumann_want.end());
    std::sort(dirichlet_want.begin(), dirichlet_want.end());

    for (DiagonalHalf half : {DiagonalHalf::MainUpper, DiagonalHalf::MainLower,
                              DiagonalHalf::AntiLower, DiagonalHalf::AntiUpper}) {
        const auto op_n = assemble_diagonal_mixed(g, {half, -1e300});
        CHECK(op_n.dim() == g.nx * (g.nx + 1) / 2);
        check_spectra_equal(sorted_dense(op_n), neumann_want, 1e-10);

        const auto op_d = assemble_diagonal_mixed(g, {half, 1e300});
        CHECK(op_d.dim() == g.nx * (g.nx - 1) / 2);
        check_spectra_equal(sorted_dense(op_d), dirichlet_want, 1e-10);
    }
}

TEST_CASE("diagonal assembly needs a square node lattice") {
    const auto rect = RectGeometry::from_sides(kPi / 2, kPi);
    CHECK_THROWS_AS(assemble_diagonal_mixed(Grid::node_lattice(rect, 9, 19), {}),
                    std::invalid_argument);
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    CHECK_THROWS_AS(assemble_diagonal_mixed(Grid::cell_centered(sq, 10, 10), {}),
                    std::invalid_argument);
}
