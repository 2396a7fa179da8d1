#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "minpart/partition.hpp"

using namespace minpart;

namespace {

constexpr double kPi = 3.14159265358979323846;

double scheme_eig(double h, double L, int m) {
    const double s = std::sin(m * kPi * h / (2.0 * L));
    return 4.0 / (h * h) * s * s;
}

}  // namespace

TEST_CASE("topology names") {
    CHECK(std::string(topology_name(Partition::Topology::TypeA)) == "a");
    CHECK(std::string(topology_name(Partition::Topology::Nodal)) == "nodal");
    CHECK(std::string(topology_name(Partition::Topology::Other)) == "other");
}

TEST_CASE("three-strip nodal partition evaluates to the strip eigenvalue") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::node_lattice(sq, 19, 59);  // rows 19, 39 sit on y = -+pi/6
    std::vector<int> labels(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int v;
            if (j == 19 || j == 39) v = 0;
            else if (j < 19) v = 1;
            else if (j < 39) v = 2;
            else v = 3;
            labels[g.id(i, j)] = v;
        }

    const auto part = evaluate_partition(g, labels);
    CHECK(part.parts == 3);
    CHECK(part.topology == Partition::Topology::Nodal);
    REQUIRE(part.per_part_lambda.size() == 3);
    const double strip = scheme_eig(g.hx, kPi, 1) + scheme_eig(g.hy, kPi / 3, 1);
    for (double v : part.per_part_lambda)
        CHECK(v == doctest::Approx(strip).epsilon(1e-10));
    CHECK(part.lambda_max == doctest::Approx(strip).epsilon(1e-10));
    CHECK(part.interior_points.empty());
}

TEST_CASE("vertical bisection gives two equal parts") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::node_lattice(sq, 19, 19);  // column 9 sits on x = 0
    std::vector<int> labels(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            labels[g.id(i, j)] = i == 9 ? 0 : (i < 9 ? 1 : 2);

    const auto part = evaluate_partition(g, labels);
    CHECK(part.parts == 2);
    const double half = scheme_eig(g.hx, kPi / 2, 1) + scheme_eig(g.hy, kPi, 1);
    REQUIRE(part.per_part_lambda.size() == 2);
    CHECK(part.per_part_lambda[0] == doctest::Approx(half).epsilon(1e-10));
    CHECK(part.per_part_lambda[1] == doctest::Approx(half).epsilon(1e-10));

    CHECK_THROWS_AS(evaluate_partition(g, std::vector<int>(5, 1)), std::invalid_argument);
}

TEST_CASE("interface points land on zero nodes and sign changes") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::node_lattice(sq, 9, 9);

    // explicit zero column between the parts
    std::vector<int> labels(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            labels[g.id(i, j)] = i == 4 ? 0 : (i < 4 ? 1 : 2);
    auto pts = interface_points(g, labels, {});
    REQUIRE(!pts.empty());
    for (const auto& ip : pts) {
        CHECK(ip.p.x == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(ip.label_lo == 1);
        CHECK(ip.label_hi == 2);
    }

    // no zero band: the crossing interpolates the field between columns
    std::vector<int> sign_labels(g.size());
    std::vector<double> field(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            sign_labels[g.id(i, j)] = i <= 3 ? 1 : 2;
            field[g.id(i, j)] = g.x(i) + 0.25 * g.hx;  // zero inside edge 3-4
        }
    pts = interface_points(g, sign_labels, field);
    REQUIRE(!pts.empty());
    for (const auto& ip : pts)
        CHECK(ip.p.x == doctest::Approx(-0.25 * g.hx).epsilon(1e-9));
}

TEST_CASE("axis symmetrization mirrors the half eigenfunction") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const HalfGrid hg = HalfGrid::from_target_h(kPi, kPi / 2, kPi / 20);
    const auto bc = BoundarySpec::half_split();
    const auto snapped = bc.snap(hg);
    const auto op = assemble_mixed(hg, bc);
    const auto sol = lowest_eigenpairs(op, 1);
    REQUIRE(sol.converged);

    const auto [full, values] = symmetrize_axis(sq, hg, snapped.neumann, op,
                                                sol.eigenvectors.col(0));
    CHECK(full.ny == 2 * hg.n_eta + 1);
    REQUIRE(static_cast<int>(values.size()) == full.size());

    const int mid = hg.n_eta;
    for (int i = 0; i < full.nx; ++i)
        for (int d = 1; d <= hg.n_eta; ++d)
            CHECK(values[full.id(i, mid - d)] == values[full.id(i, mid + d)]);
    // center row: dirichlet segment pinned to zero, neumann segment alive
    for (int i = 0; i <= 9; ++i) CHECK(values[full.id(i, mid)] == 0.0);
    double alive = 0.0;
    for (int i = 10; i < full.nx; ++i) alive += std::abs(values[full.id(i, mid)]);
    CHECK(alive > 0.0);
}

TEST_CASE("diagonal symmetrization mirrors across the main diagonal") {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    const Grid g = Grid::node_lattice(sq, 9, 9);
    const DiagonalSpec spec{DiagonalHalf::MainUpper, 0.0};
    const auto op = assemble_diagonal_mixed(g, spec);
    const auto sol = lowest_eigenpairs(op, 1);
    REQUIRE(sol.converged);

    const auto values = symmetrize_diagonal(g, spec, op, sol.eigenvectors.col(0));
    REQUIRE(static_cast<int>(values.size()) == g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            CHECK(values[g.id(i, j)] == values[g.id(j, i)]);
}

TEST_CASE("junction sweep on the square finds the type-a minimizer") {
    const auto sweep = dn_sweep(1.0, 'a', kPi / 30, 7);
    REQUIRE(sweep.found);
    CHECK(sweep.type == 'a');
    REQUIRE(sweep.argmin >= 0);
    CHECK(sweep.best.parts == 3);
    CHECK(sweep.best.topology == Partition::Topology::TypeA);
    CHECK(std::abs(sweep.x0_refined) < 0.6);
    // known level for the square is ~6.74 in these units, well under 9 + 1
    CHECK(sweep.energy_refined > 6.4);
    CHECK(sweep.energy_refined < 7.2);
    CHECK(sweep.best.lambda_max < 10.0);

    // the strips at the dirichlet end of the sweep are a 2-partition
    bool saw_infeasible = false;
    for (const auto& pt : sweep.points) {
        if (!pt.feasible) saw_infeasible = true;
        else CHECK(pt.parts == 3);
    }
    CHECK(saw_infeasible);

    const auto angles = triple_point_angles(sweep.best);
    REQUIRE(angles.ok);
    REQUIRE(angles.sector_angles.size() == 3);
    for (double s : angles.sector_angles)
        CHECK(s == doctest::Approx(2.0 * kPi / 3.0).epsilon(0.10));
    REQUIRE(!angles.boundary_meeting.empty());
    for (double m : angles.boundary_meeting)
        CHECK(m == doctest::Approx(kPi / 2.0).epsilon(0.10));

    CHECK_THROWS_AS(dn_sweep(1.0, 'x', kPi / 30, 7), std::invalid_argument);
    CHECK_THROWS_AS(dn_sweep(1.0, 'a', kPi / 30, 2), std::invalid_argument);
}

TEST_CASE("diagonal search agrees with the axis search on the square") {
    const auto axis = dn_sweep(1.0, 'a', kPi / 30, 7);
    const auto diag = diagonal_search(kPi / 30, 7);
    REQUIRE(axis.found);
    REQUIRE(diag.found);
    CHECK(diag.diagonal);
    CHECK(diag.best.parts == 3);
    CHECK(diag.energy_refined ==
          doctest::Approx(axis.energy_refined).epsilon(0.03));
}

TEST_CASE("transition schedule spans critical to square") {
    const auto s = transition_schedule();
    REQUIRE(s.size() == 7);
    CHECK(s.front() == doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-15));
    CHECK(s.back() == doctest::Approx(1.0).epsilon(1e-15));
    for (size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
}

TEST_CASE("transition study tracks the junction out of the wall") {
    const double crit = std::sqrt(3.0 / 8.0);
    const auto rows = transition_study({crit, 0.65, 1.0}, kPi / 30, 7);
    REQUIRE(rows.size() == 3);

    const auto& first = rows[0];
    CHECK(first.feasible);
    CHECK(first.bound == doctest::Approx(35.0 / 3.0).epsilon(1e-12));
    CHECK(first.energy == doctest::Approx(35.0 / 3.0).epsilon(0.02));
    // at the critical ratio the junction hugs the left wall
    CHECK(first.x0 < -crit * kPi / 2 + 3.0 * (kPi / 30));
    CHECK_FALSE(first.strict_below);

    for (const auto& row : rows) CHECK(row.feasible);
    CHECK(rows[1].strict_below);
    CHECK(rows[2].strict_below);
    CHECK(rows[2].lambda_max < 10.0);

    for (size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].x0_scaled >= rows[i - 1].x0_scaled - 0.02);
}
