#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "minpart/assemble.hpp"
#include "minpart/eigensolve.hpp"

using namespace minpart;

namespace {

constexpr double kPi = 3.14159265358979323846;

SparseOperator square_op(int n) {
    const auto sq = RectGeometry::from_sides(kPi, kPi);
    return assemble_dirichlet(Grid::node_lattice(sq, n, n));
}

double residual(const SparseOperator& op, const SpectrumResult& r, int i) {
    const Eigen::VectorXd v = r.eigenvectors.col(i);
    return (op.matrix * v - r.eigenvalues[i] * v).norm();
}

}  // namespace

TEST_CASE("sparse path agrees with the dense oracle") {
    const auto op = square_op(25);  // 625 unknowns forces the iterative path
    const int k = 6;
    const auto sparse = lowest_eigenpairs(op, k);
    REQUIRE(sparse.converged);
    CHECK_FALSE(sparse.dense);
    REQUIRE(static_cast<int>(sparse.eigenvalues.size()) == k);

    const auto dense = dense_reference(op);
    CHECK(dense.dense);
    for (int i = 0; i < k; ++i)
        CHECK(sparse.eigenvalues[i] ==
              doctest::Approx(dense.eigenvalues[i]).epsilon(1e-9));
}

TEST_CASE("eigenpairs satisfy the residual contract") {
    const auto op = square_op(25);
    const auto r = lowest_eigenpairs(op, 5, 1e-10);
    REQUIRE(r.converged);
    for (int i = 0; i < 5; ++i) {
        CHECK(residual(op, r, i) <= 1e-10 * std::max(1.0, r.eigenvalues[i]));
        CHECK(r.eigenvectors.col(i).norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("rectangular closed form through the iterative path") {
    const auto geom = RectGeometry::from_sides(kPi / 2, kPi);
    const Grid g = Grid::node_lattice(geom, 21, 31);  // 651 unknowns
    const auto op = assemble_dirichlet(g);
    const auto r = lowest_eigenpairs(op, 8);
    REQUIRE(r.converged);
    CHECK_FALSE(r.dense);

    std::vector<double> want;
    for (int m = 1; m <= g.nx; ++m)
        for (int n = 1; n <= g.ny; ++n)
            want.push_back(discrete_dirichlet_eigenvalue(g, {m, n}));
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 8; ++i)
        CHECK(r.eigenvalues[i] == doctest::Approx(want[i]).epsilon(1e-9));
}

TEST_CASE("degenerate pairs come back complete and orthonormal") {
    const auto op = square_op(27);
    const auto r = lowest_eigenpairs(op, 5);
    REQUIRE(r.converged);
    // levels 2 and 3 are the symmetric pair; the discrete values coincide
    CHECK(std::abs(r.eigenvalues[2] - r.eigenvalues[1]) <= 1e-9 * r.eigenvalues[1]);
    const Eigen::MatrixXd gram =
        r.eigenvectors.transpose() * r.eigenvectors -
        Eigen::MatrixXd::Identity(5, 5);
    CHECK(gram.norm() <= 1e-8);
}

TEST_CASE("identical seeds reproduce results bit for bit") {
    const auto op = square_op(26);
    const auto r1 = lowest_eigenpairs(op, 4, kDefaultTol, 123);
    const auto r2 = lowest_eigenpairs(op, 4, kDefaultTol, 123);
    REQUIRE(r1.eigenvalues.size() == r2.eigenvalues.size());
    CHECK(std::memcmp(r1.eigenvalues.data(), r2.eigenvalues.data(),
                      r1.eigenvalues.size() * sizeof(double)) == 0);
    CHECK(r1.eigenvectors == r2.eigenvectors);

    const auto r3 = lowest_eigenpairs(op, 4, kDefaultTol, 987);
    for (int i = 0; i < 4; ++i)
        CHECK(r3.eigenvalues[i] == doctest::Approx(r1.eigenvalues[i]).epsilon(1e-9));
}

TEST_CASE("level collapsing by relative gap") {
    const std::vector<double> vals = {1.0, 1.0 + 1e-9, 2.0, 3.0, 3.0 + 1e-7, 3.0 + 2e-7};
    const auto levels = collapse_levels(vals, 1e-6);
    REQUIRE(levels.size() == 3);
    CHECK(levels[0].multiplicity == 2);
    CHECK(levels[0].first_index == 0);
    CHECK(levels[1].multiplicity == 1);
    CHECK(levels[1].first_index == 2);
    CHECK(levels[2].multiplicity == 3);
    CHECK(levels[2].first_index == 3);

    CHECK(collapse_levels({}).empty());
    const auto wide = collapse_levels({1.0, 1.1, 1.2});
    CHECK(wide.size() == 3);
}

TEST_CASE("solver input validation") {
    const auto op = square_op(10);
    CHECK_THROWS_AS(lowest_eigenpairs(op, 0), std::invalid_argument);
    CHECK_THROWS_AS(lowest_eigenpairs(op, 101), std::invalid_argument);
    CHECK_THROWS_AS(lowest_eigenpairs(op, 5, -1.0), std::invalid_argument);

    const auto big = square_op(70);  // 4900 unknowns
    CHECK_THROWS_AS(dense_reference(big), std::invalid_argument);
}
