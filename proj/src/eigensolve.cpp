#include "minpart/eigensolve.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace minpart {

namespace {

// Uniform in [-1, 1) built from the raw 64-bit stream; std::*_distribution
// output is implementation-defined, which would break run-to-run determinism
// guarantees across standard libraries.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}
    double next() {
        return 2.0 * ((eng_() >> 11) * (1.0 / 9007199254740992.0)) - 1.0;
    }

  private:
    std::mt19937_64 eng_;
};

double residual_norm(const SparseOperator& op, const Eigen::VectorXd& v,
                     double lambda) {
    return (op.matrix * v - lambda * v).norm();
}

bool residual_ok(double rnorm, double lambda, double tol) {
    return rnorm <= tol * std::max(1.0, std::abs(lambda));
}

SpectrumResult truncate_dense(const SparseOperator& op, SpectrumResult full, int k,
                              double tol) {
    SpectrumResult out;
    out.dense = true;
    out.iterations = 0;
    out.eigenvalues.assign(full.eigenvalues.begin(), full.eigenvalues.begin() + k);
    out.eigenvectors = full.eigenvectors.leftCols(k);
    out.residuals.resize(k);
    out.converged = true;
    for (int i = 0; i < k; ++i) {
        out.residuals[i] = residual_norm(op, out.eigenvectors.col(i), out.eigenvalues[i]);
        if (!residual_ok(out.residuals[i], out.eigenvalues[i], tol))
            out.converged = false;
    }
    return out;
}

}  // namespace

SpectrumResult dense_reference(const SparseOperator& op) {
    const int n = op.dim();
    if (n > kDenseDimCap)
        throw std::invalid_argument("dense reference refuses dimensions above 4000");
    if (n == 0) throw std::invalid_argument("empty operator");
    Eigen::MatrixXd dense = Eigen::MatrixXd(op.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense eigensolver failed");
    SpectrumResult out;
    out.dense = true;
    out.converged = true;
    out.iterations = 0;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    out.eigenvectors = es.eigenvectors();
    out.residuals.resize(n);
    for (int i = 0; i < n; ++i)
        out.residuals[i] = residual_norm(op, out.eigenvectors.col(i), out.eigenvalues[i]);
    return out;
}

SpectrumResult lowest_eigenpairs(const SparseOperator& op, int k, double tol,
                                 std::uint64_t seed) {
    const int n = op.dim();
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (k > n) throw std::invalid_argument("k exceeds the operator dimension");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    if (n <= 600 || 3 * k >= n) {
        if (n > kDenseDimCap)
            throw std::invalid_argument("k too close to a large dimension");
        return truncate_dense(op, dense_reference(op), k, tol);
    }

    // Shift-invert at zero: the operators here are positive definite, so the
    // smallest eigenvalues become the dominant ones of the inverse.
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(op.matrix);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("sparse factorization failed");

    // Blocked inverse iteration with Rayleigh-Ritz over the accumulated basis.
    // Block width 2 so exactly-double levels fill out instead of stalling the
    // one-vector recurrence.
    const int block = 2;
    const int max_basis = std::min(n, std::max(10 * k + 40, 80));
    DetRng rng(seed);

    Eigen::MatrixXd basis(n, max_basis);      // orthonormal columns
    Eigen::MatrixXd images(n, max_basis);     // A^{-1} * basis
    Eigen::MatrixXd small_t =
        Eigen::MatrixXd::Zero(max_basis, max_basis);  // basis' A^{-1} basis
    int m = 0;

    Eigen::MatrixXd next(n, block);
    for (int c = 0; c < block; ++c)
        for (int r = 0; r < n; ++r) next(r, c) = rng.next();

    SpectrumResult out;
    out.converged = false;
    int steps = 0;
    while (m + block <= max_basis) {
        ++steps;
        // orthogonalize the incoming block against everything, twice
        for (int pass = 0; pass < 2; ++pass) {
            if (m > 0)
                next -= basis.leftCols(m) * (basis.leftCols(m).transpose() * next);
            for (int c = 0; c < block; ++c) {
                for (int c2 = 0; c2 < c; ++c2)
                    next.col(c) -= next.col(c2).dot(next.col(c)) * next.col(c2);
                const double norm = next.col(c).norm();
                if (norm < 1e-10) {
                    for (int r = 0; r < n; ++r) next(r, c) = rng.next();
                    if (m > 0)
                        next.col(c) -= basis.leftCols(m) *
                                       (basis.leftCols(m).transpose() * next.col(c));
                    next.col(c).normalize();
                } else {
                    next.col(c) /= norm;
                }
            }
        }
        basis.middleCols(m, block) = next;
        images.middleCols(m, block) = ldlt.solve(next);
        const int m_new = m + block;
        // extend basis' A^{-1} basis by the new block, keeping it symmetric
        Eigen::MatrixXd cross =
            basis.leftCols(m_new).transpose() * images.middleCols(m, block);
        for (int c = 0; c < block; ++c)
            for (int r = 0; r < m_new; ++r) {
                small_t(r, m + c) = cross(r, c);
                small_t(m + c, r) = cross(r, c);
            }
        m = m_new;

        if (m >= std::max(2 * k, 2 * block)) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
                small_t.topLeftCorner(m, m));
            // largest thetas of the inverse are the smallest lambdas
            Eigen::MatrixXd ritz =
                basis.leftCols(m) * es.eigenvectors().rightCols(k).rowwise().reverse();
            std::vector<double> lambdas(k);
            std::vector<double> residuals(k);
            bool all_ok = true;
            for (int i = 0; i < k; ++i) {
                const double theta = es.eigenvalues()(m - 1 - i);
                if (!(theta > 0.0)) {
                    all_ok = false;
                    break;
                }
                Eigen::VectorXd v = ritz.col(i);
                v.normalize();
                ritz.col(i) = v;
                const double lambda = v.dot(op.matrix * v);
                lambdas[i] = lambda;
                residuals[i] = residual_norm(op, v, lambda);
                if (!residual_ok(residuals[i], lambda, tol)) all_ok = false;
            }
            if (all_ok) {
                // ascending lambda order, stable under exact ties
                std::vector<int> order(k);
                for (int i = 0; i < k; ++i) order[i] = i;
                std::sort(order.begin(), order.end(), [&](int l, int r) {
                    return lambdas[l] != lambdas[r] ? lambdas[l] < lambdas[r] : l < r;
                });
                out.eigenvalues.resize(k);
                out.residuals.resize(k);
                out.eigenvectors.resize(n, k);
                for (int i = 0; i < k; ++i) {
                    out.eigenvalues[i] = lambdas[order[i]];
                    out.residuals[i] = residuals[order[i]];
                    out.eigenvectors.col(i) = ritz.col(order[i]);
                }
                out.converged = true;
                out.iterations = steps;
                return out;
            }
        }
        // inverse-iteration step for the next block
        next = images.middleCols(m - block, block);
    }

    // basis budget exhausted: report the best pairs anyway, flagged
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small_t.topLeftCorner(m, m));
    Eigen::MatrixXd ritz =
        basis.leftCols(m) * es.eigenvectors().rightCols(k).rowwise().reverse();
    out.eigenvalues.resize(k);
    out.residuals.resize(k);
    out.eigenvectors.resize(op.dim(), k);
    std::vector<std::pair<double, int>> order(k);
    for (int i = 0; i < k; ++i) {
        Eigen::VectorXd v = ritz.col(i);
        v.normalize();
        ritz.col(i) = v;
        order[i] = {v.dot(op.matrix * v), i};
    }
    std::sort(order.begin(), order.end());
    for (int i = 0; i < k; ++i) {
        out.eigenvalues[i] = order[i].first;
        out.eigenvectors.col(i) = ritz.col(order[i].second);
        out.residuals[i] =
            residual_norm(op, out.eigenvectors.col(i), out.eigenvalues[i]);
    }
    out.iterations = steps;
    return out;
}

std::vector<Level> collapse_levels(const std::vector<double>& values, double rel_gap) {
    std::vector<Level> levels;
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        const double v = values[i];
        if (!levels.empty() &&
            v - levels.back().value <= rel_gap * std::max(std::abs(v), 1e-12)) {
            ++levels.back().multiplicity;
        } else {
            levels.push_back({v, 1, i});
        }
    }
    return levels;
}

}  // namespace minpart
