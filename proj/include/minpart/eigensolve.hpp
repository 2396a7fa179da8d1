#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "minpart/assemble.hpp"

namespace minpart {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr double kDefaultTol = 1e-8;
// Relative gap below which two discrete eigenvalues count as one level.
inline constexpr double kDegenerateGapRel = 1e-6;
inline constexpr int kDenseDimCap = 4000;

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors;     // one column per eigenvalue
    std::vector<double> residuals;    // ||A v - lambda v|| / |lambda|
    bool converged = true;
    int iterations = 0;
    bool dense = false;
};

// Lowest k eigenpairs of the symmetric operator; shift-invert block Lanczos
// with full reorthogonalization, deterministic for a fixed seed. Falls back to
// the dense path for small problems. Contract: each returned pair satisfies
// ||A v - lambda v|| <= tol * max(1, |lambda|); otherwise converged = false.
SpectrumResult lowest_eigenpairs(const SparseOperator& op, int k,
                                 double tol = kDefaultTol,
                                 std::uint64_t seed = kDefaultSeed);

// Full dense spectrum (oracle); refuses dimensions above kDenseDimCap.
SpectrumResult dense_reference(const SparseOperator& op);

struct Level {
    double value = 0.0;
    int multiplicity = 0;
    int first_index = 0;
};

// Group an ascending eigenvalue list into levels by relative gap.
std::vector<Level> collapse_levels(const std::vector<double>& values,
                                   double rel_gap = kDegenerateGapRel);

}  // namespace minpart
