#pragma once

#include <string>
#include <vector>

#include "minpart/eigensolve.hpp"

namespace minpart {

enum class HalfDomain {
    Upper,   // y > 0, Neumann on ]0, a/2] x {0}
    Lower,   // y < 0, mirror of Upper
    Left,    // x < 0, Neumann on {0} x ]0, b/2]
    Right,   // x > 0, mirror of Left
    DiagMainUpper,
    DiagMainLower,
    DiagAntiLower,
    DiagAntiUpper,
};

std::string half_domain_label(HalfDomain which);
bool is_diagonal(HalfDomain which);

// AB spectrum on the cell-centered grid with spacing ~target_h.
SpectrumResult ab_spectrum(const RectGeometry& geom, double target_h, int k,
                           CutSpec cut = {}, double tol = kDefaultTol);

// The matched half-domain problems of the isospectrality statements.
// Axis halves exist for every rectangle; diagonal halves require a == b.
SpectrumResult dn_half_spectrum(const RectGeometry& geom, HalfDomain which,
                                double target_h, int k, double tol = kDefaultTol);

// Operators behind the two calls above, exposed for reuse and tests.
SparseOperator ab_operator(const RectGeometry& geom, double target_h, CutSpec cut = {});
SparseOperator dn_half_operator(const RectGeometry& geom, HalfDomain which, double target_h);

struct IsospectralEntry {
    std::string label;
    double h = 0.0;
    std::vector<double> eigenvalues;
};

struct DeviationRow {
    std::string pair;
    std::vector<double> per_h;  // max relative deviation over the first k levels
};

struct IsospectralReport {
    int k = 0;
    std::vector<double> hs;
    std::vector<IsospectralEntry> problems;
    std::vector<DeviationRow> deviations;
    bool ab_pairs_even = true;          // AB levels all have even multiplicity
    bool multiplicity_doubling = true;  // AB multiplicity == 2 x DN multiplicity
    double max_axis_split = 0.0;        // worst |uh-lh| and |leh-rih| relative split
};

IsospectralReport isospec_battery(const RectGeometry& geom, int k,
                                  const std::vector<double>& hs, bool diagonals,
                                  double tol = kDefaultTol);

struct KRealLevel {
    int level = 0;       // distinct-level index, 0-based
    double lambda = 0.0;
    std::vector<int> ring_counts;  // twisted sign changes per sampled loop
    bool odd = false;
};

// K-real nodal parity: rebuild the K-real eigenfunction from the Upper DN
// eigenfunction and count twisted sign changes along lattice loops around the
// puncture. Every count must be odd.
std::vector<KRealLevel> kreal_nodal_check(const RectGeometry& geom, double target_h,
                                          int levels, double tol = kDefaultTol);

}  // namespace minpart
