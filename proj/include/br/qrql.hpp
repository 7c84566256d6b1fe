#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "br/dense.hpp"
#include "br/tridiagonal.hpp"

namespace br {

/// Eigendecomposition of a leaf block: ascending eigenvalues and the
/// matching orthogonal eigenvector matrix, with each column's
/// largest-magnitude entry made positive (first such entry on ties).
struct LeafEigenResult {
    std::vector<double> lambda;
    Matrix q;
};

/// All eigenvalues of T, ascending, by the implicit-shift QL/QR algorithm
/// with Wilkinson shifts. O(1) auxiliary state beyond the two input
/// arrays. Throws NoConvergence after 30*n total sweeps.
std::vector<double> eigenvalues_qrql(const TridiagonalMatrix& t);

/// Leaf eigensolver: eigenvalues plus eigenvectors, sorted ascending and
/// sign-canonicalized. Intended for blocks up to the leaf cutoff but
/// correct for any size.
LeafEigenResult leaf_eig(const TridiagonalMatrix& t);

/// Flips the sign of x in place if its largest-magnitude entry (first on
/// ties) is negative. Returns the applied factor (+1 or -1). Shared by
/// the leaf solver and the secular-column canonicalization so every
/// pipeline agrees on column signs.
int canonicalize_sign(std::span<double> x);

namespace detail {

/// Implicit QL/QR sweeps on (d, e) in place; eigenvalues land in d,
/// unsorted. Every plane rotation is streamed to `rows`, a matrix whose
/// columns track the eigenvector basis: pass Matrix::identity(n) rows to
/// accumulate full Q, unit-row vectors for selected-row tracking, or a
/// 0-row matrix for eigenvalues only. Returns the permutation that sorts
/// d ascending without applying it.
void steqr_sweeps(std::span<double> d, std::span<double> e, Matrix& rows);

/// Sorts d ascending and permutes the columns of rows to match.
void sort_and_permute(std::span<double> d, Matrix& rows);

} // namespace detail

} // namespace br
