#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "br/dense.hpp"
#include "br/merge_tree.hpp"
#include "br/tridiagonal.hpp"

namespace br {

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations
/// with a round-robin ordering and threshold skipping. Deliberately
/// independent of the QL/QR and secular machinery so oracle errors are
/// uncorrelated with the solvers it checks. Single-threaded.
std::vector<double> jacobi_eigenvalues(Matrix a);

/// Brute-force reference for tridiagonal input: densifies T and runs the
/// Jacobi solver. Guarded to n <= 4096.
std::vector<double> dense_eig(const TridiagonalMatrix& t);

/// One merge of the conventional full-eigenvector divide-and-conquer
/// pipeline, captured for equivalence checks: the active secular problem
/// after deflation plus its location in the tree.
struct MergeTraceRecord {
    std::int32_t level = 0;
    std::size_t offset = 0;      // global row offset of the merge
    std::size_t k = 0;           // active rank after deflation
    double rho = 0.0;
    std::vector<double> d_active;
    std::vector<double> z_active;
};

/// Node payload of the conventional D&C oracle: eigenvalues plus the
/// dense eigenvector block that the boundary-row solver never stores.
struct DenseDcNode {
    std::vector<double> lambda;
    Matrix q_full;
};

struct FullDcResult {
    std::vector<double> lambda;  // ascending
    Matrix q_full;               // eigenvectors, columns matching lambda
    std::vector<MergeTraceRecord> trace;
};

/// Conventional full-eigenvector D&C over one irreducible block with the
/// given split tree. Shares the split, deflation, secular, and ordering
/// conventions with the boundary-row driver; materializes every node's
/// eigenvector matrix eagerly and records every merge's secular problem.
FullDcResult full_dc_eigen(const TridiagonalMatrix& t, const MergeTree& tree,
                           double tol_scale = 1.0);

/// Block-splitting wrapper: runs full_dc_eigen per irreducible block with
/// the same block conventions as the boundary-row driver and assembles
/// globally sorted eigenvalues and eigenvectors.
FullDcResult full_dc_blocks(const TridiagonalMatrix& t, std::size_t leaf_cutoff = 25,
                            double tol_scale = 1.0);

/// Per-merge comparison outcome between the boundary-row trace and the
/// conventional D&C trace.
struct TraceComparison {
    std::int32_t level = 0;
    std::size_t offset = 0;
    bool structural_divergence = false; // different K: deflation decisions split
    double max_z_diff = 0.0;
    double max_d_diff = 0.0;
    double rho_diff = 0.0;
    bool flagged = false;
};

struct TraceReport {
    std::vector<TraceComparison> merges;
    std::size_t divergence_count = 0;
    std::size_t flagged_count = 0;
    double max_z_diff = 0.0;

    bool clean() const { return divergence_count == 0 && flagged_count == 0; }
};

/// Flags any merge whose pole multiset, z vector, or rho disagree beyond
/// 1e-13, and reports K mismatches as deflation-decision divergences.
TraceReport compare_traces(std::span<const MergeTraceRecord> br_trace,
                           std::span<const MergeTraceRecord> full_trace);

/// Diagnostic dump, one line per merge: level, offset, K, rho, then
/// checksums (entry sums) of d_active and z_active.
std::string format_trace(std::span<const MergeTraceRecord> trace);

} // namespace br
