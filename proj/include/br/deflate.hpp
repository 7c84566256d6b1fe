#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "br/boundary_state.hpp"
#include "br/dense.hpp"

namespace br {

/// One recorded deflation rotation acting on the column pair (p, q) in
/// child order, with BLAS drot semantics:
///   x_p' = c * x_p + s * x_q,   x_q' = c * x_q - s * x_p.
/// Applied to the merge's z vector with c = z_p/r, s = z_q/r it leaves
/// (r, 0) in the two slots.
struct GivensRecord {
    std::int32_t p = 0;
    std::int32_t q = 0;
    double c = 1.0;
    double s = 0.0;
};

/// Output of merge preprocessing: the compacted active secular problem
/// plus everything needed to replay the same transformation on selected
/// boundary rows.
struct MergePrep {
    std::vector<double> d_active;  // K survivors, strictly ascending
    std::vector<double> z_active;  // matching weights after rotations
    double rho = 1.0;
    std::vector<std::pair<std::int32_t, double>> deflated; // (child column, eigenvalue)
    std::vector<GivensRecord> givens;
    std::vector<std::int32_t> perm;        // merged (sorted) order -> child order
    std::vector<std::int8_t> signs;        // per child column, applied before rotations
    std::vector<std::int32_t> active_pos;  // merged-order positions that stayed active
    double tol = 0.0;                      // deflation tolerance actually used

    std::size_t active_rank() const { return d_active.size(); }
    std::size_t total() const { return perm.size(); }
};

/// Concatenates the two child boundary rows into the rank-one update
/// vector z = (sign * bhi(left), blo(right)). The sign carries the sign
/// of the split off-diagonal entry.
std::vector<double> build_z(const BoundaryState& left, const BoundaryState& right, int sign);

/// Merge preprocessing: stable-sorts the merged poles ascending (ties by
/// original index), deflates negligible z entries at unchanged pole
/// values, rotates close surviving pole pairs so the later pole's weight
/// becomes exactly zero and it deflates at its unchanged value, and
/// returns the compacted problem with full replay metadata. The
/// tolerance is 8 * eps * max(max|d|, max|z|) * tol_scale. K = 0 (all
/// deflated) is a legal outcome, not an error.
MergePrep deflate_merge(std::span<const double> d_in, std::span<const double> z_in,
                        double rho, double tol_scale = 1.0);

/// Applies a recorded rotation to two columns of a row block.
void apply_givens(Matrix& rows, std::int32_t p, std::int32_t q, double c, double s);

/// Replays the prep on a selected-row block with columns in child order:
/// signs, then every recorded rotation, then the column permutation into
/// merged order. Equals transforming the full eigenvector block first and
/// selecting the same rows afterwards.
Matrix apply_prep_to_rows(const Matrix& rows, const MergePrep& prep);

} // namespace br
