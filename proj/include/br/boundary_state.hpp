#pragma once

#include <cstdint>
#include <vector>

namespace br {

/// Per-node boundary-row state: the first and last rows of the node's
/// local eigenvector block over its active columns, the node's ascending
/// eigenvalues, and the column permutation / sign metadata recorded by the
/// most recent merge. This is the only eigenvector-derived state the
/// values-only solver persists.
struct BoundaryState {
    std::vector<double> blo;
    std::vector<double> bhi;
    std::vector<std::int32_t> col_perm;
    std::vector<std::int8_t> col_sign;
    std::vector<double> local_lambda;

    std::size_t size() const { return local_lambda.size(); }

    /// Checks the length invariants and that both rows have at most unit
    /// norm up to roundoff (they are rows of an orthogonal matrix).
    void validate() const;
};

} // namespace br
