#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace br {

/// Real symmetric tridiagonal matrix, stored as the diagonal d (length n)
/// and the off-diagonal e (length n-1). Symmetry is by construction; all
/// entries must be finite.
struct TridiagonalMatrix {
    std::size_t n = 0;
    std::vector<double> d;
    std::vector<double> e;

    TridiagonalMatrix() = default;
    TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag);

    /// Throws InvalidArgument if sizes disagree or any entry is not finite.
    void validate() const;

    /// max_i ( |e_{i-1}| + |d_i| + |e_i| ), the infinity norm of the matrix.
    double inf_norm() const;
};

/// Half-open index range [offset, offset+size) of one irreducible block.
struct Block {
    std::size_t offset = 0;
    std::size_t size = 0;
    bool operator==(const Block&) const = default;
};

/// Splits T at every off-diagonal entry with |e_i| <= tol * (|d_i| + |d_{i+1}|).
/// The returned blocks partition [0, n); the split entries are treated as
/// exact zeros by every downstream solver.
std::vector<Block> find_irreducible_blocks(const TridiagonalMatrix& t, double tol);

/// Text format: line 1 holds n, the next n lines hold d, the final n-1
/// lines hold e. Decimal floating point, one value per line.
TridiagonalMatrix read_tridiagonal(const std::string& path);
void write_tridiagonal(const TridiagonalMatrix& t, const std::string& path);

} // namespace br
