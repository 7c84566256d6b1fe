#include "br/tridiagonal.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "br/errors.hpp"

namespace br {

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag)
    : n(diag.size()), d(std::move(diag)), e(std::move(offdiag)) {
    validate();
}

void TridiagonalMatrix::validate() const {
    if (n == 0)
        throw InvalidArgument("tridiagonal: order must be positive");
    if (d.size() != n)
        throw InvalidArgument("tridiagonal: diagonal length != n");
    if (e.size() + 1 != n)
        throw InvalidArgument("tridiagonal: off-diagonal length != n-1");
    for (double v : d)
        if (!std::isfinite(v))
            throw InvalidArgument("tridiagonal: non-finite diagonal entry");
    for (double v : e)
        if (!std::isfinite(v))
            throw InvalidArgument("tridiagonal: non-finite off-diagonal entry");
}

double TridiagonalMatrix::inf_norm() const {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(d[i]);
        if (i > 0)
            row += std::abs(e[i - 1]);
        if (i + 1 < n)
            row += std::abs(e[i]);
        norm = std::max(norm, row);
    }
    return norm;
}

std::vector<Block> find_irreducible_blocks(const TridiagonalMatrix& t, double tol) {
    if (tol < 0)
        throw InvalidArgument("find_irreducible_blocks: tol must be nonnegative");
    std::vector<Block> blocks;
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < t.n; ++i) {
        if (std::abs(t.e[i]) <= tol * (std::abs(t.d[i]) + std::abs(t.d[i + 1]))) {
            blocks.push_back({start, i + 1 - start});
            start = i + 1;
        }
    }
    blocks.push_back({start, t.n - start});
    return blocks;
}

TridiagonalMatrix read_tridiagonal(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open tridiagonal file: " + path);
    std::size_t n = 0;
    if (!(in >> n) || n == 0)
        throw InvalidArgument("tridiagonal file: bad order line in " + path);
    std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i)
        if (!(in >> d[i]))
            throw InvalidArgument("tridiagonal file: missing diagonal entry in " + path);
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(in >> e[i]))
            throw InvalidArgument("tridiagonal file: missing off-diagonal entry in " + path);
    return TridiagonalMatrix(std::move(d), std::move(e));
}

void write_tridiagonal(const TridiagonalMatrix& t, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot write tridiagonal file: " + path);
    out << t.n << "\n";
    char buf[40];
    for (double v : t.d) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << "\n";
    }
    for (double v : t.e) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << "\n";
    }
}

} // namespace br
