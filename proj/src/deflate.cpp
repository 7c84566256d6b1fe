#include "br/deflate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "br/errors.hpp"

namespace br {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;
}

void BoundaryState::validate() const {
    const std::size_t n = local_lambda.size();
    if (blo.size() != n || bhi.size() != n || col_perm.size() != n || col_sign.size() != n)
        throw DimensionMismatch("boundary state: field lengths disagree");
    auto norm_sq = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v)
            s += x * x;
        return s;
    };
    const double tol = 1.0 + 64.0 * static_cast<double>(n) * kEps;
    if (norm_sq(blo) > tol * tol || norm_sq(bhi) > tol * tol)
        throw InvalidArgument("boundary state: row norm exceeds 1 + tol");
}

std::vector<double> build_z(const BoundaryState& left, const BoundaryState& right, int sign) {
    if (left.bhi.size() != left.size() || right.blo.size() != right.size())
        throw DimensionMismatch("build_z: malformed boundary state");
    std::vector<double> z;
    z.reserve(left.size() + right.size());
    for (double v : left.bhi)
        z.push_back(sign < 0 ? -v : v);
    for (double v : right.blo)
        z.push_back(v);
    return z;
}

MergePrep deflate_merge(std::span<const double> d_in, std::span<const double> z_in,
                        double rho, double tol_scale) {
    const std::size_t n = d_in.size();
    if (z_in.size() != n || n == 0)
        throw DimensionMismatch("deflate_merge: d/z length mismatch");
    if (!(rho > 0.0))
        throw InvalidArgument("deflate_merge: rho must be positive");

    MergePrep prep;
    prep.rho = rho;
    prep.signs.assign(n, static_cast<std::int8_t>(1));

    double dmax = 0.0, zmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dmax = std::max(dmax, std::abs(d_in[i]));
        zmax = std::max(zmax, std::abs(z_in[i]));
    }
    prep.tol = 8.0 * kEps * std::max(dmax, zmax) * tol_scale;

    // Stable ascending sort of the merged poles, ties by original index.
    prep.perm.resize(n);
    std::iota(prep.perm.begin(), prep.perm.end(), 0);
    std::stable_sort(prep.perm.begin(), prep.perm.end(),
                     [&](std::int32_t a, std::int32_t b) { return d_in[a] < d_in[b]; });

    std::vector<double> z(z_in.begin(), z_in.end());

    // Walk the sorted poles. A pole with negligible weight deflates at its
    // own value; a surviving pole too close to the previous survivor is
    // rotated into it and deflates at its own value.
    std::int32_t prev = -1; // child index of the last survivor
    for (std::size_t k = 0; k < n; ++k) {
        const std::int32_t i = prep.perm[k];
        const double di = d_in[static_cast<std::size_t>(i)];
        if (std::abs(z[static_cast<std::size_t>(i)]) <= prep.tol) {
            prep.deflated.emplace_back(i, di);
            continue;
        }
        if (prev >= 0 &&
            std::abs(di - d_in[static_cast<std::size_t>(prev)]) <= prep.tol) {
            const double zp = z[static_cast<std::size_t>(prev)];
            const double zq = z[static_cast<std::size_t>(i)];
            const double r = std::hypot(zp, zq);
            const double c = zp / r;
            const double s = zq / r;
            z[static_cast<std::size_t>(prev)] = r;
            z[static_cast<std::size_t>(i)] = 0.0;
            prep.givens.push_back({prev, i, c, s});
            prep.deflated.emplace_back(i, di);
            continue;
        }
        prev = i;
        prep.active_pos.push_back(static_cast<std::int32_t>(k));
        prep.d_active.push_back(di);
        prep.z_active.push_back(0.0); // filled after all rotations are known
    }

    // Rotations can update a survivor's weight after it was accepted, so
    // gather the active weights once the walk is complete.
    for (std::size_t a = 0; a < prep.active_pos.size(); ++a) {
        const std::int32_t child = prep.perm[static_cast<std::size_t>(prep.active_pos[a])];
        prep.z_active[a] = z[static_cast<std::size_t>(child)];
    }
    return prep;
}

void apply_givens(Matrix& rows, std::int32_t p, std::int32_t q, double c, double s) {
    const auto up = static_cast<std::size_t>(p);
    const auto uq = static_cast<std::size_t>(q);
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        double* row = rows.row(r).data();
        const double xp = row[up];
        const double xq = row[uq];
        row[up] = c * xp + s * xq;
        row[uq] = c * xq - s * xp;
    }
}

Matrix apply_prep_to_rows(const Matrix& rows, const MergePrep& prep) {
    const std::size_t n = prep.total();
    if (rows.cols() != n)
        throw DimensionMismatch("apply_prep_to_rows: column count mismatch");
    Matrix work = rows;
    for (std::size_t j = 0; j < n; ++j) {
        if (prep.signs[j] < 0)
            for (std::size_t r = 0; r < work.rows(); ++r)
                work(r, j) = -work(r, j);
    }
    for (const GivensRecord& g : prep.givens)
        apply_givens(work, g.p, g.q, g.c, g.s);
    Matrix out(work.rows(), n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto src = static_cast<std::size_t>(prep.perm[k]);
        for (std::size_t r = 0; r < work.rows(); ++r)
            out(r, k) = work(r, src);
    }
    return out;
}

} // namespace br
