#include <algorithm>
#include <cmath>
#include <limits>

#include "br/errors.hpp"
#include "br/oracle.hpp"

namespace br {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;

struct ActiveRotation {
    std::int32_t p;
    std::int32_t q;
    double c;
    double s;
    double dp; // analytic post-rotation diagonal entries, app -+ t*apq
    double dq;
};

} // namespace

std::vector<double> jacobi_eigenvalues(Matrix a) {
    const std::size_t n = a.rows();
    if (n != a.cols())
        throw InvalidArgument("jacobi: matrix must be square");
    if (n == 0)
        return {};
    if (n == 1)
        return {a(0, 0)};

    double* m = a.data().data();
    const auto at = [m, n](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };

    // Round-robin pairing: slot 0 is fixed, the rest rotate. Every round
    // pairs disjoint index pairs, so the rotation angles of a round can be
    // computed from the same snapshot and applied in any order.
    const std::size_t np = n % 2 == 0 ? n : n + 1; // pad with a bye slot
    std::vector<std::int32_t> ring(np);
    for (std::size_t i = 0; i < np; ++i)
        ring[i] = static_cast<std::int32_t>(i);

    std::vector<ActiveRotation> active;
    active.reserve(np / 2);

    const int max_sweeps = 50;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        // Sum of |off-diagonal| entries drives the early-sweep threshold.
        double off_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                off_sum += std::abs(at(i, j));
        if (off_sum == 0.0) {
            converged = true;
            break;
        }
        const double tresh = sweep < 3 ? 0.2 * off_sum / (static_cast<double>(n) * n) : 0.0;

        std::size_t rotations = 0;
        for (std::size_t round = 0; round + 1 < np; ++round) {
            active.clear();
            for (std::size_t slot = 0; slot < np / 2; ++slot) {
                std::int32_t p = ring[slot];
                std::int32_t q = ring[np - 1 - slot];
                if (static_cast<std::size_t>(p) >= n || static_cast<std::size_t>(q) >= n)
                    continue; // bye slot
                if (p > q)
                    std::swap(p, q);
                const double apq = at(p, q);
                const double app = at(p, p);
                const double aqq = at(q, q);
                if (apq == 0.0)
                    continue;
                if (std::abs(apq) <= kEps * (std::abs(app) + std::abs(aqq))) {
                    at(p, q) = 0.0;
                    at(q, p) = 0.0;
                    continue;
                }
                if (std::abs(apq) < tresh)
                    continue;
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                active.push_back({p, q, c, s});
            }

            if (!active.empty()) {
                rotations += active.size();
                // Row pass: rows p and q of every active pair.
                for (const ActiveRotation& r : active) {
                    double* rp = m + static_cast<std::size_t>(r.p) * n;
                    double* rq = m + static_cast<std::size_t>(r.q) * n;
                    const double c = r.c, s = r.s;
                    for (std::size_t j = 0; j < n; ++j) {
                        const double xp = rp[j];
                        const double xq = rq[j];
                        rp[j] = c * xp - s * xq;
                        rq[j] = s * xp + c * xq;
                    }
                }
                // Column pass, walked row-wise so memory stays sequential.
                for (std::size_t i = 0; i < n; ++i) {
                    double* row = m + i * n;
                    for (const ActiveRotation& r : active) {
                        const double xp = row[r.p];
                        const double xq = row[r.q];
                        row[r.p] = r.c * xp - r.s * xq;
                        row[r.q] = r.s * xp + r.c * xq;
                    }
                }
                for (const ActiveRotation& r : active) {
                    at(r.p, r.q) = 0.0;
                    at(r.q, r.p) = 0.0;
                }
            }

            // Advance the ring: slot 0 fixed, others rotate.
            std::int32_t carry = ring[np - 1];
            for (std::size_t i = np - 1; i >= 2; --i)
                ring[i] = ring[i - 1];
            ring[1] = carry;
        }

        if (rotations == 0 && tresh == 0.0) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NoConvergence("jacobi: sweep limit reached");

    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i)
        lambda[i] = at(i, i);
    std::sort(lambda.begin(), lambda.end());
    return lambda;
}

std::vector<double> dense_eig(const TridiagonalMatrix& t) {
    t.validate();
    if (t.n > 4096)
        throw InvalidArgument("dense_eig: size guard n <= 4096 violated");
    Matrix a(t.n, t.n);
    for (std::size_t i = 0; i < t.n; ++i) {
        a(i, i) = t.d[i];
        if (i + 1 < t.n) {
            a(i, i + 1) = t.e[i];
            a(i + 1, i) = t.e[i];
        }
    }
    return jacobi_eigenvalues(std::move(a));
}

} // namespace br
