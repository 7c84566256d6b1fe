#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace br {

/// Active diagonal-plus-rank-one problem diag(d) + rho * z * z^T with
/// strictly increasing poles d, all-nonzero weights z, and rho > 0.
struct SecularProblem {
    std::vector<double> d;
    std::vector<double> z;
    double rho = 1.0;

    std::size_t size() const { return d.size(); }
    void validate() const;
};

/// One secular root stored compactly: lambda = d[origin_index] + tau, plus
/// cached denominator entries for the bracketing poles, where direct
/// subtraction would lose relative accuracy.
struct CompactRoot {
    struct NearEntry {
        std::int32_t index = -1;
        double delta = 0.0;
    };
    std::int32_t origin_index = -1;
    double tau = 0.0;
    NearEntry near[2];
    int near_count = 0;
};

inline double root_value(const SecularProblem& p, const CompactRoot& r) {
    return p.d[static_cast<std::size_t>(r.origin_index)] + r.tau;
}

/// f(lambda) = 1 + rho * sum_i z_i^2 / (d_i - lambda). Throws PoleHit when
/// lambda equals a pole exactly.
double secular_f(double lambda, const SecularProblem& p);

/// Solves for the j-th secular root (0-based, ascending). The iteration
/// works in the shifted variable tau relative to the nearer bracketing
/// pole and never forms d_i - lambda by direct subtraction for the origin
/// pole. Safeguarded two-pole rational interpolation with bisection
/// fallback; throws NoConvergence if neither converges.
CompactRoot solve_root(std::size_t j, const SecularProblem& p);

/// Rebuilds the full denominator vector Delta_i = d_i - lambda from the
/// compact representation: cached values verbatim for near indices, the
/// two-subtraction formula (d_i - d_origin) - tau for far indices.
/// Throws MalformedCompactRoot on duplicate or illegal near indices.
std::vector<double> reconstruct_delta(const SecularProblem& p, const CompactRoot& r);
void reconstruct_delta(const SecularProblem& p, const CompactRoot& r, std::span<double> out);

/// Unit secular eigenvector column y_i = (z_i / Delta_i) / ||z / Delta||,
/// built on reconstruct_delta denominators and sign-canonicalized so the
/// largest-magnitude entry is positive. Throws ZeroDenominator if any
/// reconstructed Delta_i is exactly zero.
std::vector<double> secular_column(const SecularProblem& p, const CompactRoot& r);

/// Weight vector consistent with the computed roots: |z_hat_i| is derived
/// from the product identity relating poles and roots, signs copied from
/// z. Columns built from (d, z_hat, rho) and the computed roots are
/// eigenvectors of a nearby problem, which keeps streamed boundary rows
/// orthogonal even for tightly clustered roots.
std::vector<double> refreshed_weights(const SecularProblem& p, std::span<const CompactRoot> roots);

} // namespace br
