#include "br/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "br/errors.hpp"
#include "br/qrql.hpp"

namespace br {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;

struct EvalResult {
    double f = 0.0;        // secular function value
    double fprime = 0.0;   // derivative rho * sum z^2 / delta^2
    double abs_sum = 0.0;  // rho * sum |z^2 / delta|, for the stopping test
    double psi_prime = 0.0; // derivative restricted to poles <= jsplit
    bool pole = false;     // some denominator was exactly zero
};

/// Evaluates f and companions at lambda = d[org] + tau without ever
/// forming d_i - lambda; the origin denominator is exactly -tau.
EvalResult eval_shifted(const SecularProblem& p, std::size_t org, double tau,
                        std::size_t jsplit) {
    EvalResult r;
    const double d_org = p.d[org];
    double sum = 0.0, sum_abs = 0.0, sum_d = 0.0, psi_d = 0.0;
    const std::size_t k = p.size();
    for (std::size_t i = 0; i < k; ++i) {
        const double del = (p.d[i] - d_org) - tau;
        if (del == 0.0) {
            r.pole = true;
            return r;
        }
        const double zz = p.z[i] * p.z[i];
        const double term = zz / del;
        sum += term;
        sum_abs += std::abs(term);
        const double dterm = term / del;
        sum_d += dterm;
        if (i <= jsplit)
            psi_d += dterm;
    }
    r.f = 1.0 + p.rho * sum;
    r.fprime = p.rho * sum_d;
    r.abs_sum = p.rho * sum_abs;
    r.psi_prime = p.rho * psi_d;
    return r;
}

} // namespace

void SecularProblem::validate() const {
    if (d.empty() || d.size() != z.size())
        throw InvalidArgument("secular: empty problem or d/z length mismatch");
    if (!(rho > 0.0))
        throw InvalidArgument("secular: rho must be positive");
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (!(d[i] < d[i + 1]))
            throw InvalidArgument("secular: poles must be strictly increasing");
    for (double v : z)
        if (v == 0.0)
            throw InvalidArgument("secular: zero weight entry");
}

double secular_f(double lambda, const SecularProblem& p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double del = p.d[i] - lambda;
        if (del == 0.0)
            throw PoleHit("secular_f: lambda equals a pole");
        sum += p.z[i] * p.z[i] / del;
    }
    return 1.0 + p.rho * sum;
}

CompactRoot solve_root(std::size_t j, const SecularProblem& p) {
    const std::size_t k = p.size();
    if (j >= k)
        throw InvalidArgument("solve_root: root index out of range");

    CompactRoot root;

    if (k == 1) {
        // f(lambda) = 1 + rho z^2 / (d - lambda) vanishes at d + rho z^2.
        root.origin_index = 0;
        root.tau = p.rho * p.z[0] * p.z[0];
        root.near[0] = {0, -root.tau};
        root.near_count = 1;
        return root;
    }

    const bool last = (j == k - 1);
    double zsq = 0.0;
    for (double v : p.z)
        zsq += v * v;

    // Pick the origin pole and a tau bracket (lo, hi) with f < 0 on the
    // left and f > 0 on the right of the root.
    std::size_t org;
    double lo, hi;
    double other_gap = 0.0; // d[other bracket pole] - d[org]; 0 when absent
    if (last) {
        org = k - 1;
        lo = 0.0;
        hi = p.rho * zsq;
    } else {
        const double gap = p.d[j + 1] - p.d[j];
        const EvalResult mid = eval_shifted(p, j, 0.5 * gap, j);
        if (mid.pole || mid.f > 0.0) {
            org = j;
            lo = 0.0;
            hi = gap;
            other_gap = p.d[j + 1] - p.d[j];
        } else {
            org = j + 1;
            lo = -(p.d[j + 1] - p.d[j]);
            hi = 0.0;
            other_gap = p.d[j] - p.d[j + 1];
        }
    }

    double tau = 0.5 * (lo + hi);
    const int max_model_iters = 100;
    const int max_total_iters = 400;
    bool converged = false;

    for (int iter = 0; iter < max_total_iters; ++iter) {
        EvalResult ev = eval_shifted(p, org, tau, j);
        if (ev.pole) {
            // Landed exactly on a pole image; retreat to the bracket middle.
            tau = 0.5 * (lo + hi);
            ev = eval_shifted(p, org, tau, j);
            if (ev.pole)
                throw NoConvergence("solve_root: repeated exact pole hit");
        }

        const double ftol =
            static_cast<double>(k) * kEps * (1.0 + ev.abs_sum);
        if (std::abs(ev.f) <= ftol) {
            converged = true;
            break;
        }

        // Maintain the bracket: f is increasing in tau.
        if (ev.f < 0.0)
            lo = tau;
        else
            hi = tau;

        const double lambda_abs = std::abs(p.d[org] + tau);
        if (hi - lo <= 4.0 * kEps * lambda_abs) {
            converged = true;
            break;
        }

        double tau_next = std::numeric_limits<double>::quiet_NaN();
        if (iter < max_model_iters) {
            // Rational model a + b/(delta_org) + c/(delta_other) fitted to
            // f and f' at the current iterate.
            const double dl = -tau; // origin-pole denominator, exact
            if (last) {
                const double b = ev.fprime * dl * dl;
                const double a = ev.f - ev.fprime * dl;
                if (a != 0.0) {
                    const double eta = dl + b / a;
                    tau_next = tau + eta;
                }
            } else {
                // Split the derivative into the two model poles: everything
                // at or left of the root index leans on the left pole,
                // the rest on the right pole.
                const double d_left = (org == j) ? -tau : other_gap - tau;
                const double d_right = (org == j) ? other_gap - tau : -tau;
                const double psi_p = ev.psi_prime;
                const double phi_p = ev.fprime - ev.psi_prime;
                const double b = psi_p * d_left * d_left;
                const double c = phi_p * d_right * d_right;
                const double a = ev.f - psi_p * d_left - phi_p * d_right;
                // Solve a*(dL-eta)*(dR-eta) + b*(dR-eta) + c*(dL-eta) = 0.
                const double qa = a;
                const double qb = -(a * (d_left + d_right) + b + c);
                const double qc = a * d_left * d_right + b * d_right + c * d_left;
                double eta1 = std::numeric_limits<double>::quiet_NaN();
                double eta2 = std::numeric_limits<double>::quiet_NaN();
                if (qa == 0.0) {
                    if (qb != 0.0)
                        eta1 = -qc / qb;
                } else {
                    const double disc = qb * qb - 4.0 * qa * qc;
                    if (disc >= 0.0) {
                        const double sq = std::sqrt(disc);
                        const double qq = -0.5 * (qb + (qb >= 0 ? sq : -sq));
                        if (qa != 0.0)
                            eta1 = qq / qa;
                        if (qq != 0.0)
                            eta2 = qc / qq;
                    }
                }
                const double cand1 = tau + eta1;
                const double cand2 = tau + eta2;
                const bool ok1 = std::isfinite(cand1) && cand1 > lo && cand1 < hi;
                const bool ok2 = std::isfinite(cand2) && cand2 > lo && cand2 < hi;
                if (ok1 && ok2)
                    tau_next = std::abs(eta1) <= std::abs(eta2) ? cand1 : cand2;
                else if (ok1)
                    tau_next = cand1;
                else if (ok2)
                    tau_next = cand2;
            }
        }

        if (!std::isfinite(tau_next) || tau_next <= lo || tau_next >= hi ||
            tau_next == tau)
            tau_next = 0.5 * (lo + hi); // bisection safeguard
        tau = tau_next;
    }

    if (!converged)
        throw NoConvergence("solve_root: secular iteration failed");

    root.origin_index = static_cast<std::int32_t>(org);
    root.tau = tau;
    if (last) {
        root.near[0] = {static_cast<std::int32_t>(k - 1), -tau};
        root.near_count = 1;
    } else {
        const double d_org = p.d[org];
        const std::size_t obr = (org == j) ? j + 1 : j;
        root.near[0] = {static_cast<std::int32_t>(j),
                        (org == j) ? -tau : (p.d[j] - d_org) - tau};
        root.near[1] = {static_cast<std::int32_t>(j + 1),
                        (org == j + 1) ? -tau : (p.d[j + 1] - d_org) - tau};
        root.near_count = 2;
        (void)obr;
    }
    return root;
}

void reconstruct_delta(const SecularProblem& p, const CompactRoot& r, std::span<double> out) {
    const std::size_t k = p.size();
    if (out.size() != k)
        throw DimensionMismatch("reconstruct_delta: output length mismatch");
    if (r.origin_index < 0 || static_cast<std::size_t>(r.origin_index) >= k)
        throw MalformedCompactRoot("reconstruct_delta: origin index out of range");
    if (r.near_count < 0 || r.near_count > 2)
        throw MalformedCompactRoot("reconstruct_delta: bad near-cache count");
    for (int a = 0; a < r.near_count; ++a) {
        const auto ix = r.near[a].index;
        if (ix < 0 || static_cast<std::size_t>(ix) >= k)
            throw MalformedCompactRoot("reconstruct_delta: near index out of range");
    }
    if (r.near_count == 2 && r.near[0].index == r.near[1].index)
        throw MalformedCompactRoot("reconstruct_delta: duplicate near index");

    const double d_org = p.d[static_cast<std::size_t>(r.origin_index)];
    for (std::size_t i = 0; i < k; ++i)
        out[i] = (p.d[i] - d_org) - r.tau;
    for (int a = 0; a < r.near_count; ++a)
        out[static_cast<std::size_t>(r.near[a].index)] = r.near[a].delta;
}

std::vector<double> reconstruct_delta(const SecularProblem& p, const CompactRoot& r) {
    std::vector<double> out(p.size());
    reconstruct_delta(p, r, out);
    return out;
}

std::vector<double> secular_column(const SecularProblem& p, const CompactRoot& r) {
    std::vector<double> y = reconstruct_delta(p, r);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0)
            throw ZeroDenominator("secular_column: reconstructed delta is zero");
        y[i] = p.z[i] / y[i];
        norm_sq += y[i] * y[i];
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : y)
        v *= inv;
    canonicalize_sign(y);
    return y;
}

std::vector<double> refreshed_weights(const SecularProblem& p, std::span<const CompactRoot> roots) {
    const std::size_t k = p.size();
    if (roots.size() != k)
        throw DimensionMismatch("refreshed_weights: need one root per pole");
    std::vector<double> w(k);
    std::vector<double> delta(k);
    // w_i accumulates delta_ii * prod_{j != i} delta_ij / (d_i - d_j);
    // the result equals -rho * z_i^2 up to roundoff.
    reconstruct_delta(p, roots[0], delta);
    for (std::size_t i = 0; i < k; ++i)
        w[i] = (i == 0) ? delta[0] : delta[i] / (p.d[i] - p.d[0]);
    for (std::size_t j = 1; j < k; ++j) {
        reconstruct_delta(p, roots[j], delta);
        for (std::size_t i = 0; i < k; ++i) {
            if (i == j)
                w[i] *= delta[i];
            else
                w[i] *= delta[i] / (p.d[i] - p.d[j]);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        const double mag = std::sqrt(std::max(0.0, -w[i]));
        w[i] = p.z[i] >= 0.0 ? mag : -mag;
    }
    return w;
}

} // namespace br
