#include "br/qrql.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "br/errors.hpp"

namespace br {

namespace {

using idx = std::ptrdiff_t;

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2; // unit roundoff
constexpr double kSafMin = std::numeric_limits<double>::min();

double sign_of(double a, double b) { return b >= 0 ? std::abs(a) : -std::abs(a); }

/// Stable Givens pair with c*g + s*f = r and -s*g + c*f = 0.
void make_givens(double g, double f, double& c, double& s, double& r) {
    if (f == 0.0) {
        c = 1.0;
        s = 0.0;
        r = g;
    } else if (std::abs(f) > std::abs(g)) {
        const double t = g / f;
        const double tt = std::hypot(1.0, t);
        s = 1.0 / tt;
        c = t * s;
        r = f * tt;
    } else {
        const double t = f / g;
        const double tt = std::hypot(1.0, t);
        c = 1.0 / tt;
        s = t * c;
        r = g * tt;
    }
}

/// Eigenvalues of [[a, b], [b, c]]; rt1 carries the larger magnitude.
void eig2x2_values(double a, double b, double c, double& rt1, double& rt2) {
    const double sm = a + c;
    const double df = a - c;
    const double adf = std::abs(df);
    const double tb = b + b;
    const double ab = std::abs(tb);
    double acmx, acmn;
    if (std::abs(a) > std::abs(c)) {
        acmx = a;
        acmn = c;
    } else {
        acmx = c;
        acmn = a;
    }
    double rt;
    if (adf > ab)
        rt = adf * std::sqrt(1.0 + (ab / adf) * (ab / adf));
    else if (adf < ab)
        rt = ab * std::sqrt(1.0 + (adf / ab) * (adf / ab));
    else
        rt = ab * std::sqrt(2.0);
    if (sm < 0.0) {
        rt1 = 0.5 * (sm - rt);
        rt2 = (acmx / rt1) * acmn - (b / rt1) * b;
    } else if (sm > 0.0) {
        rt1 = 0.5 * (sm + rt);
        rt2 = (acmx / rt1) * acmn - (b / rt1) * b;
    } else {
        rt1 = 0.5 * rt;
        rt2 = -0.5 * rt;
    }
}

/// Full symmetric 2x2 eigendecomposition of [[a, b], [b, c]];
/// (cs1, sn1) is the unit eigenvector for rt1.
void eig2x2(double a, double b, double c, double& rt1, double& rt2, double& cs1, double& sn1) {
    const double sm = a + c;
    const double df = a - c;
    const double adf = std::abs(df);
    const double tb = b + b;
    const double ab = std::abs(tb);
    double rt;
    if (adf > ab)
        rt = adf * std::sqrt(1.0 + (ab / adf) * (ab / adf));
    else if (adf < ab)
        rt = ab * std::sqrt(1.0 + (adf / ab) * (adf / ab));
    else
        rt = ab * std::sqrt(2.0);
    eig2x2_values(a, b, c, rt1, rt2);
    const int sgn1 = sm < 0.0 ? -1 : 1;
    double cs;
    int sgn2;
    if (df >= 0.0) {
        cs = df + rt;
        sgn2 = 1;
    } else {
        cs = df - rt;
        sgn2 = -1;
    }
    const double acs = std::abs(cs);
    if (acs > ab) {
        const double ct = -tb / cs;
        sn1 = 1.0 / std::sqrt(1.0 + ct * ct);
        cs1 = ct * sn1;
    } else {
        if (ab == 0.0) {
            cs1 = 1.0;
            sn1 = 0.0;
        } else {
            const double tn = -cs / tb;
            cs1 = 1.0 / std::sqrt(1.0 + tn * tn);
            sn1 = tn * cs1;
        }
    }
    if (sgn1 == sgn2) {
        const double tn = cs1;
        cs1 = -sn1;
        sn1 = tn;
    }
}

/// Right-multiplies the tracked basis by a plane rotation on columns
/// (j, j+1): col_j <- c*col_j - s*col_{j+1}, col_{j+1} <- s*col_j + c*col_{j+1}.
inline void rotate_cols(Matrix& rows, idx j, double c, double s) {
    const auto uj = static_cast<std::size_t>(j);
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        double* row = rows.row(r).data();
        const double xi = row[uj];
        const double xj = row[uj + 1];
        row[uj] = c * xi - s * xj;
        row[uj + 1] = s * xi + c * xj;
    }
}

void scale_range(std::span<double> x, idx lo, idx count, double factor) {
    for (idx k = lo; k < lo + count; ++k)
        x[static_cast<std::size_t>(k)] *= factor;
}

} // namespace

namespace detail {

void steqr_sweeps(std::span<double> dsp, std::span<double> esp, Matrix& rows) {
    const idx n = static_cast<idx>(dsp.size());
    if (n <= 1)
        return;
    double* d = dsp.data();
    double* e = esp.data();

    const double eps2 = kEps * kEps;
    const double ssfmax = std::sqrt(1.0 / kSafMin) / 3.0;
    const double ssfmin = std::sqrt(kSafMin) / eps2;

    const long nmaxit = static_cast<long>(n) * 30;
    long jtot = 0;

    idx l1 = 0;
    while (l1 < n) {
        if (l1 > 0)
            e[l1 - 1] = 0.0;

        // Delimit the next unreduced segment [l, lend].
        idx m = n - 1;
        for (idx k = l1; k < n - 1; ++k) {
            const double tst = std::abs(e[k]);
            if (tst == 0.0) {
                m = k;
                break;
            }
            if (tst <= std::sqrt(std::abs(d[k])) * std::sqrt(std::abs(d[k + 1])) * kEps) {
                e[k] = 0.0;
                m = k;
                break;
            }
        }

        idx l = l1;
        const idx lsv = l;
        idx lend = m;
        const idx lendsv = lend;
        l1 = m + 1;
        if (lend == l)
            continue;

        // Rescale the segment if its magnitude risks over/underflow.
        double anorm = 0.0;
        for (idx k = l; k <= lend; ++k)
            anorm = std::max(anorm, std::abs(d[k]));
        for (idx k = l; k < lend; ++k)
            anorm = std::max(anorm, std::abs(e[k]));
        int iscale = 0;
        if (anorm == 0.0)
            continue;
        if (anorm > ssfmax) {
            iscale = 1;
            scale_range(dsp, l, lend - l + 1, ssfmax / anorm);
            scale_range(esp, l, lend - l, ssfmax / anorm);
        } else if (anorm < ssfmin) {
            iscale = 2;
            scale_range(dsp, l, lend - l + 1, ssfmin / anorm);
            scale_range(esp, l, lend - l, ssfmin / anorm);
        }

        // Iterate from the end with the smaller diagonal entry.
        if (std::abs(d[lend]) < std::abs(d[l]))
            std::swap(l, lend);

        if (lend > l) {
            // QL iteration.
            for (;;) {
                idx mm = lend;
                for (idx k = l; k < lend; ++k) {
                    const double tst = e[k] * e[k];
                    if (tst <= eps2 * std::abs(d[k]) * std::abs(d[k + 1]) + kSafMin) {
                        mm = k;
                        break;
                    }
                }
                if (mm < lend)
                    e[mm] = 0.0;
                double p = d[l];
                if (mm == l) {
                    d[l] = p;
                    ++l;
                    if (l <= lend)
                        continue;
                    break;
                }
                if (mm == l + 1) {
                    double rt1, rt2, c, s;
                    eig2x2(d[l], e[l], d[l + 1], rt1, rt2, c, s);
                    rotate_cols(rows, l, c, -s);
                    d[l] = rt1;
                    d[l + 1] = rt2;
                    e[l] = 0.0;
                    l += 2;
                    if (l <= lend)
                        continue;
                    break;
                }
                if (jtot == nmaxit)
                    break;
                ++jtot;

                // Implicit Wilkinson shift from the leading 2x2.
                double g = (d[l + 1] - p) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[mm] - p + e[l] / (g + sign_of(r, g));
                double s = 1.0;
                double c = 1.0;
                p = 0.0;
                for (idx i = mm - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    make_givens(g, f, c, s, r);
                    if (i != mm - 1)
                        e[i + 1] = r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    rotate_cols(rows, i, c, s);
                }
                d[l] -= p;
                e[l] = g;
            }
        } else {
            // QR iteration.
            for (;;) {
                idx mm = lend;
                for (idx k = l; k > lend; --k) {
                    const double tst = e[k - 1] * e[k - 1];
                    if (tst <= eps2 * std::abs(d[k]) * std::abs(d[k - 1]) + kSafMin) {
                        mm = k;
                        break;
                    }
                }
                if (mm > lend)
                    e[mm - 1] = 0.0;
                double p = d[l];
                if (mm == l) {
                    d[l] = p;
                    --l;
                    if (l >= lend)
                        continue;
                    break;
                }
                if (mm == l - 1) {
                    double rt1, rt2, c, s;
                    eig2x2(d[l - 1], e[l - 1], d[l], rt1, rt2, c, s);
                    rotate_cols(rows, l - 1, c, -s);
                    d[l - 1] = rt1;
                    d[l] = rt2;
                    e[l - 1] = 0.0;
                    l -= 2;
                    if (l >= lend)
                        continue;
                    break;
                }
                if (jtot == nmaxit)
                    break;
                ++jtot;

                double g = (d[l - 1] - p) / (2.0 * e[l - 1]);
                double r = std::hypot(g, 1.0);
                g = d[mm] - p + e[l - 1] / (g + sign_of(r, g));
                double s = 1.0;
                double c = 1.0;
                p = 0.0;
                for (idx i = mm; i < l; ++i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    make_givens(g, f, c, s, r);
                    if (i != mm)
                        e[i - 1] = r;
                    g = d[i] - p;
                    r = (d[i + 1] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i] = g + p;
                    g = c * r - b;
                    rotate_cols(rows, i, c, -s);
                }
                d[l] -= p;
                e[l - 1] = g;
            }
        }

        if (iscale == 1) {
            scale_range(dsp, lsv, lendsv - lsv + 1, anorm / ssfmax);
            scale_range(esp, lsv, lendsv - lsv, anorm / ssfmax);
        } else if (iscale == 2) {
            scale_range(dsp, lsv, lendsv - lsv + 1, anorm / ssfmin);
            scale_range(esp, lsv, lendsv - lsv, anorm / ssfmin);
        }

        if (jtot >= nmaxit) {
            for (idx k = 0; k < n - 1; ++k)
                if (e[k] != 0.0)
                    throw NoConvergence("qrql: sweep limit of 30n iterations reached");
        }
    }
}

void sort_and_permute(std::span<double> d, Matrix& rows) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<double> tmp(n);
    for (std::size_t k = 0; k < n; ++k)
        tmp[k] = d[order[k]];
    std::copy(tmp.begin(), tmp.end(), d.begin());
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        auto row = rows.row(r);
        for (std::size_t k = 0; k < n; ++k)
            tmp[k] = row[order[k]];
        std::copy(tmp.begin(), tmp.end(), row.begin());
    }
}

} // namespace detail

int canonicalize_sign(std::span<double> x) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = std::abs(x[i]);
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (!x.empty() && x[arg] < 0.0) {
        for (double& v : x)
            v = -v;
        return -1;
    }
    return +1;
}

std::vector<double> eigenvalues_qrql(const TridiagonalMatrix& t) {
    t.validate();
    std::vector<double> d = t.d;
    std::vector<double> e = t.e;
    Matrix none(0, t.n);
    detail::steqr_sweeps(d, e, none);
    std::sort(d.begin(), d.end());
    return d;
}

LeafEigenResult leaf_eig(const TridiagonalMatrix& t) {
    t.validate();
    LeafEigenResult res;
    res.lambda = t.d;
    std::vector<double> e = t.e;
    res.q = Matrix::identity(t.n);
    detail::steqr_sweeps(res.lambda, e, res.q);
    detail::sort_and_permute(res.lambda, res.q);
    std::vector<double> col(t.n);
    for (std::size_t j = 0; j < t.n; ++j) {
        for (std::size_t i = 0; i < t.n; ++i)
            col[i] = res.q(i, j);
        if (canonicalize_sign(col) < 0)
            for (std::size_t i = 0; i < t.n; ++i)
                res.q(i, j) = col[i];
    }
    return res;
}

} // namespace br
