#pragma once

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "specbound/errors.hpp"
#include "specbound/matrix.hpp"

namespace specbound {

inline constexpr double kDefaultEigTol = 1e-12;
inline constexpr std::size_t kDefaultMaxIter = 100000;

namespace detail {

inline double dot(const std::vector<double>& x, const std::vector<double>& y) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * y[i];
    }
    return s;
}

inline void symmetric_matvec(const NonnegMatrix& s, const std::vector<double>& x,
                             std::vector<double>& y) noexcept {
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = s.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += r[j] * x[j];
        }
        y[i] = acc;
    }
}

inline double max_row_sum(const NonnegMatrix& s) noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double acc = 0.0;
        for (double v : s.row(i)) {
            acc += v;
        }
        best = std::max(best, acc);
    }
    return best;
}

/// Number of eigenvalues of the tridiagonal (a, b) strictly below x.
inline std::size_t sturm_count(const std::vector<double>& a, const std::vector<double>& b,
                               double x) noexcept {
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = a[i] - x - (i == 0 ? 0.0 : b[i - 1] * b[i - 1] / d);
        if (d == 0.0) {
            d = -std::numeric_limits<double>::min();
        }
        if (d < 0.0) {
            ++count;
        }
    }
    return count;
}

/// Largest eigenvalue of the tridiagonal (a, b), bisected to full precision
/// from a known lower bound.
inline double tridiagonal_max(const std::vector<double>& a, const std::vector<double>& b,
                              double lo) noexcept {
    double hi = lo;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double off = (i > 0 ? std::abs(b[i - 1]) : 0.0) + (i < b.size() ? std::abs(b[i]) : 0.0);
        hi = std::max(hi, a[i] + off);
    }
    const std::size_t n = a.size();
    while (true) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            return hi;
        }
        (sturm_count(a, b, mid) == n ? hi : lo) = mid;
    }
}

/// Unit eigenvector of the tridiagonal (a, b) for its largest eigenvalue, by
/// two steps of inverse iteration with a shift just above it. T - shift*I is
/// then negative definite, so the LDL^T solve needs no pivoting.
inline std::vector<double> tridiagonal_top_vector(const std::vector<double>& a,
                                                  const std::vector<double>& b, double top) {
    const std::size_t n = a.size();
    double spread = std::abs(top);
    for (std::size_t i = 0; i < n; ++i) {
        spread = std::max(spread, std::abs(a[i]) + (i < b.size() ? std::abs(b[i]) : 0.0));
    }
    const double shift = top + 64.0 * std::numeric_limits<double>::epsilon() * spread +
                         std::numeric_limits<double>::min();
    std::vector<double> d(n);
    std::vector<double> l(n, 0.0);
    d[0] = a[0] - shift;
    for (std::size_t i = 1; i < n; ++i) {
        l[i] = b[i - 1] / d[i - 1];
        d[i] = a[i] - shift - l[i] * b[i - 1];
    }
    std::vector<double> y(n, 1.0);
    for (int step = 0; step < 2; ++step) {
        for (std::size_t i = 1; i < n; ++i) {
            y[i] -= l[i] * y[i - 1];
        }
        y[n - 1] /= d[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) {
            y[i] = y[i] / d[i] - l[i + 1] * y[i + 1];
        }
        double norm = 0.0;
        for (double v : y) {
            norm = std::max(norm, std::abs(v));
        }
        double ss = 0.0;
        for (double& v : y) {
            v /= norm;
            ss += v * v;
        }
        for (double& v : y) {
            v /= std::sqrt(ss);
        }
    }
    return y;
}

}  // namespace detail

/// Largest eigenvalue of a symmetric nonnegative matrix.
///
/// Lanczos iteration with full reorthogonalization, started from the
/// all-ones vector (which has a component of at least 1/sqrt(n) along the
/// nonnegative Perron vector). The matrix is used divided by its largest
/// entry and the result scaled back.
///
/// After each step the top Ritz pair (rho, x) is formed and its residual
/// ||Sx - rho x|| computed exactly from the tridiagonal factorization. The
/// iteration stops once that residual is at most tol * rho (relative to the
/// normalized matrix, whose root is at least 1), or when the Krylov space
/// becomes invariant, in which case rho is exact.
/// max_iter caps the Krylov dimension.
inline double perron_root(const SymmetricNonnegMatrix& s, double tol = kDefaultEigTol,
                          std::size_t max_iter = kDefaultMaxIter) {
    if (!(tol > 0.0)) {
        throw InvalidTolerance("perron_root requires tol > 0");
    }
    if (max_iter < 1) {
        throw InvalidArgument("perron_root requires max_iter >= 1");
    }
    const NonnegMatrix& m = s.matrix();
    const std::size_t n = m.size();
    if (m.is_zero()) {
        return 0.0;
    }
    if (n == 1) {
        return m(0, 0);
    }

    const double scale = m.max_entry();
    const double row_bound = detail::max_row_sum(m) / scale;
    std::vector<std::vector<double>> q;
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> w(n);
    q.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double rho = 0.0;

    for (std::size_t j = 0; j < max_iter; ++j) {
        detail::symmetric_matvec(m, q[j], w);
        for (double& v : w) {
            v /= scale;
        }
        alpha.push_back(detail::dot(q[j], w));
        // Gram-Schmidt against the whole basis, twice.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& qi : q) {
                const double c = detail::dot(qi, w);
                for (std::size_t i = 0; i < n; ++i) {
                    w[i] -= c * qi[i];
                }
            }
        }
        const double b = std::sqrt(detail::dot(w, w));

        const double top = detail::tridiagonal_max(alpha, beta, rho);
        const auto y = detail::tridiagonal_top_vector(alpha, beta, top);
        const std::size_t dim = alpha.size();
        // Rayleigh quotient of y and the residual of (T - rho) y.
        std::vector<double> ty(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            ty[i] = alpha[i] * y[i] + (i > 0 ? beta[i - 1] * y[i - 1] : 0.0) +
                    (i + 1 < dim ? beta[i] * y[i + 1] : 0.0);
        }
        rho = std::min(std::max(detail::dot(y, ty), rho), top);
        double res2 = b * b * y[dim - 1] * y[dim - 1];
        for (std::size_t i = 0; i < dim; ++i) {
            res2 += (ty[i] - rho * y[i]) * (ty[i] - rho * y[i]);
        }

        const bool invariant =
            dim == n || b <= 16.0 * std::numeric_limits<double>::epsilon() * row_bound;
        if (invariant || std::sqrt(res2) <= tol * rho) {
            return rho * scale;
        }
        beta.push_back(b);
        for (double& v : w) {
            v /= b;
        }
        q.push_back(w);
    }
    throw NoConvergence(rho * scale, max_iter);
}

/// Numerical radius of a nonnegative matrix, w(A) = r((A + A^T)/2).
inline double numerical_radius_nonneg(const NonnegMatrix& a, double tol = kDefaultEigTol,
                                      std::size_t max_iter = kDefaultMaxIter) {
    return perron_root(arithmetic_symmetrization(a), tol, max_iter);
}

}  // namespace specbound
