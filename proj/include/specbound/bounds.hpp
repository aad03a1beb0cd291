#pragma once

// Lower bounds rho_k = r(S(A^(2^k)))^(2^-k) from the geometric symmetrization
// and upper bounds sigma_k = r(M(A^(2^k)))^(2^-k) from the arithmetic one,
// evaluated along a single scaled squaring ladder A, A^2, A^4, ...

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "specbound/errors.hpp"
#include "specbound/matrix.hpp"
#include "specbound/perron.hpp"

namespace specbound {

inline constexpr int kDefaultKMax = 30;
inline constexpr double kDefaultGapTol = 1e-8;

struct BoundsReport {
    std::size_t n = 0;
    std::vector<double> rho;
    std::vector<double> sigma;
    /// log_scale of the ScaledMatrix for A^(2^k), one per computed level.
    std::vector<double> log_scales;
    /// Index of the last computed level.
    int k_max = 0;
    bool converged = false;
    /// (max rho, min sigma).
    std::pair<double, double> interval{0.0, 0.0};

    [[nodiscard]] double gap() const noexcept { return interval.second - interval.first; }
};

namespace detail {

/// r^(2^-k) * exp(L * 2^-k) for a root r of the level-k scaled base.
inline double level_bound(double root, double log_scale, int k) {
    if (root == 0.0) {
        return 0.0;
    }
    return std::exp(std::ldexp(std::log(root) + log_scale, -k));
}

inline void check_k_max(int k_max) {
    if (k_max < 0) {
        throw InvalidArgument("kMax must be >= 0");
    }
}

template <class Symmetrize>
std::vector<double> bound_sequence(const NonnegMatrix& a, int k_max, double eig_tol,
                                   Symmetrize symmetrize) {
    check_k_max(k_max);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    ScaledMatrix x = to_scaled(a);
    for (int k = 0; k <= k_max; ++k) {
        double root = 0.0;
        try {
            root = perron_root(symmetrize(x.base()), eig_tol);
        } catch (const NoConvergence& e) {
            throw e.at_level(k);
        }
        out.push_back(level_bound(root, x.log_scale(), k));
        if (k < k_max) {
            x = scaled_square(x);
        }
    }
    return out;
}

}  // namespace detail

/// [rho_0, ..., rho_kMax]; nondecreasing and bounded above by r(A).
inline std::vector<double> lower_sequence(const NonnegMatrix& a, int k_max,
                                          double eig_tol = kDefaultEigTol) {
    return detail::bound_sequence(a, k_max, eig_tol, [](const NonnegMatrix& b) {
        return geometric_symmetrization(b);
    });
}

/// [sigma_0, ..., sigma_kMax]; nonincreasing, bounded below by r(A), and
/// convergent to r(A).
inline std::vector<double> upper_sequence(const NonnegMatrix& a, int k_max,
                                          double eig_tol = kDefaultEigTol) {
    return detail::bound_sequence(a, k_max, eig_tol, [](const NonnegMatrix& b) {
        return arithmetic_symmetrization(b);
    });
}

/// Both sequences on one squaring ladder. Stops at the first level where
/// min(sigma) - max(rho) <= gap_tol * max(1, min(sigma)); otherwise runs to
/// k_max and reports converged = false. Stagnation of rho is not treated as
/// convergence.
inline BoundsReport sandwich(const NonnegMatrix& a, int k_max, double gap_tol = kDefaultGapTol,
                             double eig_tol = kDefaultEigTol) {
    detail::check_k_max(k_max);
    if (!(gap_tol > 0.0)) {
        throw InvalidTolerance("gapTol must be > 0");
    }
    if (!(eig_tol > 0.0)) {
        throw InvalidTolerance("eigTol must be > 0");
    }

    BoundsReport report;
    report.n = a.size();
    double lo = 0.0;
    double hi = 0.0;

    ScaledMatrix x = to_scaled(a);
    for (int k = 0; k <= k_max; ++k) {
        double r_geo = 0.0;
        double r_ari = 0.0;
        try {
            r_geo = perron_root(geometric_symmetrization(x.base()), eig_tol);
            r_ari = perron_root(arithmetic_symmetrization(x.base()), eig_tol);
        } catch (const NoConvergence& e) {
            throw e.at_level(k);
        }
        const double rho = detail::level_bound(r_geo, x.log_scale(), k);
        const double sigma = detail::level_bound(r_ari, x.log_scale(), k);
        report.rho.push_back(rho);
        report.sigma.push_back(sigma);
        report.log_scales.push_back(x.log_scale());
        report.k_max = k;

        lo = (k == 0) ? rho : std::max(lo, rho);
        hi = (k == 0) ? sigma : std::min(hi, sigma);
        if (hi - lo <= gap_tol * std::max(1.0, hi)) {
            report.converged = true;
            break;
        }
        if (k < k_max) {
            x = scaled_square(x);
        }
    }
    report.interval = {lo, hi};
    return report;
}

}  // namespace specbound
