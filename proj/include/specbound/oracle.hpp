#pragma once

// Reference values for r(A) that share no code path with perron_root:
// a Gelfand-formula estimate built from Frobenius norms of the squaring
// ladder, and a cyclic Jacobi eigensolver for small symmetric matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "specbound/errors.hpp"
#include "specbound/matrix.hpp"

namespace specbound {

enum class OracleMethod { Gelfand, Jacobi };

struct OracleResult {
    double value = 0.0;
    OracleMethod method = OracleMethod::Gelfand;
    /// Levels of the squaring ladder (Gelfand) or sweeps (Jacobi).
    int iterations = 0;
    /// Last relative change of the estimate (Gelfand) or relative
    /// off-diagonal mass (Jacobi).
    double residual = 0.0;
};

inline constexpr int kDefaultGelfandLevels = 64;
inline constexpr double kDefaultGelfandTol = 1e-12;
inline constexpr std::size_t kJacobiMaxDim = 64;
inline constexpr double kDefaultJacobiTol = 1e-14;

/// Spectral radius from ||A^(2^n)||_F^(2^-n) -> r(A).
///
/// Writing e_n = ln ||A^(2^n)||_F / 2^n = ln r(A) + c_n / 2^n, the constants
/// c_n settle (exponentially fast for a dominant simple root, up to
/// logarithmic growth for Jordan blocks), so the extrapolation
/// x_n = 2 e_n - e_(n-1) removes the leading 1/2^n error. The method returns
/// exp(x_n) at the first level where two consecutive extrapolations differ by
/// at most tol * max(1, value). A power that is exactly zero means A is
/// nilpotent and the result is 0.
inline OracleResult gelfand_radius(const NonnegMatrix& a, int max_levels = kDefaultGelfandLevels,
                                   double tol = kDefaultGelfandTol) {
    if (max_levels < 1) {
        throw InvalidArgument("gelfand_radius requires maxLevels >= 1");
    }
    if (!(tol > 0.0)) {
        throw InvalidTolerance("gelfand_radius requires tol > 0");
    }

    ScaledMatrix x = to_scaled(a);
    double prev_log = 0.0;
    double prev_value = 0.0;
    double change = 0.0;
    for (int level = 0; level <= max_levels; ++level) {
        if (x.is_zero()) {
            return {0.0, OracleMethod::Gelfand, level, 0.0};
        }
        double sumsq = 0.0;
        for (double v : x.base().data()) {
            sumsq += v * v;
        }
        const double log_est = std::ldexp(0.5 * std::log(sumsq) + x.log_scale(), -level);
        if (level >= 1) {
            const double value = std::exp(2.0 * log_est - prev_log);
            if (level >= 2) {
                change = std::abs(value - prev_value) / std::max(1.0, value);
                if (change <= tol) {
                    return {value, OracleMethod::Gelfand, level, change};
                }
            }
            prev_value = value;
        }
        prev_log = log_est;
        if (level < max_levels) {
            x = scaled_square(x);
        }
    }
    throw NoStabilization(prev_value, change, max_levels);
}

struct JacobiResult {
    /// Descending.
    std::vector<double> eigenvalues;
    int sweeps = 0;
    /// Off-diagonal Frobenius mass relative to ||S||_F at exit.
    double residual = 0.0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass is at most
/// tol * ||S||_F. Limited to n <= 64.
inline JacobiResult jacobi_eigensystem(const SymmetricNonnegMatrix& s,
                                       double tol = kDefaultJacobiTol, int max_sweeps = 100) {
    const std::size_t n = s.size();
    if (n > kJacobiMaxDim) {
        throw DimensionTooLarge(n, kJacobiMaxDim);
    }
    if (!(tol > 0.0)) {
        throw InvalidTolerance("jacobi_eigenvalues requires tol > 0");
    }

    std::vector<double> a(s.matrix().data().begin(), s.matrix().data().end());
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    double frob2 = 0.0;
    for (double v : a) {
        frob2 += v * v;
    }
    const double frob = std::sqrt(frob2);
    auto off_mass = [&] {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += 2.0 * at(i, j) * at(i, j);
            }
        }
        return std::sqrt(off);
    };

    JacobiResult result;
    double off = off_mass();
    while (frob > 0.0 && off > tol * frob) {
        if (result.sweeps == max_sweeps) {
            throw NoConvergence(off / frob, static_cast<std::size_t>(max_sweeps));
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double app = at(p, p);
                const double aqq = at(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    const double nkp = c * akp - sn * akq;
                    const double nkq = sn * akp + c * akq;
                    at(k, p) = nkp;
                    at(p, k) = nkp;
                    at(k, q) = nkq;
                    at(q, k) = nkq;
                }
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
            }
        }
        ++result.sweeps;
        off = off_mass();
    }

    result.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.eigenvalues[i] = at(i, i);
    }
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end(), std::greater<>());
    result.residual = frob > 0.0 ? off / frob : 0.0;
    return result;
}

inline std::vector<double> jacobi_eigenvalues(const SymmetricNonnegMatrix& s,
                                              double tol = kDefaultJacobiTol) {
    return jacobi_eigensystem(s, tol).eigenvalues;
}

/// Largest Jacobi eigenvalue packaged as an oracle result.
inline OracleResult jacobi_radius(const SymmetricNonnegMatrix& s, double tol = kDefaultJacobiTol) {
    auto r = jacobi_eigensystem(s, tol);
    return {r.eigenvalues.front(), OracleMethod::Jacobi, r.sweeps, r.residual};
}

}  // namespace specbound
