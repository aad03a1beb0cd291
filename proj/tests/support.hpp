#pragma once

// Test-only generators and reference computations. Nothing here calls the
// library's squaring ladder or eigen-iterations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "specbound/matrix.hpp"

namespace specbound::testing {

inline constexpr double kFourOverPiSquared = 0.40528473456935108578;

using Rng = std::mt19937_64;

/// Entries uniform in [lo, hi], each zeroed with probability `sparsity`.
inline NonnegMatrix random_nonneg(Rng& rng, std::size_t n, double sparsity = 0.0, double lo = 0.0,
                                  double hi = 1.0) {
    std::uniform_real_distribution<double> value(lo, hi);
    std::bernoulli_distribution drop(sparsity);
    std::vector<double> a(n * n);
    for (double& v : a) {
        v = drop(rng) ? 0.0 : value(rng);
    }
    return {n, std::move(a)};
}

inline NonnegMatrix random_symmetric(Rng& rng, std::size_t n, double sparsity = 0.0) {
    std::uniform_real_distribution<double> value(0.0, 1.0);
    std::bernoulli_distribution drop(sparsity);
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = drop(rng) ? 0.0 : value(rng);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    return {n, std::move(a)};
}

inline std::size_t random_dim(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Row-major dense matrix of doubles without any invariants.
using Dense = std::vector<double>;

inline Dense to_dense(const NonnegMatrix& a) { return {a.data().begin(), a.data().end()}; }

/// Textbook triple loop, j-inner-most over k (different order from the library).
inline Dense naive_product(const Dense& a, const Dense& b, std::size_t n) {
    Dense c(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            long double s = 0.0L;
            for (std::size_t k = 0; k < n; ++k) {
                s += static_cast<long double>(a[i * n + k]) * b[k * n + j];
            }
            c[i * n + j] = static_cast<double>(s);
        }
    }
    return c;
}

inline double quad_form(const Dense& m, const std::vector<double>& f, std::size_t n) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s += static_cast<long double>(f[i]) * m[i * n + j] * f[j];
        }
    }
    return static_cast<double>(s);
}

/// Cyclic permutation e_i -> e_(i+1 mod 3) used as the counterexample for the
/// lower sequence.
inline NonnegMatrix cyclic3() { return make_matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}); }

/// P A P^T for the permutation perm.
inline NonnegMatrix permute(const NonnegMatrix& a, const std::vector<std::size_t>& perm) {
    const std::size_t n = a.size();
    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[perm[i] * n + perm[j]] = a(i, j);
        }
    }
    return {n, std::move(out)};
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace specbound::testing
