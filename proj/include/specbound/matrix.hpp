#pragma once

// Dense nonnegative matrices, the two symmetrizations, and overflow-safe
// repeated squaring.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "specbound/errors.hpp"

namespace specbound {

namespace detail {
struct trusted_t {
    explicit trusted_t() = default;
};
inline constexpr trusted_t trusted{};
}  // namespace detail

/// Dense n-by-n matrix with finite, nonnegative entries stored row-major.
///
/// Entries are validated once on construction; every operation in the library
/// that produces a NonnegMatrix preserves the invariants and skips the check.
class NonnegMatrix {
public:
    /// Validating constructor from row-major storage.
    NonnegMatrix(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
        if (n_ == 0) {
            throw EmptyMatrix();
        }
        if (a_.size() != n_ * n_) {
            throw NotSquare(n_, a_.size() / n_);
        }
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                const double v = a_[i * n_ + j];
                if (!std::isfinite(v)) {
                    throw NonFinite(i, j);
                }
                if (v < 0.0) {
                    throw NegativeEntry(i, j);
                }
            }
        }
        // -0.0 passes the sign test above; store it as +0.0 so bitwise
        // comparisons and printing stay canonical.
        for (double& v : a_) {
            v = v + 0.0;
        }
    }

    /// Unchecked constructor for results of invariant-preserving operations.
    NonnegMatrix(detail::trusted_t, std::size_t n, std::vector<double> entries)
        : n_(n), a_(std::move(entries)) {}

    static NonnegMatrix zeros(std::size_t n) {
        if (n == 0) {
            throw EmptyMatrix();
        }
        return {detail::trusted, n, std::vector<double>(n * n, 0.0)};
    }

    static NonnegMatrix identity(std::size_t n) {
        NonnegMatrix m = zeros(n);
        for (std::size_t i = 0; i < n; ++i) {
            m.a_[i * n + i] = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
        return a_[i * n_ + j];
    }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {a_.data() + i * n_, n_};
    }
    [[nodiscard]] std::span<const double> data() const noexcept { return a_; }

    [[nodiscard]] double max_entry() const noexcept { return *std::max_element(a_.begin(), a_.end()); }
    [[nodiscard]] bool is_zero() const noexcept { return max_entry() == 0.0; }

    [[nodiscard]] bool is_symmetric() const noexcept {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                if (a_[i * n_ + j] != a_[j * n_ + i]) {
                    return false;
                }
            }
        }
        return true;
    }

    [[nodiscard]] NonnegMatrix transpose() const {
        std::vector<double> t(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                t[j * n_ + i] = a_[i * n_ + j];
            }
        }
        return {detail::trusted, n_, std::move(t)};
    }

    /// Multiplies every entry by c > 0. Throws Overflow if an entry leaves the
    /// finite range.
    [[nodiscard]] NonnegMatrix scaled(double c) const {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw InvalidArgument("scale factor must be finite and positive");
        }
        std::vector<double> out(a_.size());
        for (std::size_t k = 0; k < a_.size(); ++k) {
            out[k] = c * a_[k];
            if (!std::isfinite(out[k])) {
                throw Overflow("scaled matrix entry overflows");
            }
        }
        return {detail::trusted, n_, std::move(out)};
    }

    friend bool operator==(const NonnegMatrix&, const NonnegMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Builds a validated matrix from a list of rows.
inline NonnegMatrix make_matrix(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) {
        throw EmptyMatrix();
    }
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& r : rows) {
        if (r.size() != n) {
            throw NotSquare(n, r.size());
        }
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return {n, std::move(flat)};
}

/// Nonnegative matrix whose entries satisfy s(i,j) == s(j,i) bit for bit.
class SymmetricNonnegMatrix {
public:
    /// Checks exact symmetry; throws NotSymmetric at the first offending pair.
    static SymmetricNonnegMatrix from_symmetric(NonnegMatrix m) {
        const std::size_t n = m.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (m(i, j) != m(j, i)) {
                    throw NotSymmetric(i, j);
                }
            }
        }
        return SymmetricNonnegMatrix(detail::trusted, std::move(m));
    }

    SymmetricNonnegMatrix(detail::trusted_t, NonnegMatrix m) : inner_(std::move(m)) {}

    [[nodiscard]] std::size_t size() const noexcept { return inner_.size(); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return inner_(i, j); }
    [[nodiscard]] const NonnegMatrix& matrix() const noexcept { return inner_; }

    friend bool operator==(const SymmetricNonnegMatrix&, const SymmetricNonnegMatrix&) = default;

private:
    NonnegMatrix inner_;
};

/// (A + A^T) / 2.
inline SymmetricNonnegMatrix arithmetic_symmetrization(const NonnegMatrix& a) {
    const std::size_t n = a.size();
    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i * n + i] = a(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = std::midpoint(a(i, j), a(j, i));
            out[i * n + j] = v;
            out[j * n + i] = v;
        }
    }
    return {detail::trusted, NonnegMatrix(detail::trusted, n, std::move(out))};
}

namespace detail {

/// sqrt(x*y) for x, y >= 0, falling back to sqrt(x)*sqrt(y) when the product
/// overflows or leaves the normal range.
inline double geometric_mean(double x, double y) noexcept {
    const double p = x * y;
    if (p == 0.0 && x != 0.0 && y != 0.0) {
        return std::sqrt(x) * std::sqrt(y);
    }
    if (p < std::numeric_limits<double>::min() && p != 0.0) {
        return std::sqrt(x) * std::sqrt(y);
    }
    if (!std::isfinite(p)) {
        return std::sqrt(x) * std::sqrt(y);
    }
    return std::sqrt(p);
}

}  // namespace detail

/// Entrywise sqrt(a_ij * a_ji).
inline SymmetricNonnegMatrix geometric_symmetrization(const NonnegMatrix& a) {
    const std::size_t n = a.size();
    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i * n + i] = a(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = detail::geometric_mean(a(i, j), a(j, i));
            out[i * n + j] = v;
            out[j * n + i] = v;
        }
    }
    return {detail::trusted, NonnegMatrix(detail::trusted, n, std::move(out))};
}

namespace detail {

// C = A * B with a fixed summation order: C(i,j) accumulates k = 0..n-1 in
// ascending order, so the result is bit-reproducible.
inline std::vector<double> dense_product(std::span<const double> a, std::span<const double> b,
                                         std::size_t n) {
    std::vector<double> c(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double* ci = c.data() + i * n;
        const double* ai = a.data() + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = ai[k];
            if (aik == 0.0) {
                continue;
            }
            const double* bk = b.data() + k * n;
            for (std::size_t j = 0; j < n; ++j) {
                ci[j] += aik * bk[j];
            }
        }
    }
    return c;
}

}  // namespace detail

/// Exact dense product. Throws Overflow if an entry of the product is not
/// finite; use ScaledMatrix for high powers.
inline NonnegMatrix multiply(const NonnegMatrix& a, const NonnegMatrix& b) {
    if (a.size() != b.size()) {
        throw InvalidArgument("dimension mismatch in multiply");
    }
    auto c = detail::dense_product(a.data(), b.data(), a.size());
    for (double v : c) {
        if (!std::isfinite(v)) {
            throw Overflow("matrix product overflows; use scaled_square");
        }
    }
    return {detail::trusted, a.size(), std::move(c)};
}

/// exp(log_scale) * base, with max entry of base in (0, 1], or base == 0 and
/// log_scale == 0.
class ScaledMatrix {
public:
    ScaledMatrix(detail::trusted_t, NonnegMatrix base, double log_scale)
        : base_(std::move(base)), log_scale_(log_scale) {}

    [[nodiscard]] const NonnegMatrix& base() const noexcept { return base_; }
    [[nodiscard]] double log_scale() const noexcept { return log_scale_; }
    [[nodiscard]] std::size_t size() const noexcept { return base_.size(); }
    [[nodiscard]] bool is_zero() const noexcept { return base_.is_zero(); }

    /// Materializes exp(log_scale) * base. Throws Overflow when out of range.
    [[nodiscard]] NonnegMatrix represented() const {
        if (is_zero()) {
            return base_;
        }
        return base_.scaled(std::exp(log_scale_));
    }

private:
    NonnegMatrix base_;
    double log_scale_;
};

namespace detail {

inline ScaledMatrix normalize(std::size_t n, std::vector<double> entries, double log_scale) {
    const double m = *std::max_element(entries.begin(), entries.end());
    if (m == 0.0) {
        return {trusted, NonnegMatrix(trusted, n, std::move(entries)), 0.0};
    }
    if (m != 1.0) {
        for (double& v : entries) {
            v /= m;
        }
    }
    return {trusted, NonnegMatrix(trusted, n, std::move(entries)), log_scale + std::log(m)};
}

}  // namespace detail

inline ScaledMatrix to_scaled(const NonnegMatrix& a) {
    const auto d = a.data();
    return detail::normalize(a.size(), std::vector<double>(d.begin(), d.end()), 0.0);
}

/// Squares the represented matrix and renormalizes by the max entry.
inline ScaledMatrix scaled_square(const ScaledMatrix& x) {
    if (x.is_zero()) {
        return x;
    }
    const auto& b = x.base();
    auto sq = detail::dense_product(b.data(), b.data(), b.size());
    return detail::normalize(b.size(), std::move(sq), 2.0 * x.log_scale());
}

}  // namespace specbound
