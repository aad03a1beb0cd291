#pragma once

// Matrix instances for integral operators on L^2[0,1] (midpoint Nystrom rule)
// and for finite sections of periodic weighted shifts on l^2.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "specbound/bounds.hpp"
#include "specbound/errors.hpp"
#include "specbound/matrix.hpp"

namespace specbound {

/// k(x, y) = min(x, y).
struct MinKernel {};

/// k(x, y) = min(x, y) * g(x, y) with g(x, y) = exp(alpha * (x - y)), so that
/// g(x, y) * g(y, x) = 1 and exp(-|alpha|) <= g <= exp(|alpha|).
struct MinTwisted {
    double alpha = 0.0;
};

/// Kernel given by its samples on the midpoint grid, samples(i, j) = k(x_i, x_j).
struct TableKernel {
    NonnegMatrix samples;
};

using KernelKind = std::variant<MinKernel, MinTwisted, TableKernel>;

class KernelSpec {
public:
    static KernelSpec min(std::size_t grid) { return KernelSpec(MinKernel{}, grid); }
    static KernelSpec min_twisted(double alpha, std::size_t grid) {
        return KernelSpec(MinTwisted{alpha}, grid);
    }
    static KernelSpec table(NonnegMatrix samples) {
        const std::size_t n = samples.size();
        return KernelSpec(TableKernel{std::move(samples)}, n);
    }

    [[nodiscard]] const KernelKind& kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t grid_size() const noexcept { return grid_; }

private:
    KernelSpec(KernelKind kind, std::size_t grid) : kind_(std::move(kind)), grid_(grid) {
        if (grid_ < 2) {
            throw InvalidArgument("kernel grid size must be >= 2");
        }
        if (const auto* t = std::get_if<MinTwisted>(&kind_); t && !std::isfinite(t->alpha)) {
            throw InvalidArgument("min-twisted alpha must be finite");
        }
    }

    KernelKind kind_;
    std::size_t grid_;
};

/// Midpoint x_i = (i + 1/2) / n.
inline double grid_point(std::size_t i, std::size_t n) noexcept {
    return (static_cast<double>(i) + 0.5) / static_cast<double>(n);
}

inline double twist_factor(double alpha, double x, double y) noexcept {
    return std::exp(alpha * (x - y));
}

/// K_n(i, j) = k(x_i, x_j) / n.
inline NonnegMatrix discretize(const KernelSpec& spec) {
    const std::size_t n = spec.grid_size();
    const double w = 1.0 / static_cast<double>(n);
    std::vector<double> out(n * n);

    auto fill = [&](auto&& kernel) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double v = kernel(i, j) * w;
                if (!std::isfinite(v)) {
                    throw NonFiniteKernelValue(i, j);
                }
                out[i * n + j] = v;
            }
        }
    };

    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, MinKernel>) {
                fill([&](std::size_t i, std::size_t j) {
                    return std::min(grid_point(i, n), grid_point(j, n));
                });
            } else if constexpr (std::is_same_v<K, MinTwisted>) {
                fill([&](std::size_t i, std::size_t j) {
                    const double x = grid_point(i, n);
                    const double y = grid_point(j, n);
                    return std::min(x, y) * twist_factor(k.alpha, x, y);
                });
            } else {
                fill([&](std::size_t i, std::size_t j) { return k.samples(i, j); });
            }
        },
        spec.kind());
    return {detail::trusted, n, std::move(out)};
}

/// Sandwich bounds for the discretized operator.
inline BoundsReport kernel_bounds(const KernelSpec& spec, int k_max,
                                  double gap_tol = kDefaultGapTol) {
    return sandwich(discretize(spec), k_max, gap_tol, kDefaultEigTol);
}

/// Weighted unilateral shift with period 2^p: 2^p - 1 unit weights followed by
/// 2^(2^p), truncated to its leading n-by-n section.
struct ShiftSpec {
    int p = 1;
    std::size_t n = 4;

    [[nodiscard]] std::size_t period() const noexcept { return std::size_t{1} << p; }
    [[nodiscard]] double peak_weight() const noexcept {
        return std::ldexp(1.0, static_cast<int>(period()));
    }
};

// 2^(2^p) must stay finite: 2^(2^9) = 2^512.
inline constexpr int kMaxShiftP = 9;

inline void validate(const ShiftSpec& spec) {
    if (spec.p < 1 || spec.p > kMaxShiftP) {
        throw InvalidArgument("shift family parameter p must lie in [1, " +
                              std::to_string(kMaxShiftP) + "]");
    }
    const std::size_t required = std::size_t{2} * spec.period();
    if (spec.n < required) {
        throw TruncationTooSmall(spec.n, required);
    }
}

/// Weights w_1 .. w_(n-1); w_m = 2^(2^p) when m is a multiple of 2^p.
inline std::vector<double> shift_weights(const ShiftSpec& spec) {
    validate(spec);
    std::vector<double> w(spec.n - 1);
    for (std::size_t m = 1; m < spec.n; ++m) {
        w[m - 1] = (m % spec.period() == 0) ? spec.peak_weight() : 1.0;
    }
    return w;
}

/// A(i+1, i) = w_(i+1), zero elsewhere.
inline NonnegMatrix build_shift(const ShiftSpec& spec) {
    const auto w = shift_weights(spec);
    const std::size_t n = spec.n;
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        out[(i + 1) * n + i] = w[i];
    }
    return {detail::trusted, n, std::move(out)};
}

/// Largest k with 2^(k+1) <= n: the powers A^(2^k) of the section still span
/// at least two blocks of the band. Past this level the section is dominated
/// by its nilpotent truncation rather than by the l^2 operator.
inline int truncation_horizon(const ShiftSpec& spec) {
    validate(spec);
    int k = 0;
    while ((std::size_t{1} << (k + 2)) <= spec.n) {
        ++k;
    }
    return k;
}

/// Absolute tolerance at which finite sections reproduce the l^2 values.
inline constexpr double kShiftTruncationTol = 1e-2;

/// Sandwich for a shift section with k_max capped at the truncation horizon.
inline BoundsReport shift_bounds(const ShiftSpec& spec, int k_max,
                                 double gap_tol = kDefaultGapTol,
                                 double eig_tol = kDefaultEigTol) {
    return sandwich(build_shift(spec), std::min(k_max, truncation_horizon(spec)), gap_tol,
                    eig_tol);
}

namespace detail {

inline double parse_double(std::string_view text, const std::string& what) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw InvalidArgument("cannot parse " + what + " from '" + std::string(text) + "'");
    }
    return v;
}

inline std::uint64_t parse_unsigned(std::string_view text, const std::string& what) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw InvalidArgument("cannot parse " + what + " from '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace detail

/// "min" or "min-twisted:<alpha>".
inline KernelSpec parse_kernel_name(std::string_view name, std::size_t grid) {
    if (name == "min") {
        return KernelSpec::min(grid);
    }
    constexpr std::string_view twisted = "min-twisted:";
    if (name.starts_with(twisted)) {
        return KernelSpec::min_twisted(
            detail::parse_double(name.substr(twisted.size()), "min-twisted alpha"), grid);
    }
    throw InvalidArgument("unknown kernel '" + std::string(name) +
                          "' (expected 'min' or 'min-twisted:<alpha>')");
}

/// "shift:p=<p>,n=<n>".
inline ShiftSpec parse_shift_name(std::string_view name) {
    constexpr std::string_view prefix = "shift:p=";
    constexpr std::string_view sep = ",n=";
    const auto bad = [&] {
        return InvalidArgument("malformed shift '" + std::string(name) +
                               "' (expected 'shift:p=<p>,n=<n>')");
    };
    if (!name.starts_with(prefix)) {
        throw bad();
    }
    const auto rest = name.substr(prefix.size());
    const auto pos = rest.find(sep);
    if (pos == std::string_view::npos) {
        throw bad();
    }
    const auto p = detail::parse_unsigned(rest.substr(0, pos), "shift p");
    const auto n = detail::parse_unsigned(rest.substr(pos + sep.size()), "shift n");
    if (p > static_cast<std::uint64_t>(kMaxShiftP)) {
        throw InvalidArgument("shift family parameter p must lie in [1, " +
                              std::to_string(kMaxShiftP) + "]");
    }
    ShiftSpec spec{static_cast<int>(p), static_cast<std::size_t>(n)};
    validate(spec);
    return spec;
}

}  // namespace specbound
