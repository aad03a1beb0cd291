#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "specbound/kernel.hpp"
#include "specbound/perron.hpp"
#include "support.hpp"

namespace specbound {
namespace {

using testing::kFourOverPiSquared;

SymmetricNonnegMatrix sym(const NonnegMatrix& a) { return SymmetricNonnegMatrix::from_symmetric(a); }

TEST(Discretize, MinKernelTwoPoints) {
    const auto k = discretize(KernelSpec::min(2));
    EXPECT_EQ(k, make_matrix({{0.125, 0.125}, {0.125, 0.375}}));
}

TEST(Discretize, MinKernelIsBitSymmetric) {
    EXPECT_TRUE(discretize(KernelSpec::min(257)).is_symmetric());
}

TEST(Discretize, MinKernelConstant) {
    const double r = perron_root(sym(discretize(KernelSpec::min(2000))));
    EXPECT_NEAR(r, kFourOverPiSquared, 1e-3);
}

TEST(Discretize, GridRefinementImprovesAccuracy) {
    const double coarse = perron_root(sym(discretize(KernelSpec::min(200))));
    const double fine = perron_root(sym(discretize(KernelSpec::min(2000))));
    EXPECT_LT(std::abs(fine - kFourOverPiSquared), std::abs(coarse - kFourOverPiSquared));
}

TEST(Discretize, TwistedGeometricSymmetrizationIsMinKernel) {
    for (double alpha : {1.0, -2.5, 0.3}) {
        for (std::size_t n : {2u, 17u, 120u}) {
            const auto twisted = discretize(KernelSpec::min_twisted(alpha, n));
            const auto s = geometric_symmetrization(twisted);
            const auto plain = discretize(KernelSpec::min(n));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    EXPECT_NEAR(s(i, j), plain(i, j), 1e-12);
                }
            }
        }
    }
}

TEST(Discretize, TwistFactorSatisfiesHypotheses) {
    for (double alpha : {0.0, 1.0, -3.0, 7.5}) {
        const double bound = std::exp(std::abs(alpha));
        const std::size_t n = 64;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double x = grid_point(i, n);
                const double y = grid_point(j, n);
                const double g = twist_factor(alpha, x, y);
                EXPECT_NEAR(g * twist_factor(alpha, y, x), 1.0, 1e-12);
                EXPECT_LE(g, bound * (1 + 1e-15));
                EXPECT_GE(g, (1 - 1e-15) / bound);
            }
        }
    }
}

TEST(Discretize, TableKernelUsesSamples) {
    const auto samples = make_matrix({{1, 2, 0}, {2, 1, 4}, {0, 4, 3}});
    const auto k = discretize(KernelSpec::table(samples));
    EXPECT_EQ(k, samples.scaled(1.0 / 3.0));
}

TEST(Discretize, RejectsInvalidSpecs) {
    EXPECT_THROW((void)KernelSpec::min(1), InvalidArgument);
    EXPECT_THROW((void)KernelSpec::min_twisted(std::nan(""), 10), InvalidArgument);
    EXPECT_THROW((void)KernelSpec::table(make_matrix({{1}})), InvalidArgument);
}

TEST(Discretize, OverflowingKernelIsReported) {
    try {
        (void)discretize(KernelSpec::min_twisted(2000.0, 4));
        FAIL() << "expected NonFiniteKernelValue";
    } catch (const NonFiniteKernelValue& e) {
        EXPECT_GT(e.row, e.col);
    }
}

TEST(BuildShift, PeriodTwoWeights) {
    const auto a = build_shift({1, 4});
    EXPECT_EQ(a, make_matrix({{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 4, 0, 0}, {0, 0, 1, 0}}));
}

TEST(BuildShift, SquareIsFourTimesDoubleShift) {
    const auto a = build_shift({1, 5});
    const auto a2 = multiply(a, a);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            EXPECT_EQ(a2(i, j), i == j + 2 ? 4.0 : 0.0);
        }
    }
}

TEST(BuildShift, PeriodFourWeights) {
    EXPECT_EQ(shift_weights({2, 8}), (std::vector<double>{1, 1, 1, 16, 1, 1, 1}));
    const auto a = build_shift({2, 8});
    for (std::size_t i = 0; i + 1 < 8; ++i) {
        EXPECT_EQ(a(i + 1, i), i == 3 ? 16.0 : 1.0);
    }
}

TEST(BuildShift, TruncationTooSmall) {
    EXPECT_THROW((void)build_shift({1, 3}), TruncationTooSmall);
    EXPECT_THROW((void)build_shift({2, 7}), TruncationTooSmall);
    EXPECT_NO_THROW((void)build_shift({2, 8}));
    EXPECT_THROW((void)build_shift({0, 8}), InvalidArgument);
    EXPECT_THROW((void)build_shift({10, 4096}), InvalidArgument);
}

TEST(BuildShift, TruncationHorizon) {
    EXPECT_EQ(truncation_horizon({1, 4}), 1);
    EXPECT_EQ(truncation_horizon({1, 200}), 6);
    EXPECT_EQ(truncation_horizon({2, 256}), 7);
}

TEST(KernelBounds, MinKernelIntervalContainsConstant) {
    const auto r = kernel_bounds(KernelSpec::min(1000), 12);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.k_max, 0);
    EXPECT_LE(r.interval.first, kFourOverPiSquared + 2e-3);
    EXPECT_GE(r.interval.second, kFourOverPiSquared - 2e-3);
}

TEST(KernelBounds, TwistedKernelLowerBound) {
    const auto r = kernel_bounds(KernelSpec::min_twisted(1.0, 1000), 1);
    EXPECT_GE(r.interval.first, kFourOverPiSquared - 2e-3);
    EXPECT_GT(r.interval.second, r.interval.first);
}

TEST(KernelBounds, SymmetricTableConvergesAtLevelZero) {
    testing::Rng rng(51);
    const auto r = kernel_bounds(KernelSpec::table(testing::random_symmetric(rng, 12)), 10);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.k_max, 0);
}

TEST(ShiftBounds, CapsLevelsAtHorizon) {
    const auto r = shift_bounds({1, 200}, 12);
    EXPECT_EQ(r.k_max, 6);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.interval.first, 0.0);
    EXPECT_NEAR(r.interval.second, 2.0, 1e-2);
}

TEST(Names, ParseKernelNames) {
    EXPECT_TRUE(std::holds_alternative<MinKernel>(parse_kernel_name("min", 10).kind()));
    const auto t = parse_kernel_name("min-twisted:-1.5", 10);
    ASSERT_TRUE(std::holds_alternative<MinTwisted>(t.kind()));
    EXPECT_EQ(std::get<MinTwisted>(t.kind()).alpha, -1.5);
    EXPECT_EQ(t.grid_size(), 10u);
    EXPECT_THROW((void)parse_kernel_name("max", 10), InvalidArgument);
    EXPECT_THROW((void)parse_kernel_name("min-twisted:abc", 10), InvalidArgument);
}

TEST(Names, ParseShiftNames) {
    const auto s = parse_shift_name("shift:p=2,n=256");
    EXPECT_EQ(s.p, 2);
    EXPECT_EQ(s.n, 256u);
    EXPECT_THROW((void)parse_shift_name("shift:p=2"), InvalidArgument);
    EXPECT_THROW((void)parse_shift_name("shift:p=x,n=3"), InvalidArgument);
    EXPECT_THROW((void)parse_shift_name("shift:p=1,n=3"), TruncationTooSmall);
}

}  // namespace
}  // namespace specbound
