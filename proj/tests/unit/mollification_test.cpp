#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "kinlap/mollification.hpp"

using namespace kinlap;

TEST(Mollifier, BumpProfile) {
    EXPECT_EQ(bump(1.0), 0.0);
    EXPECT_EQ(bump(-1.5), 0.0);
    EXPECT_NEAR(bump(0.0), std::exp(-1.0), 1e-16);
    // reference value of ∫_{-1}^{1} exp(-1/(1-u²)) du
    EXPECT_NEAR(bump_integral(), 0.44399381616807943, 1e-13);
    const double h = 1e-6;
    EXPECT_NEAR(bump_prime(0.4), (bump(0.4 + h) - bump(0.4 - h)) / (2 * h), 1e-8);
}

TEST(Mollifier, UnitMassAndSupport) {
    const auto& psi = default_mollifier();
    const int n = 80;
    double mass = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                mass += psi(-2.0 + (i + 0.5) / n, -1.0 + 2.0 * (j + 0.5) / n, -1.0 + 2.0 * (k + 0.5) / n);
    mass *= (1.0 / n) * (2.0 / n) * (2.0 / n);
    EXPECT_NEAR(mass, 1.0, 1e-6);
    EXPECT_EQ(psi(-0.5, 0.0, 0.0), 0.0);
    EXPECT_EQ(psi(-1.5, 1.2, 0.0), 0.0);
}

TEST(Kernels, SupportAndPositivity) {
    const KernelFamily fam(1.5);
    EXPECT_DOUBLE_EQ(fam.Qdim(), 3.0);
    const double r = 0.7;
    const auto box = fam.support(r);
    EXPECT_LT(box.s_lo, box.s_hi);
    EXPECT_LE(box.s_hi, 0.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double s = box.s_lo + (box.s_hi - box.s_lo) * U(rng);
        const double y = box.y_bound * (2 * U(rng) - 1), w = box.w_bound * (2 * U(rng) - 1);
        EXPECT_GE(fam.K(r, s, y, w), 0.0);
    }
    EXPECT_EQ(fam.K(r, box.s_lo - 0.1, 0.0, 0.0), 0.0);
    EXPECT_EQ(fam.K(r, 0.5 * (box.s_lo + box.s_hi), 2.0 * box.y_bound, 0.0), 0.0);
}

TEST(Kernels, LebesgueNorms) {
    const KernelFamily fam(1.5);
    // nonnegative with unit mass
    EXPECT_NEAR(kernel_lp_norm(fam, KernelKind::K, 0.5, 1.0), 1.0, 1e-3);
    // ‖K_r‖_θ = r^{𝖰(1/θ-1)} ‖K_1‖_θ
    const double a = kernel_lp_norm(fam, KernelKind::K, 1.0, 1.5, UGrid{48, 48, 48});
    const double b = kernel_lp_norm(fam, KernelKind::K, 0.25, 1.5, UGrid{48, 48, 48});
    EXPECT_NEAR(b / a, std::pow(0.25, 3.0 * (1.0 / 1.5 - 1.0)), 1e-3 * b / a);
    const double sup = kernel_lp_norm(fam, KernelKind::K, 1.0, INFINITY);
    EXPECT_TRUE(std::isfinite(sup) && sup > 0.0);
}

TEST(WeakNorm, IndicatorAndChebyshev) {
    std::vector<double> g(100, 0.0);
    for (int i = 0; i < 25; ++i) g[i] = 1.0;
    EXPECT_NEAR(weak_lp_norm(g, 0.02, 1.5), std::pow(0.5, 1.0 / 1.5), 1e-12);
    std::mt19937_64 rng(2);
    std::exponential_distribution<double> E(1.0);
    std::vector<double> h(5000);
    for (double& x : h) x = E(rng);
    double strong = 0.0;
    for (double x : h) strong += std::pow(x, 2.0) * 1e-3;
    EXPECT_LE(weak_lp_norm(h, 1e-3, 2.0), std::sqrt(strong) * (1 + 1e-12));
    EXPECT_EQ(weak_lp_norm(std::vector<double>(10, 0.0), 1.0, 2.0), 0.0);
}

TEST(WeakNorm, PowerSingularity) {
    // midpoint samples of s^{-1/θ} on (0,1): the sup sits on the first cell, ((1/n)/(0.5/n))^{1/θ} = 2^{1/θ},
    // at every resolution, while the strong norm grows like log n
    const double theta = 1.5;
    double prev_strong = 0.0;
    for (int n : {1000, 100000}) {
        std::vector<double> g(n);
        double strong = 0.0;
        for (int i = 0; i < n; ++i) {
            g[i] = std::pow((i + 0.5) / n, -1.0 / theta);
            strong += std::pow(g[i], theta) / n;
        }
        EXPECT_NEAR(weak_lp_norm(g, 1.0 / n, theta), std::pow(2.0, 1.0 / theta), 1e-12);
        EXPECT_GT(strong, prev_strong + 1.0);
        prev_strong = strong;
    }
}

TEST(Operators, ConstantsAreReproduced) {
    const KernelFamily fam(1.5, 0.5);
    const ScalarFn one = [](double, double, double) { return 1.0; };
    const double e16 = std::abs(apply_TK_mspace(fam, one, PhasePoint(0, 0, 0), 16) - 1.0);
    const double e32 = std::abs(apply_TK_mspace(fam, one, PhasePoint(0, 0, 0), 32) - 1.0);
    EXPECT_LT(e16, 1e-3);
    EXPECT_LT(e32, e16);
    const auto box = fam.support(0.5);
    const KernelFn K = [&](double s, double y, double w) { return fam.K(0.5, s, y, w); };
    EXPECT_NEAR(apply_TJ_kernel(K, box, one, PhasePoint(0, 0, 0), UGrid{64, 64, 64}), 1.0, 1e-5);
}

TEST(Operators, StrictDomainPolicy) {
    const KernelFamily fam(1.5, 0.5);
    const Field f = Field::from_function(Box{-0.1, 0.1, -0.1, 0.1, -0.1, 0.1}, 4, 4, 4,
                                         [](double, double, double) { return 1.0; });
    EXPECT_THROW(apply_TK_mspace(fam, f, PhasePoint(0, 0, 0), DomainPolicy::Strict, 8), std::domain_error);
    const auto r = apply_TK_mspace(fam, f, PhasePoint(0, 0, 0), DomainPolicy::ZeroExtend, 8);
    EXPECT_TRUE(r.zero_extended);
}

TEST(Operators, DifferenceCommutes) {
    const KernelFamily fam(1.5);
    const double r = 0.5;
    const auto box = fam.support(r);
    const KernelFn K = [&](double s, double y, double w) { return fam.K(r, s, y, w); };
    const ScalarFn g = [](double t, double x, double v) { return std::exp(-(t * t + x * x + v * v)); };
    const double res = difference_commutation_check(K, box, g, 0.05, {PhasePoint(0.2, 0.1, -0.3)}, UGrid{48, 48, 48});
    EXPECT_LT(res, 1e-3);
}

TEST(Young, ZeroAndExponentChecks) {
    const KernelFamily fam(1.5);
    const auto box = fam.support(0.5);
    const KernelFn K = [&](double s, double y, double w) { return fam.K(0.5, s, y, w); };
    const Field zero(Box{-1, 1, -1, 1, -1, 1}, 8, 8, 8);
    const auto y = young_check(K, box, 1.0, zero, 2.0, UGrid{8, 8, 8}, UGrid{8, 8, 8});
    EXPECT_EQ(y.lhs, 0.0);
    EXPECT_EQ(y.rhs, 0.0);
    EXPECT_THROW(young_check(K, box, 2.0, zero, 3.0, UGrid{8, 8, 8}, UGrid{8, 8, 8}), std::invalid_argument);
}

TEST(Representation, ResidualSmallOnSuite) {
    const KernelFamily fam(1.5, 0.5);
    const SourceDecomposition none{};
    const ScalarFn c = [](double, double, double) { return 2.0; };
    const ScalarFn zero = [](double, double, double) { return 0.0; };
    // no sources and ∂_v f = 0: the residual is exactly the quadrature defect of T_K on a constant
    const PhasePoint z(0.1, 0.2, 0.3);
    const auto rep = representation_residual(fam, c, zero, none, {z}, RepresentationQuadrature{8, 16, 3.0});
    ASSERT_EQ(rep.samples.size(), 1u);
    EXPECT_EQ(rep.samples[0].rhs, 0.0);
    EXPECT_NEAR(rep.max_residual, std::abs(2.0 - apply_TK_mspace(fam, c, z, 8)), 1e-14);
}
