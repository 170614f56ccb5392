#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "kinlap/geometry.hpp"

using namespace kinlap;

namespace {

void expect_near(const PhasePoint& a, const PhasePoint& b, double tol = 1e-12) {
    ASSERT_EQ(a.dim(), b.dim());
    EXPECT_NEAR(a.t, b.t, tol);
    for (int i = 0; i < a.dim(); ++i) {
        EXPECT_NEAR(a.x[i], b.x[i], tol);
        EXPECT_NEAR(a.v[i], b.v[i], tol);
    }
}

PhasePoint random_point(std::mt19937_64& rng, int d) {
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    PhasePoint z(U(rng), std::vector<double>(d), std::vector<double>(d));
    for (int i = 0; i < d; ++i) {
        z.x[i] = U(rng);
        z.v[i] = U(rng);
    }
    return z;
}

}  // namespace

TEST(Group, ComposeByHand) {
    const auto c = group_compose(PhasePoint(1.0, 2.0, 3.0), PhasePoint(0.5, -1.0, 2.0));
    expect_near(c, PhasePoint(1.5, 2.0 - 1.0 + 0.5 * 3.0, 5.0));
}

TEST(Group, Axioms) {
    std::mt19937_64 rng(11);
    for (int d = 1; d <= 3; ++d)
        for (int i = 0; i < 50; ++i) {
            const auto a = random_point(rng, d), b = random_point(rng, d), c = random_point(rng, d);
            expect_near(group_compose(group_compose(a, b), c), group_compose(a, group_compose(b, c)));
            expect_near(group_compose(a, group_inverse(a)), zero_point(d));
            expect_near(group_compose(group_inverse(a), a), zero_point(d));
            expect_near(group_compose(zero_point(d), a), a);
        }
}

TEST(Group, NotCommutative) {
    const PhasePoint a(1.0, 0.0, 0.0), b(0.0, 0.0, 1.0);
    EXPECT_NE(group_compose(a, b).x[0], group_compose(b, a).x[0]);
}

TEST(Group, DimensionMismatchThrows) {
    EXPECT_THROW(group_compose(zero_point(1), zero_point(2)), std::invalid_argument);
}

TEST(Group, DilationIsAutomorphism) {
    std::mt19937_64 rng(5);
    for (double p : {1.5, 2.0, 3.0})
        for (int i = 0; i < 20; ++i) {
            const auto a = random_point(rng, 2), b = random_point(rng, 2);
            const double r = 0.3 + i * 0.1;
            expect_near(dilate(group_compose(a, b), r, p), group_compose(dilate(a, r, p), dilate(b, r, p)), 1e-10);
        }
}

TEST(Cylinder, MeasureInOneDimension) {
    const Cylinder c{zero_point(1), 2.0, 0.5, 3.0};
    // θR^p · 2θR^{1+p} · 2R
    const double expected = 2.0 * std::pow(0.5, 3.0) * (2.0 * 2.0 * std::pow(0.5, 4.0)) * (2.0 * 0.5);
    EXPECT_NEAR(c.volume(), expected, 1e-14);
    EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-15);
    EXPECT_NEAR(unit_ball_volume(3), 4.0 * std::acos(-1.0) / 3.0, 1e-14);
}

TEST(Cylinder, Membership) {
    const Cylinder c{PhasePoint(1.0, 0.0, 0.5), 1.0, 1.0, 2.0};
    EXPECT_TRUE(cylinder_contains(c, PhasePoint(0.5, 0.0, 0.5)));
    EXPECT_FALSE(cylinder_contains(c, PhasePoint(1.0, 0.0, 0.5)));  // open at the top
    EXPECT_FALSE(cylinder_contains(c, PhasePoint(-0.1, 0.0, 0.5)));
    EXPECT_FALSE(cylinder_contains(c, PhasePoint(0.5, 0.0, 1.6)));
    // transport tilt: x - x0 - (t - t0) v0 = 0.9 - (-0.5)(0.5) = 1.15 > θR^{1+p}
    EXPECT_FALSE(cylinder_contains(c, PhasePoint(0.5, 0.9, 0.5)));
    EXPECT_TRUE(cylinder_contains(c, PhasePoint(0.5, 0.6, 0.5)));
}

TEST(Cutoff, SmoothStep) {
    EXPECT_EQ(smooth_step(-1.0), 0.0);
    EXPECT_EQ(smooth_step(0.0), 0.0);
    EXPECT_EQ(smooth_step(1.0), 1.0);
    EXPECT_NEAR(smooth_step(0.5), 0.5, 1e-14);
    for (double s : {0.1, 0.3, 0.7, 0.9}) {
        const double h = 1e-6;
        EXPECT_NEAR(smooth_step_derivative(s), (smooth_step(s + h) - smooth_step(s - h)) / (2 * h), 1e-6);
    }
}

TEST(Cutoff, ProfileAndConstants) {
    const double theta = 1.5, R1 = 0.5, R2 = 1.0, p = 2.5;
    const auto cs = build_cutoffs(1, theta, R1, R2, p);
    const Cylinder inner{zero_point(1), theta, R1, p}, outer{zero_point(1), theta, R2, p};
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const PhasePoint z(-theta * std::pow(R2, p) * 0.5 * (U(rng) + 1.0) * 1.1, 1.2 * theta * U(rng),
                           1.2 * U(rng));
        const double chi = cs.chi(z);
        EXPECT_GE(chi, 0.0);
        EXPECT_LE(chi, 1.0);
        // support and plateau follow the characteristics x - t v
        const double y = std::abs(z.x[0] - z.t * z.v[0]), v = std::abs(z.v[0]);
        if (z.t >= -theta * std::pow(R1, p) && y <= theta * std::pow(R1, 1 + p) && v <= R1) {
            EXPECT_NEAR(chi, 1.0, 1e-14);
        }
        if (z.t <= -theta * std::pow(R2, p) || y >= theta * std::pow(R2, 1 + p) || v >= R2) {
            EXPECT_EQ(chi, 0.0);
        }
    }
    EXPECT_NEAR(cs.Gamma_t(), 1.0 / (theta * (std::pow(R2, p) - std::pow(R1, p))), 1e-14);
    EXPECT_TRUE(std::isfinite(cs.measured_C_t()) && cs.measured_C_t() > 0.0);
    EXPECT_TRUE(std::isfinite(cs.measured_C_v()) && cs.measured_C_v() > 0.0);
}

TEST(Cutoff, ShearedSupportLeavesTheCylinder) {
    // |x| < θR2^{1+p} fails while |x - t v| stays small
    const double theta = 1.0, R1 = 0.5, R2 = 1.0, p = 2.0;
    const auto cs = build_cutoffs(1, theta, R1, R2, p);
    const Cylinder outer{zero_point(1), theta, R2, p};
    const PhasePoint z(-0.9, -0.8, 0.9);
    EXPECT_FALSE(cylinder_contains(outer, PhasePoint(-0.9, -1.1, 0.9)));
    EXPECT_GT(cs.chi(PhasePoint(-0.9, -1.1, 0.9)), 0.0);
    EXPECT_TRUE(cylinder_contains(outer, z));
}

TEST(Cutoff, ClosedFormDerivatives) {
    const auto cs = build_cutoffs(1, 1.0, 0.5, 1.0, 2.0);
    const double h = 1e-6;
    for (const PhasePoint& z : {PhasePoint(-0.6, 0.4, 0.6), PhasePoint(-0.3, -0.7, -0.55)}) {
        const double dt = (cs.chi(PhasePoint(z.t + h, z.x[0], z.v[0])) - cs.chi(PhasePoint(z.t - h, z.x[0], z.v[0]))) / (2 * h);
        const double dx = (cs.chi(PhasePoint(z.t, z.x[0] + h, z.v[0])) - cs.chi(PhasePoint(z.t, z.x[0] - h, z.v[0]))) / (2 * h);
        const double dv = (cs.chi(PhasePoint(z.t, z.x[0], z.v[0] + h)) - cs.chi(PhasePoint(z.t, z.x[0], z.v[0] - h))) / (2 * h);
        EXPECT_NEAR(cs.transport_chi(z), dt + z.v[0] * dx, 1e-5);
        EXPECT_NEAR(cs.grad_v_chi(z)[0], dv, 1e-5);
    }
}

TEST(Cutoff, RejectsBadRadii) {
    EXPECT_THROW(build_cutoffs(1, 1.0, 1.0, 0.5, 2.0), std::invalid_argument);
    EXPECT_THROW(build_cutoffs(1, 0.0, 0.5, 1.0, 2.0), std::invalid_argument);
}
