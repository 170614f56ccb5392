#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "kinlap/trajectories.hpp"

using namespace kinlap;

namespace {

TrajectoryParams params(double beta) {
    TrajectoryParams tp;
    tp.beta = beta;
    tp.m0 = -1.5;
    tp.m1 = {0.5};
    tp.m2 = {-0.25};
    return tp;
}

}  // namespace

TEST(Trajectories, PathDerivatives) {
    const double beta = 1.5, r = 0.7, h = 1e-5;
    const auto a = path_values(beta, r), lo = path_values(beta, r - h), hi = path_values(beta, r + h);
    EXPECT_NEAR(a.g1, std::pow(r, beta) * std::sin(std::log(r)), 1e-15);
    EXPECT_NEAR(a.g2, std::pow(r, beta) * std::cos(std::log(r)), 1e-15);
    EXPECT_NEAR(a.dg1, (hi.g1 - lo.g1) / (2 * h), 1e-8);
    EXPECT_NEAR(a.dg2, (hi.g2 - lo.g2) / (2 * h), 1e-8);
    EXPECT_NEAR(a.ddg1, (hi.dg1 - lo.dg1) / (2 * h), 1e-7);
    EXPECT_NEAR(a.ddg2, (hi.dg2 - lo.dg2) / (2 * h), 1e-7);
}

TEST(Trajectories, Determinant) {
    for (double beta : {9.0 / 8.0, 1.5, 15.0 / 8.0})
        for (double r : log_grid(1e-3, 1e3, 13))
            EXPECT_NEAR(matrix_W(beta, r).det() / -std::pow(r, 2 * beta - 1), 1.0, 1e-12);
}

TEST(Trajectories, ClosedFormInverse) {
    for (double r : {0.01, 0.5, 3.0, 200.0}) {
        const auto P = matrix_A(1.5, -1.5, r) * matrix_A_inverse(1.5, -1.5, r);
        EXPECT_NEAR(P.a11, 1.0, 1e-12);
        EXPECT_NEAR(P.a12, 0.0, 1e-12);
        EXPECT_NEAR(P.a21, 0.0, 1e-12);
        EXPECT_NEAR(P.a22, 1.0, 1e-12);
        const auto Q = matrix_A(1.5, -1.5, r).inverse();
        EXPECT_NEAR(Q.a12, matrix_A_inverse(1.5, -1.5, r).a12, 1e-9 * (1 + std::abs(Q.a12)));
    }
}

TEST(Trajectories, MatrixAndDirectFormsAgree) {
    const auto tp = params(1.5);
    const PhasePoint z(0.3, 0.2, -0.1);
    for (double r : {0.1, 1.0, 5.0}) {
        const auto a = eval_trajectory(tp, r, z), b = eval_trajectory_matrix(tp, r, z);
        EXPECT_NEAR(a.t, b.t, 1e-12);
        EXPECT_NEAR(a.x[0], b.x[0], 1e-12);
        EXPECT_NEAR(a.v[0], b.v[0], 1e-12);
    }
}

TEST(Trajectories, IncrementIsLeftTranslation) {
    const auto tp = params(1.5);
    const PhasePoint z(0.3, 0.2, -0.1);
    for (double tau : {0.2, 0.9, 2.0}) {
        const auto a = eval_trajectory(tp, tau, z);
        const auto b = group_compose(z, trajectory_increment(tp, tau));
        EXPECT_NEAR(a.t, b.t, 1e-12);
        EXPECT_NEAR(a.x[0], b.x[0], 1e-12);
        EXPECT_NEAR(a.v[0], b.v[0], 1e-12);
    }
}

TEST(Trajectories, KineticProperty) {
    const auto tp = params(1.5);
    const PhasePoint z(0.3, 0.2, -0.1);
    // second-order residual: quartering h divides it by about 16
    const double e1 = check_M1(tp, 1.0, z, 1e-2), e2 = check_M1(tp, 1.0, z, 2.5e-3);
    EXPECT_NEAR(e1 / e2, 16.0, 0.5);
    const double h = 1e-5, r = 0.8;
    const double fd = (eval_trajectory(tp, r + h, z).v[0] - eval_trajectory(tp, r - h, z).v[0]) / (2 * h);
    EXPECT_NEAR(trajectory_dv(tp, r)[0], fd, 1e-7);
}

TEST(Trajectories, Errors) {
    auto tp = params(1.5);
    EXPECT_THROW(eval_trajectory(tp, 0.0, PhasePoint(0, 0, 0)), std::invalid_argument);
    tp.m0 = 0.0;
    EXPECT_THROW(eval_trajectory(tp, 1.0, PhasePoint(0, 0, 0)), std::invalid_argument);
    tp = params(1.5);
    tp.m1 = {0.1, 0.2};
    EXPECT_THROW(eval_trajectory(tp, 1.0, PhasePoint(0, 0, 0)), std::invalid_argument);
}

TEST(Trajectories, ReportRatiosStayBounded) {
    const auto rep = check_M2_M3_M4(params(1.5), log_grid(1e-3, 1e3, 61));
    EXPECT_EQ(rep.rows.size(), 61u);
    EXPECT_LT(rep.max_det_error, 1e-10);
    EXPECT_LT(rep.max_inverse_error, 1e-9);
    for (double m : {rep.max_m3_col1, rep.max_m3_col2, rep.max_m4_dv, rep.max_m4_v, rep.max_m4_x}) {
        EXPECT_TRUE(std::isfinite(m));
        EXPECT_LT(m, 100.0);
    }
}

TEST(Utilities, GridsAndSlopes) {
    const auto g = log_grid(1e-2, 1e2, 5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_NEAR(g.front(), 1e-2, 1e-16);
    EXPECT_NEAR(g[2], 1.0, 1e-14);
    EXPECT_NEAR(g.back(), 1e2, 1e-12);
    EXPECT_NEAR(regression_slope({0, 1, 2, 3}, {1, 3.5, 6, 8.5}), 2.5, 1e-14);
    EXPECT_NEAR(c0_constant(1), -1.0, 0);
    EXPECT_NEAR(c0_constant(2), 1.0, 0);
}
