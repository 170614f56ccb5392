#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "kinlap/degiorgi.hpp"

using namespace kinlap;

namespace {

// bounding box of Q_{1,2} for the given p
Field constant_field(double p, double value, int n = 24) {
    const double tp = std::pow(2.0, p);
    return Field::from_function(Box{-tp, 0.0, -2.0 * tp, 2.0 * tp, -2.0, 2.0}, n, n, n,
                                [=](double, double, double) { return value; });
}

}  // namespace

TEST(DeGiorgi, Modes) {
    EXPECT_EQ(parse_mode("p_ge_2"), DGMode::PGe2);
    EXPECT_EQ(parse_mode("singular"), DGMode::Singular);
    EXPECT_STREQ(mode_name(DGMode::Singular), "singular");
    EXPECT_THROW(parse_mode("other"), std::invalid_argument);
}

TEST(DeGiorgi, ZeroDataHasZeroEnergies) {
    const auto st = degiorgi_run(constant_field(3.0, 0.0), Rational(3), DGMode::PGe2, 6);
    ASSERT_EQ(st.levels.size(), 7u);
    for (const auto& lv : st.levels) EXPECT_EQ(lv.energy, 0.0);
    EXPECT_TRUE(st.bounded);
    EXPECT_TRUE(st.vanishing);
}

TEST(DeGiorgi, ConstantTwoLevelSetChainHolds) {
    for (const auto& [p, mode] : {std::pair{Rational(3), DGMode::PGe2}, std::pair{Rational(9, 5), DGMode::Singular}}) {
        const auto st = degiorgi_run(constant_field(to_double(p), 2.0), p, mode, 8);
        EXPECT_TRUE(st.level_set_exact);
        EXPECT_TRUE(st.l2_exact);
        EXPECT_FALSE(st.bounded);
        EXPECT_DOUBLE_EQ(st.sup_inner, 2.0);
        for (const auto& lv : st.levels) {
            EXPECT_TRUE(lv.level_ok);
            EXPECT_LE(lv.level_measure, lv.level_bound * (1 + kCountingSlack));
        }
    }
}

TEST(DeGiorgi, ErrorsAndDomain) {
    EXPECT_THROW(degiorgi_run(constant_field(3.0, -1.0), Rational(3), DGMode::PGe2), std::invalid_argument);
    EXPECT_THROW(degiorgi_run(constant_field(3.0, 1.0), Rational(9, 5), DGMode::PGe2), std::invalid_argument);
    EXPECT_THROW(degiorgi_run(constant_field(3.0, 1.0), Rational(3), DGMode::PGe2, 0), std::invalid_argument);
    const Field small = Field::from_function(Box{-1, 0, -1, 1, -1, 1}, 8, 8, 8, [](double, double, double) { return 0.0; });
    EXPECT_THROW(degiorgi_run(small, Rational(3), DGMode::PGe2), std::domain_error);
}

TEST(FastLemma, DoublyExponentialExample) {
    const auto r = fast_convergence_lemma(1.0, 2.0, 1.0, 0.5, 40);
    EXPECT_DOUBLE_EQ(r.delta0, 0.5);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(r.geometric);
    // Y0 = δ0 keeps Y_m = 2^{-(m+1)} exactly
    for (int m = 0; m <= 40; ++m) EXPECT_NEAR(r.trace[m] / std::ldexp(1.0, -(m + 1)), 1.0, 1e-12);
}

TEST(FastLemma, BelowThresholdAndTrivial) {
    const auto r = fast_convergence_lemma(1.0, 2.0, 1.0, 0.25);
    EXPECT_TRUE(r.below_threshold);
    EXPECT_TRUE(r.monotone_from_1);
    // Y_{m} = 2^{m(m-1)/2} ... direct iteration oracle
    double y = 0.25;
    for (int m = 0; m < 6; ++m) {
        EXPECT_NEAR(r.trace[m] / y, 1.0, 1e-12);
        y = std::pow(2.0, m) * y * y;
    }
    const auto z = fast_convergence_lemma(1.0, 2.0, 1.0, 0.0);
    EXPECT_TRUE(z.converged);
    EXPECT_EQ(z.first_below(1e-300), 0);
}

TEST(FastLemma, AboveThresholdIsReported) {
    const double e = std::exp(1.0);
    const auto probe = fast_convergence_lemma(e, e, 1.0 / 3.0, 1.0, 5);
    const auto r = fast_convergence_lemma(e, e, 1.0 / 3.0, 10 * probe.delta0);
    EXPECT_FALSE(r.converged);
    EXPECT_THROW(fast_convergence_lemma(0.0, 2.0, 1.0, 0.1), std::invalid_argument);
    EXPECT_THROW(fast_convergence_lemma(1.0, 1.0, 1.0, 0.1), std::invalid_argument);
    EXPECT_THROW(fast_convergence_lemma(1.0, 2.0, -1.0, 0.1), std::invalid_argument);
}

TEST(Interleave, ExactRecursion) {
    // E_{n+2} = 2^{γn} E_n^{1+δ} with C = 1
    const double gamma = 1.0, delta = 0.5;
    std::vector<double> E{0.1, 0.05};
    for (int n = 0; n < 8; ++n) E.push_back(std::pow(2.0, gamma * n) * std::pow(E[n], 1 + delta));
    const auto r = interleave_check(E, delta, gamma);
    EXPECT_NEAR(r.C_raw, 1.0, 1e-12);
    EXPECT_GT(r.pairs, 0);
    EXPECT_TRUE(r.holds);
}
