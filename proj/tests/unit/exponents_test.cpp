#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "kinlap/exponents.hpp"

using namespace kinlap;

TEST(Exponents, QuadraticCase) {
    const auto t = compute_exponents({1, Rational(2), Rational(2)});
    EXPECT_TRUE(t.admissible);
    EXPECT_EQ(t.q, 3);
    EXPECT_EQ(t.inv_q, Rational(1, 3));
    EXPECT_EQ(t.a, 0);
    EXPECT_EQ(t.beta, Rational(3, 2));
    EXPECT_EQ(t.Qdim, 3);
    EXPECT_EQ(t.theta0, Rational(6, 5));
    EXPECT_EQ(t.theta1, Rational(3, 2));
    EXPECT_EQ(t.thetav, Rational(6, 5));
    EXPECT_EQ(t.qbar, 3);
    EXPECT_EQ(t.alpha, Rational(2, 3));
    ASSERT_TRUE(t.r_source.has_value());
    EXPECT_EQ(*t.r_source, Rational(3, 2));
}

TEST(Exponents, ValidationRejectsBadParameters) {
    EXPECT_THROW(compute_exponents({0, Rational(2), Rational(2)}), std::invalid_argument);
    EXPECT_THROW(compute_exponents({1, Rational(1), Rational(2)}), std::invalid_argument);
    EXPECT_THROW(compute_exponents({1, Rational(2), Rational(1, 2)}), std::invalid_argument);
}

TEST(Exponents, SingularDa) {
    // d = 2, a = 2/3 - 1/6 = 1/2
    const auto t = compute_exponents({2, Rational(3, 2), Rational(6)});
    EXPECT_EQ(t.reason, Reason::DaSingular);
    EXPECT_FALSE(t.admissible);
}

TEST(Exponents, WindowReasons) {
    EXPECT_EQ(compute_exponents({1, Rational(4), Rational(11, 10)}).reason, Reason::WindowA);
    // 1/q = 49/66
    const auto w = compute_exponents({1, Rational(11, 10), Rational(11, 10)});
    EXPECT_FALSE(w.admissible);
    EXPECT_EQ(w.reason, Reason::WindowQ2);
    EXPECT_STREQ(reason_name(Reason::WindowQ2), "WINDOW_Q2");
}

TEST(Exponents, PWindow) {
    const auto [lo, hi] = p_admissible_window(1);
    EXPECT_EQ(lo, Rational(8, 5));
    EXPECT_EQ(hi, 4);
    EXPECT_TRUE(p_in_window(1, Rational(9, 5)));
    EXPECT_FALSE(p_in_window(1, Rational(8, 5)));
    EXPECT_EQ(p_admissible_window(2).first, Rational(7, 4));
    EXPECT_FALSE(p_in_window(1, Rational(4)));
}

TEST(Exponents, ScalingBalanceHoldsOnAdmissibleSamples) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(11, 49);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        const ProblemParams pp{1 + i % 3, Rational(num(rng), 10), Rational(num(rng), 10)};
        const auto t = compute_exponents(pp);
        if (!t.admissible) continue;
        ++checked;
        EXPECT_TRUE(scaling_balance(pp, t).holds());
    }
    EXPECT_GT(checked, 20);
}

TEST(Transfer, QuadraticCase) {
    const auto tr = compute_transfer({1, Rational(2), Rational(2)}, Rational(5, 2));
    EXPECT_TRUE(tr.valid);
    EXPECT_EQ(tr.s, Rational(2, 15));
    EXPECT_EQ(tr.alpha_s, tr.alpha_s_alt);
    EXPECT_EQ(tr.beta, Rational(3, 2));
}

TEST(Transfer, SmoothnessVanishesAtQbar) {
    const auto tr = compute_transfer({1, Rational(2), Rational(2)}, Rational(3));
    EXPECT_EQ(tr.s, 0);
    EXPECT_EQ(tr.reason, Reason::QRange);
}

TEST(Transfer, AlphaFormsAgree) {
    for (int d = 1; d <= 3; ++d)
        for (const Rational& p : {Rational(9, 5), Rational(2), Rational(5, 2)}) {
            const ProblemParams pp{d, p, conjugate(p)};
            for (const Rational& q : {Rational(21, 10), Rational(27, 10)})
                EXPECT_EQ(compute_transfer(pp, q).alpha_s, compute_transfer(pp, q).alpha_s_alt);
        }
}

TEST(Transfer, RequiresDualSource) {
    EXPECT_THROW(compute_transfer({1, Rational(3), Rational(2)}, Rational(5, 2)), std::invalid_argument);
    EXPECT_THROW(compute_transfer({1, Rational(2), Rational(2)}, Rational(0)), std::invalid_argument);
}

TEST(DeGiorgiExponents, SingularGain) {
    const auto e = degiorgi_exponents({1, Rational(9, 5), Rational(9, 4)});
    EXPECT_TRUE(e.valid);
    EXPECT_EQ(e.s_sing - 1, Rational(5, 27));
    const auto g = degiorgi_exponents({1, Rational(3), Rational(3, 2)});
    EXPECT_EQ(g.delta, Rational(1, 6));
}
