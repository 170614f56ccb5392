#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "kinlap/verify.hpp"

using namespace kinlap;

namespace {

// (∂_t + v∂_x) f - ∂_v S0 - S1 by centred differences
double transport_defect(const ScalarFn& f, const ScalarFn& S0, const ScalarFn& S1, double t, double x, double v) {
    const double h = 1e-5;
    const double ft = (f(t + h, x, v) - f(t - h, x, v)) / (2 * h);
    const double fx = (f(t, x + h, v) - f(t, x - h, v)) / (2 * h);
    const double s0v = S0 ? (S0(t, x, v + h) - S0(t, x, v - h)) / (2 * h) : 0.0;
    return ft + v * fx - s0v - (S1 ? S1(t, x, v) : 0.0);
}

}  // namespace

TEST(Pairs, GaussianPairSatisfiesTransportIdentity) {
    const auto pair = gaussian_gn_pair();
    const double h = 1e-5;
    for (const auto& [t, x, v] : {std::tuple{0.3, -0.2, 0.5}, std::tuple{-0.7, 0.4, -1.1}}) {
        EXPECT_NEAR(transport_defect(pair.f, pair.S0, nullptr, t, x, v), 0.0, 1e-8);
        EXPECT_NEAR(pair.dvf(t, x, v), (pair.f(t, x, v + h) - pair.f(t, x, v - h)) / (2 * h), 1e-8);
    }
}

TEST(Pairs, RescalingPreservesTransportIdentity) {
    const auto pair = rescale_pair(gaussian_gn_pair(), 0.7, 1.6);
    EXPECT_NEAR(transport_defect(pair.f, pair.S0, nullptr, 0.2, 0.1, -0.4), 0.0, 1e-7);
    const auto id = rescale_pair(gaussian_gn_pair(), 1.0, 1.0);
    EXPECT_DOUBLE_EQ(id.f(0.1, 0.2, 0.3), gaussian_gn_pair().f(0.1, 0.2, 0.3));
}

TEST(Pairs, ManufacturedSuiteIdentities) {
    for (const auto& c : manufactured_suite())
        for (const auto& [t, x, v] : {std::tuple{0.3, -0.2, 0.5}, std::tuple{-0.4, 0.6, -0.9}}) {
            EXPECT_NEAR(transport_defect(c.f, c.src.S0, c.src.S1, t, x, v), 0.0, 1e-8) << c.name;
            EXPECT_LE(std::abs(c.f(t, x, v)), c.sup * (1 + 1e-12)) << c.name;
        }
}

TEST(GN, RatioIsScaleFree) {
    const GridSpec g{Box{-10, 10, -20, 20, -10, 10}, 64, 128, 64};
    const auto rep = gn_experiment(gaussian_gn_pair(), g, ProblemParams{1, Rational(2), Rational(2)}, {1.0});
    EXPECT_FALSE(rep.degenerate);
    EXPECT_DOUBLE_EQ(rep.q, 3.0);
    EXPECT_NEAR(rep.alpha, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(rep.ratio, rep.norm_f_q / (std::pow(rep.norm_grad_p, rep.alpha) * std::pow(rep.norm_S0_mu, 1 - rep.alpha)),
                1e-14);
    EXPECT_THROW(gn_experiment(gaussian_gn_pair(), g, ProblemParams{1, Rational(4), Rational(11, 10)}),
                 std::invalid_argument);
}

TEST(GN, DegenerateDenominator) {
    const GNPair zero{[](double, double, double) { return 0.0; }, [](double, double, double) { return 0.0; },
                      [](double, double, double) { return 0.0; }};
    const auto rep = gn_experiment(zero, GridSpec{Box{-1, 1, -1, 1, -1, 1}, 8, 8, 8},
                                   ProblemParams{1, Rational(2), Rational(2)});
    EXPECT_TRUE(rep.degenerate);
}

TEST(Gain, RejectsNegativeData) {
    const Box b{-1, 1, -1, 1, -1, 1};
    const Field neg = Field::from_function(b, 8, 8, 8, [](double, double, double) { return -1.0; });
    EXPECT_THROW(subsolution_gain_experiment(neg, neg, neg, neg, Rational(2)), std::invalid_argument);
    const Field pos = Field::from_function(b, 8, 8, 8, [](double t, double x, double v) {
        return std::exp(-t * t - x * x - v * v);
    });
    const auto g = grad_v(pos);
    const auto r = subsolution_gain_experiment(pos, g, pos, pos, Rational(2));
    EXPECT_DOUBLE_EQ(r.q, 3.0);
    EXPECT_DOUBLE_EQ(r.r, 1.5);
    EXPECT_GT(r.C_meas, 0.0);
}

TEST(LocalGain, CylinderMustFit) {
    const Field f = Field::from_function(Box{0, 1, -1, 1, -1, 1}, 8, 8, 8, [](double, double, double) { return 1.0; });
    EXPECT_THROW(localized_gain_experiment(f, grad_v(f), Rational(2), 1.0, 0.75, 2.0, PhasePoint(1.0, 0.0, 0.0)),
                 std::domain_error);
}

TEST(CylinderRuns, EnergyAndLocalGain) {
    const auto run = cylinder_solution(2.0, 1.0, 1.0, 0);
    EXPECT_NEAR(run.center.t, 1.5, 1e-12);
    const auto e = energy_experiment(run.solution.f, run.grad_v, 2.0, 1.0, 0.75, 1.0, run.center);
    EXPECT_GT(e.slice_term, 0.0);
    EXPECT_GT(e.gradient_term, 0.0);
    EXPECT_NEAR(e.lhs, e.slice_term + e.gradient_term, 1e-12 * e.lhs);
    EXPECT_NEAR(e.C_meas, e.lhs / e.rhs, 1e-12 * e.C_meas);
    const auto l = localized_gain_experiment(run.solution.f, run.grad_v, Rational(2), 1.0, 0.75, 1.0, run.center);
    EXPECT_DOUBLE_EQ(l.q, 3.0);
    EXPECT_DOUBLE_EQ(l.r, 1.5);
    EXPECT_GT(l.rhs_l2, 0.0);
    EXPECT_NEAR(l.C_meas, l.lhs / l.rhs_lp, 1e-12 * l.C_meas);
    EXPECT_THROW(cylinder_solution(2.0, -1.0, 1.0, 0), std::invalid_argument);
}

TEST(Transfer, BesovQuotientsAndValidity) {
    const auto sp = sample_pair(gaussian_gn_pair(), GridSpec{Box{-5, 5, -8, 8, -5, 5}, 40, 64, 40});
    const auto hs = dyadic_h_set(1.0, 4);
    const auto rep = transfer_experiment(sp.f, sp.dvf, sp.S0, Rational(2), Rational(5, 2), hs);
    EXPECT_NEAR(rep.s, 2.0 / 15.0, 1e-15);
    ASSERT_EQ(rep.besov.quotients.size(), hs.size());
    for (double q : rep.besov.quotients) EXPECT_LE(q, rep.besov.value);
    EXPECT_NEAR(rep.C_meas, rep.besov.value / rep.denominator, 1e-12 * rep.C_meas);
    EXPECT_THROW(transfer_experiment(sp.f, sp.dvf, sp.S0, Rational(2), Rational(4), hs), std::invalid_argument);
}
