#pragma once

#include <array>
#include <vector>

#include "kinlap/geometry.hpp"

namespace kinlap {

/// 2x2 block acting on R^{2d} as its tensor with Id_d.
struct Block2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    double det() const { return a11 * a22 - a12 * a21; }
    Block2 inverse() const;
    Block2 operator*(const Block2& o) const;
    std::array<double, 2> apply(double u1, double u2) const { return {a11 * u1 + a12 * u2, a21 * u1 + a22 * u2}; }
};

/// g1 = r^β sin log r, g2 = r^β cos log r and their first two derivatives.
struct PathValues {
    double g1, g2, dg1, dg2, ddg1, ddg2;
};

PathValues path_values(double beta, double r);

/// W(r) = [[g1, g2], [g1', g2']].
Block2 matrix_W(double beta, double r);
/// A_{m0}(r) = D_{m0}^{-1} W(r) with D_δ = diag(1, δ).
Block2 matrix_A(double beta, double m0, double r);
/// A_{m0}(r)^{-1} in closed form.
Block2 matrix_A_inverse(double beta, double m0, double r);
/// E_δ(r) = [[1, δ r], [0, 1]].
Block2 matrix_E(double delta, double r);
/// F_{m0}(r) = (g1''/m0, g2''/m0).
std::array<double, 2> forcing_F(double beta, double m0, double r);

/// (-1)^d.
double c0_constant(int d);

struct TrajectoryParams {
    double beta = 1.5;
    double m0 = -1.5;
    std::vector<double> m1;
    std::vector<double> m2;
};

/// γ^m(r; z). Throws std::invalid_argument if r <= 0, m0 == 0 or sizes mismatch.
PhasePoint eval_trajectory(const TrajectoryParams& params, double r, const PhasePoint& z);
/// Same point via E_{m0}(r)(x,v) + A_{m0}(r)(m1,m2).
PhasePoint eval_trajectory_matrix(const TrajectoryParams& params, double r, const PhasePoint& z);
/// u = (m0 τ, A_{m0}(τ)(m1,m2)), so that γ^m(τ; z) = z∘u.
PhasePoint trajectory_increment(const TrajectoryParams& params, double tau);
/// d/dr of γ_v in closed form, F_{m0}(r)(m1,m2).
std::vector<double> trajectory_dv(const TrajectoryParams& params, double r);

/// max_i |(γ_x(r+h)-γ_x(r-h))/(2h) - m0 γ_v(r)|_i.
double check_M1(const TrajectoryParams& params, double r, const PhasePoint& z, double h);

struct MRow {
    double r;
    double det_ratio;     ///< det W / (-r^{2β-1})
    double m3_col1;       ///< max_i |(A^{-1})_{i;1}| r^β
    double m3_col2;       ///< max_i |(A^{-1})_{i;2}| r^{β-1} / |m0|
    double m4_dv;         ///< |γ_v'| |m0| / ((|m1|+|m2|) r^{β-2})
    double m4_v;          ///< |γ_v - v| |m0| / ((|m1|+|m2|) r^{β-1})
    double m4_x;          ///< |γ_x - x - m0 v r| / ((|m1|+|m2|) r^β)
    double inverse_error; ///< max entry of A A^{-1} - Id
};

struct MReport {
    std::vector<MRow> rows;
    double max_det_error = 0.0;  ///< max |det_ratio - 1|
    double max_m3_col1 = 0.0, max_m3_col2 = 0.0;
    double max_m4_dv = 0.0, max_m4_v = 0.0, max_m4_x = 0.0;
    double max_inverse_error = 0.0;
};

MReport check_M2_M3_M4(const TrajectoryParams& params, const std::vector<double>& r_grid);

/// Log-spaced grid of n points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

/// Least squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Log-log regression slope of the running max of `values` over windows of width `window` in log r.
/// The bounded ratios oscillate with period 2π in log r, so the envelope is what can trend.
double envelope_slope(const std::vector<double>& r, const std::vector<double>& values, double window);

}  // namespace kinlap
