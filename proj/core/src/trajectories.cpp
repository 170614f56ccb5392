#include "kinlap/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinlap {

Block2 Block2::inverse() const {
    const double dt = det();
    if (dt == 0.0) throw std::domain_error("Block2: singular block");
    return {a22 / dt, -a12 / dt, -a21 / dt, a11 / dt};
}

Block2 Block2::operator*(const Block2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
}

PathValues path_values(double beta, double r) {
    const double L = std::log(r);
    const double s = std::sin(L), c = std::cos(L);
    const double rb = std::pow(r, beta);
    const double rb1 = rb / r;
    const double rb2 = rb1 / r;
    const double k = beta * beta - beta - 1.0;
    const double j = 2.0 * beta - 1.0;
    return {rb * s,
            rb * c,
            rb1 * (beta * s + c),
            rb1 * (beta * c - s),
            rb2 * (k * s + j * c),
            rb2 * (k * c - j * s)};
}

Block2 matrix_W(double beta, double r) {
    const auto g = path_values(beta, r);
    return {g.g1, g.g2, g.dg1, g.dg2};
}

Block2 matrix_A(double beta, double m0, double r) {
    const auto g = path_values(beta, r);
    return {g.g1, g.g2, g.dg1 / m0, g.dg2 / m0};
}

Block2 matrix_A_inverse(double beta, double m0, double r) {
    const auto g = path_values(beta, r);
    const double det = g.g1 * g.dg2 - g.g2 * g.dg1;
    return {g.dg2 / det, -m0 * g.g2 / det, -g.dg1 / det, m0 * g.g1 / det};
}

Block2 matrix_E(double delta, double r) {
    return {1.0, delta * r, 0.0, 1.0};
}

std::array<double, 2> forcing_F(double beta, double m0, double r) {
    const auto g = path_values(beta, r);
    return {g.ddg1 / m0, g.ddg2 / m0};
}

double c0_constant(int d) {
    return (d % 2 == 0) ? 1.0 : -1.0;
}

namespace {

void check_params(const TrajectoryParams& params, double r, int d) {
    if (!(r > 0.0)) throw std::invalid_argument("trajectory: r must be positive");
    if (params.m0 == 0.0) throw std::invalid_argument("trajectory: m0 must be nonzero");
    if (static_cast<int>(params.m1.size()) != d || static_cast<int>(params.m2.size()) != d)
        throw std::invalid_argument("trajectory: m1/m2 dimension mismatch");
}

double norm(const std::vector<double>& a) {
    double s = 0.0;
    for (double c : a) s += c * c;
    return std::sqrt(s);
}

}  // namespace

PhasePoint eval_trajectory(const TrajectoryParams& params, double r, const PhasePoint& z) {
    const int d = z.dim();
    check_params(params, r, d);
    const auto g = path_values(params.beta, r);
    PhasePoint out = z;
    out.t = z.t + params.m0 * r;
    for (int i = 0; i < d; ++i) {
        out.x[i] = z.x[i] + params.m0 * r * z.v[i] + params.m1[i] * g.g1 + params.m2[i] * g.g2;
        out.v[i] = z.v[i] + (params.m1[i] * g.dg1 + params.m2[i] * g.dg2) / params.m0;
    }
    return out;
}

PhasePoint eval_trajectory_matrix(const TrajectoryParams& params, double r, const PhasePoint& z) {
    const int d = z.dim();
    check_params(params, r, d);
    const Block2 E = matrix_E(params.m0, r);
    const Block2 A = matrix_A(params.beta, params.m0, r);
    PhasePoint out = z;
    out.t = z.t + params.m0 * r;
    for (int i = 0; i < d; ++i) {
        const auto ex = E.apply(z.x[i], z.v[i]);
        const auto am = A.apply(params.m1[i], params.m2[i]);
        out.x[i] = ex[0] + am[0];
        out.v[i] = ex[1] + am[1];
    }
    return out;
}

PhasePoint trajectory_increment(const TrajectoryParams& params, double tau) {
    const int d = static_cast<int>(params.m1.size());
    check_params(params, tau, d);
    const Block2 A = matrix_A(params.beta, params.m0, tau);
    PhasePoint u = zero_point(d);
    u.t = params.m0 * tau;
    for (int i = 0; i < d; ++i) {
        const auto am = A.apply(params.m1[i], params.m2[i]);
        u.x[i] = am[0];
        u.v[i] = am[1];
    }
    return u;
}

std::vector<double> trajectory_dv(const TrajectoryParams& params, double r) {
    const int d = static_cast<int>(params.m1.size());
    check_params(params, r, d);
    const auto F = forcing_F(params.beta, params.m0, r);
    std::vector<double> out(d);
    for (int i = 0; i < d; ++i) out[i] = F[0] * params.m1[i] + F[1] * params.m2[i];
    return out;
}

double check_M1(const TrajectoryParams& params, double r, const PhasePoint& z, double h) {
    if (!(h > 0.0 && h < r)) throw std::invalid_argument("check_M1: need 0 < h < r");
    const auto plus = eval_trajectory(params, r + h, z);
    const auto minus = eval_trajectory(params, r - h, z);
    const auto mid = eval_trajectory(params, r, z);
    double worst = 0.0;
    for (int i = 0; i < z.dim(); ++i) {
        const double dx = (plus.x[i] - minus.x[i]) / (2.0 * h);
        worst = std::max(worst, std::abs(dx - params.m0 * mid.v[i]));
    }
    return worst;
}

MReport check_M2_M3_M4(const TrajectoryParams& params, const std::vector<double>& r_grid) {
    const int d = static_cast<int>(params.m1.size());
    const double msum = norm(params.m1) + norm(params.m2);
    const double am0 = std::abs(params.m0);
    const PhasePoint z = zero_point(d);
    MReport rep;
    for (double r : r_grid) {
        check_params(params, r, d);
        const double b = params.beta;
        MRow row{};
        row.r = r;
        row.det_ratio = matrix_W(b, r).det() / (-std::pow(r, 2.0 * b - 1.0));
        const Block2 A = matrix_A(b, params.m0, r);
        const Block2 Ai = matrix_A_inverse(b, params.m0, r);
        row.m3_col1 = std::max(std::abs(Ai.a11), std::abs(Ai.a21)) * std::pow(r, b);
        row.m3_col2 = std::max(std::abs(Ai.a12), std::abs(Ai.a22)) * std::pow(r, b - 1.0) / am0;
        const Block2 I = A * Ai;
        row.inverse_error = std::max({std::abs(I.a11 - 1.0), std::abs(I.a12), std::abs(I.a21),
                                      std::abs(I.a22 - 1.0)});
        const auto g = eval_trajectory(params, r, z);
        const auto dv = trajectory_dv(params, r);
        std::vector<double> xs(d), vs(d);
        for (int i = 0; i < d; ++i) {
            xs[i] = g.x[i];
            vs[i] = g.v[i];
        }
        if (msum > 0.0) {
            row.m4_dv = norm(dv) * am0 / (msum * std::pow(r, b - 2.0));
            row.m4_v = norm(vs) * am0 / (msum * std::pow(r, b - 1.0));
            row.m4_x = norm(xs) / (msum * std::pow(r, b));
        }
        rep.max_det_error = std::max(rep.max_det_error, std::abs(row.det_ratio - 1.0));
        rep.max_m3_col1 = std::max(rep.max_m3_col1, row.m3_col1);
        rep.max_m3_col2 = std::max(rep.max_m3_col2, row.m3_col2);
        rep.max_m4_dv = std::max(rep.max_m4_dv, row.m4_dv);
        rep.max_m4_v = std::max(rep.max_m4_v, row.m4_v);
        rep.max_m4_x = std::max(rep.max_m4_x, row.m4_x);
        rep.max_inverse_error = std::max(rep.max_inverse_error, row.inverse_error);
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("log_grid: need 0 < lo < hi, n >= 2");
    std::vector<double> out(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
    return out;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("regression_slope: bad sizes");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

double envelope_slope(const std::vector<double>& r, const std::vector<double>& values, double window) {
    if (r.size() != values.size() || r.empty()) throw std::invalid_argument("envelope_slope: bad sizes");
    std::vector<double> lx, ly;
    const double last = std::log(r.back());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double a = std::log(r[i]);
        if (a + window > last) break;
        double m = 0.0;
        for (std::size_t j = i; j < r.size() && std::log(r[j]) <= a + window; ++j) m = std::max(m, values[j]);
        lx.push_back(a);
        ly.push_back(std::log(m));
    }
    return regression_slope(lx, ly);
}

}  // namespace kinlap
