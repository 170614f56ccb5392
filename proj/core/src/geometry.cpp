#include "kinlap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace kinlap {

PhasePoint::PhasePoint(double t_, std::vector<double> x_, std::vector<double> v_)
    : t(t_), x(std::move(x_)), v(std::move(v_)) {
    if (x.size() != v.size()) throw std::invalid_argument("PhasePoint: x and v differ in dimension");
}

PhasePoint::PhasePoint(double t_, double x_, double v_) : t(t_), x{x_}, v{v_} {}

bool PhasePoint::finite() const {
    if (!std::isfinite(t)) return false;
    for (double c : x)
        if (!std::isfinite(c)) return false;
    for (double c : v)
        if (!std::isfinite(c)) return false;
    return true;
}

PhasePoint zero_point(int d) {
    return PhasePoint(0.0, std::vector<double>(d, 0.0), std::vector<double>(d, 0.0));
}

PhasePoint group_compose(const PhasePoint& a, const PhasePoint& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("group_compose: dimension mismatch");
    PhasePoint out = a;
    out.t = a.t + b.t;
    for (int i = 0; i < a.dim(); ++i) {
        out.x[i] = a.x[i] + b.x[i] + b.t * a.v[i];
        out.v[i] = a.v[i] + b.v[i];
    }
    return out;
}

PhasePoint group_inverse(const PhasePoint& a) {
    PhasePoint out = a;
    out.t = -a.t;
    for (int i = 0; i < a.dim(); ++i) {
        out.x[i] = -a.x[i] + a.t * a.v[i];
        out.v[i] = -a.v[i];
    }
    return out;
}

PhasePoint dilate(const PhasePoint& z, double r, double p) {
    if (!(r > 0)) throw std::invalid_argument("dilate: r must be positive");
    PhasePoint out = z;
    const double rp = std::pow(r, p);
    out.t *= rp;
    for (double& c : out.x) c *= rp * r;
    for (double& c : out.v) c *= r;
    return out;
}

double unit_ball_volume(int d) {
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double Cylinder::duration_scale() const {
    return std::pow(R, p);
}

double Cylinder::slice_measure() const {
    const int d = center.dim();
    const double w = unit_ball_volume(d);
    return std::pow(theta * std::pow(R, 1.0 + p), d) * w * std::pow(R, d) * w;
}

double Cylinder::volume() const {
    return theta * std::pow(R, p) * slice_measure();
}

namespace {

double norm(const std::vector<double>& a) {
    double s = 0.0;
    for (double c : a) s += c * c;
    return std::sqrt(s);
}

}  // namespace

bool cylinder_contains(const Cylinder& c, const PhasePoint& z) {
    const double dt = z.t - c.center.t;
    if (!(dt >= -c.theta * std::pow(c.R, c.p) && dt < 0.0)) return false;
    const int d = c.center.dim();
    double sx = 0.0, sv = 0.0;
    for (int i = 0; i < d; ++i) {
        const double ex = z.x[i] - c.center.x[i] - dt * c.center.v[i];
        const double ev = z.v[i] - c.center.v[i];
        sx += ex * ex;
        sv += ev * ev;
    }
    const double rx = c.theta * std::pow(c.R, 1.0 + c.p);
    return std::sqrt(sx) < rx && std::sqrt(sv) < c.R;
}

namespace {

double e_plus(double s) {
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

}  // namespace

double smooth_step(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = e_plus(s), b = e_plus(1.0 - s);
    return a / (a + b);
}

double smooth_step_derivative(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    const double a = e_plus(s), b = e_plus(1.0 - s);
    const double da = a / (s * s);
    const double db = -b / ((1.0 - s) * (1.0 - s));
    const double den = a + b;
    return (da * den - a * (da + db)) / (den * den);
}

CutoffSet::CutoffSet(int d, double theta, double R1, double R2, double p)
    : d_(d), theta_(theta), R1_(R1), R2_(R2), p_(p) {
    if (d < 1) throw std::invalid_argument("CutoffSet: d must be >= 1");
    if (!(theta > 0)) throw std::invalid_argument("CutoffSet: theta must be positive");
    if (!(R1 > 0 && R1 < R2)) throw std::invalid_argument("CutoffSet: need 0 < R1 < R2");
    gamma_t_ = 1.0 / (theta * (std::pow(R2, p) - std::pow(R1, p)));
    gamma_v_ = std::pow(R2, p) / (std::pow(R2, 1.0 + p) - std::pow(R1, 1.0 + p)) + 1.0 / (R2 - R1);
}

double CutoffSet::eta(double t) const {
    const double lo = theta_ * std::pow(R2_, p_);
    const double hi = theta_ * std::pow(R1_, p_);
    return smooth_step((t + lo) / (lo - hi));
}

double CutoffSet::eta_prime(double t) const {
    const double lo = theta_ * std::pow(R2_, p_);
    const double hi = theta_ * std::pow(R1_, p_);
    return smooth_step_derivative((t + lo) / (lo - hi)) / (lo - hi);
}

double CutoffSet::zeta(const std::vector<double>& y) const {
    const double a = theta_ * std::pow(R1_, 1.0 + p_);
    const double b = theta_ * std::pow(R2_, 1.0 + p_);
    return 1.0 - smooth_step((norm(y) - a) / (b - a));
}

std::vector<double> CutoffSet::zeta_grad(const std::vector<double>& y) const {
    const double a = theta_ * std::pow(R1_, 1.0 + p_);
    const double b = theta_ * std::pow(R2_, 1.0 + p_);
    const double n = norm(y);
    std::vector<double> g(y.size(), 0.0);
    if (n == 0.0) return g;
    const double s = -smooth_step_derivative((n - a) / (b - a)) / (b - a);
    for (std::size_t i = 0; i < y.size(); ++i) g[i] = s * y[i] / n;
    return g;
}

double CutoffSet::phi(const std::vector<double>& v) const {
    return 1.0 - smooth_step((norm(v) - R1_) / (R2_ - R1_));
}

std::vector<double> CutoffSet::phi_grad(const std::vector<double>& v) const {
    const double n = norm(v);
    std::vector<double> g(v.size(), 0.0);
    if (n == 0.0) return g;
    const double s = -smooth_step_derivative((n - R1_) / (R2_ - R1_)) / (R2_ - R1_);
    for (std::size_t i = 0; i < v.size(); ++i) g[i] = s * v[i] / n;
    return g;
}

namespace {

std::vector<double> transported(const PhasePoint& z) {
    std::vector<double> y(z.x.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = z.x[i] - z.t * z.v[i];
    return y;
}

}  // namespace

double CutoffSet::chi(const PhasePoint& z) const {
    return eta(z.t) * zeta(transported(z)) * phi(z.v);
}

double CutoffSet::transport_chi(const PhasePoint& z) const {
    return eta_prime(z.t) * zeta(transported(z)) * phi(z.v);
}

std::vector<double> CutoffSet::grad_v_chi(const PhasePoint& z) const {
    const auto y = transported(z);
    const double e = eta(z.t);
    const double zt = zeta(y), ph = phi(z.v);
    const auto gz = zeta_grad(y);
    const auto gp = phi_grad(z.v);
    std::vector<double> g(z.v.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = e * (-z.t * gz[i] * ph + zt * gp[i]);
    return g;
}

CutoffSet build_cutoffs(int d, double theta, double R1, double R2, double p, std::uint64_t seed, int samples) {
    CutoffSet c(d, theta, R1, R2, p);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double tlen = theta * std::pow(R2, p);
    const double xr = theta * std::pow(R2, 1.0 + p);
    auto ball = [&](double radius) {
        std::vector<double> u(d);
        double n = 0.0;
        for (double& c : u) {
            c = gauss(rng);
            n += c * c;
        }
        n = std::sqrt(n);
        const double rad = radius * std::pow(unit(rng), 1.0 / d);
        for (double& c : u) c *= rad / n;
        return u;
    };
    double sup_t = 0.0, sup_v = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = -tlen * unit(rng);
        const auto y = ball(xr);
        const auto v = ball(R2);
        std::vector<double> x(d);
        for (int i = 0; i < d; ++i) x[i] = y[i] + t * v[i];
        const PhasePoint z(t, x, v);
        sup_t = std::max(sup_t, std::abs(c.transport_chi(z)));
        sup_v = std::max(sup_v, norm(c.grad_v_chi(z)));
    }
    c.sup_grad_v_ = sup_v;
    c.measured_ct_ = sup_t / c.gamma_t_;
    c.measured_cv_ = sup_v / c.gamma_v_;
    return c;
}

}  // namespace kinlap
