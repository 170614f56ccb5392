#include "kinlap/mollification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace kinlap {

double bump(double u) {
    if (!(u > -1.0 && u < 1.0)) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

double bump_prime(double u) {
    if (!(u > -1.0 && u < 1.0)) return 0.0;
    const double a = 1.0 - u * u;
    return std::exp(-1.0 / a) * (-2.0 * u / (a * a));
}

double bump_integral() {
    static const double value = [] {
        boost::math::quadrature::tanh_sinh<double> integrator;
        return integrator.integrate([](double u) { return bump(u); }, -1.0, 1.0);
    }();
    return value;
}

Mollifier::Mollifier() {
    const double I = bump_integral();
    normalization = 1.0 / (0.5 * I * I * I);
}

double Mollifier::operator()(double m0, double m1, double m2) const {
    const double b1 = bump(m1);
    if (b1 == 0.0) return 0.0;
    const double b2 = bump(m2);
    if (b2 == 0.0) return 0.0;
    return normalization * bump(2.0 * m0 + 3.0) * b1 * b2;
}

std::array<double, 2> Mollifier::grad(double m0, double m1, double m2) const {
    const double b0 = normalization * bump(2.0 * m0 + 3.0);
    if (b0 == 0.0) return {0.0, 0.0};
    return {b0 * bump_prime(m1) * bump(m2), b0 * bump(m1) * bump_prime(m2)};
}

const Mollifier& default_mollifier() {
    static const Mollifier psi;
    return psi;
}

const char* kernel_name(KernelKind k) {
    switch (k) {
    case KernelKind::K: return "K";
    case KernelKind::G0: return "G0";
    case KernelKind::G1: return "G1";
    case KernelKind::Gv: return "Gv";
    }
    return "?";
}

namespace {

/// Max over one period of log r of the row norms of (sin, cos) and (β sin + cos, β cos - sin).
std::array<double, 2> row_norm_maxima(double beta) {
    double a = 0.0, b = 0.0;
    const int n = 4096;
    for (int i = 0; i <= n; ++i) {
        const double L = 2.0 * M_PI * i / n;
        const double s = std::sin(L), c = std::cos(L);
        a = std::max(a, std::hypot(s, c));
        b = std::max(b, std::hypot(beta * s + c, beta * c - s));
    }
    return {a, b};
}

}  // namespace

KernelFamily::KernelFamily(double beta, double tau) : beta_(beta), tau_(tau) {
    if (!(beta > 1.0)) throw std::invalid_argument("KernelFamily: beta must exceed 1");
    if (!(tau > 0.0)) throw std::invalid_argument("KernelFamily: tau must be positive");
    // |m1|,|m2| < 1 gives |(m1,m2)| < √2; |m0| > 1 bounds the 1/m0 in the velocity row.
    const auto rows = row_norm_maxima(beta);
    cy_ = std::sqrt(2.0) * rows[0];
    cw_ = std::sqrt(2.0) * rows[1];
}

KernelFamily::Scale KernelFamily::scale(double r) const {
    if (!(r > 0.0)) throw std::invalid_argument("KernelFamily: r must be positive");
    const auto g = path_values(beta_, r);
    return {r, g.g1, g.g2, g.dg1, g.dg2, g.ddg1, g.ddg2, g.g1 * g.dg2 - g.g2 * g.dg1, std::pow(r, -Qdim())};
}

SupportBox KernelFamily::support(double r) const {
    return {-2.0 * r, -r, cy_ * std::pow(r, beta_), cw_ * std::pow(r, beta_ - 1.0)};
}

double KernelFamily::eval(KernelKind kind, const Scale& sc, double s, double y, double w) const {
    const double sigma = s / sc.r;
    if (!(sigma > -2.0 && sigma < -1.0)) return 0.0;
    const double b = sigma * w;
    const double M1 = (sc.dg2 * y - sc.g2 * b) / sc.det;
    if (!(std::abs(M1) < 1.0)) return 0.0;
    const double M2 = (-sc.dg1 * y + sc.g1 * b) / sc.det;
    if (!(std::abs(M2) < 1.0)) return 0.0;
    const Mollifier& psi = default_mollifier();
    const double c0inv = 1.0 / c0_constant(1);
    switch (kind) {
    case KernelKind::K:
        return c0inv * sigma * sc.r_minus_Q * psi(sigma, M1, M2);
    case KernelKind::G1:
        return -c0inv * sigma * sigma * sc.r_minus_Q * psi(sigma, M1, M2);
    case KernelKind::G0: {
        const auto g = psi.grad(sigma, M1, M2);
        const double ai12 = -sigma * sc.g2 / sc.det;
        const double ai22 = sigma * sc.g1 / sc.det;
        return c0inv * sigma * sigma * sc.r_minus_Q * (g[0] * ai12 + g[1] * ai22);
    }
    case KernelKind::Gv: {
        const double FM = (sc.ddg1 * M1 + sc.ddg2 * M2) / sigma;
        return -c0inv * sigma * sc.r_minus_Q * psi(sigma, M1, M2) * FM;
    }
    }
    return 0.0;
}

namespace {

struct Axis {
    double lo, h;
    int n;
    double at(int i) const { return lo + (i + 0.5) * h; }
};

Axis make_axis(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("quadrature axis needs n >= 1");
    return {lo, (hi - lo) / n, n};
}

/// Bounding box of {z∘u : u ∈ box}.
Box image_box(const SupportBox& box, const PhasePoint& z) {
    const double v = z.v[0];
    const double sv1 = box.s_lo * v, sv2 = box.s_hi * v;
    return {z.t + box.s_lo,
            z.t + box.s_hi,
            z.x[0] - box.y_bound + std::min(sv1, sv2),
            z.x[0] + box.y_bound + std::max(sv1, sv2),
            v - box.w_bound,
            v + box.w_bound};
}

bool box_within(const Box& inner, const Field& f) {
    const Box& b = f.box();
    const bool tv = inner.t0 >= b.t0 && inner.t1 <= b.t1 && inner.v0 >= b.v0 && inner.v1 <= b.v1;
    if (f.extension() == Extension::PeriodicX) return tv;
    return tv && inner.x0 >= b.x0 && inner.x1 <= b.x1;
}

std::string describe(const Box& need, const Box& have) {
    std::ostringstream os;
    os << "support image t[" << need.t0 << ',' << need.t1 << "] x[" << need.x0 << ',' << need.x1 << "] v["
       << need.v0 << ',' << need.v1 << "] exceeds field box t[" << have.t0 << ',' << have.t1 << "] x[" << have.x0
       << ',' << have.x1 << "] v[" << have.v0 << ',' << have.v1 << ']';
    return os.str();
}

}  // namespace

double apply_TJ_kernel(const KernelFn& J, const SupportBox& box, const ScalarFn& f, const PhasePoint& z,
                       const UGrid& grid) {
    const Axis as = make_axis(box.s_lo, box.s_hi, grid.ns);
    const Axis ay = make_axis(-box.y_bound, box.y_bound, grid.ny);
    const Axis aw = make_axis(-box.w_bound, box.w_bound, grid.nw);
    const double t = z.t, x = z.x[0], v = z.v[0];
    double acc = 0.0;
    for (int i = 0; i < as.n; ++i) {
        const double s = as.at(i);
        for (int j = 0; j < ay.n; ++j) {
            const double y = ay.at(j);
            for (int k = 0; k < aw.n; ++k) {
                const double w = aw.at(k);
                const double jv = J(s, y, w);
                if (jv == 0.0) continue;
                acc += f(t + s, x + y + s * v, v + w) * jv;
            }
        }
    }
    return acc * as.h * ay.h * aw.h;
}

OperatorValue apply_TJ_kernel(const KernelFn& J, const SupportBox& box, const Field& f, const PhasePoint& z,
                              DomainPolicy policy, const UGrid& grid) {
    const Box need = image_box(box, z);
    const bool inside = box_within(need, f);
    if (!inside && policy == DomainPolicy::Strict) throw std::domain_error(describe(need, f.box()));
    return {apply_TJ_kernel(J, box, field_sampler(f), z, grid), !inside};
}

double apply_TK_mspace(const KernelFamily& family, const ScalarFn& f, const PhasePoint& z, int n) {
    const Mollifier& psi = default_mollifier();
    const double tau = family.tau();
    const auto g = path_values(family.beta(), tau);
    const Axis a0 = make_axis(-2.0, -1.0, n), a1 = make_axis(-1.0, 1.0, n), a2 = make_axis(-1.0, 1.0, n);
    const double t = z.t, x = z.x[0], v = z.v[0];
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m0 = a0.at(i);
        for (int j = 0; j < n; ++j) {
            const double m1 = a1.at(j);
            for (int k = 0; k < n; ++k) {
                const double m2 = a2.at(k);
                const double w = psi(m0, m1, m2);
                if (w == 0.0) continue;
                const double gt = t + m0 * tau;
                const double gx = x + m0 * tau * v + m1 * g.g1 + m2 * g.g2;
                const double gv = v + (m1 * g.dg1 + m2 * g.dg2) / m0;
                acc += f(gt, gx, gv) * w;
            }
        }
    }
    return acc * a0.h * a1.h * a2.h;
}

OperatorValue apply_TK_mspace(const KernelFamily& family, const Field& f, const PhasePoint& z, DomainPolicy policy,
                              int n) {
    const Box need = image_box(family.support(family.tau()), z);
    const bool inside = box_within(need, f);
    if (!inside && policy == DomainPolicy::Strict) throw std::domain_error(describe(need, f.box()));
    return {apply_TK_mspace(family, field_sampler(f), z, n), !inside};
}

double apply_kernel_mspace(const KernelFamily& family, KernelKind kind, double r, const ScalarFn& g,
                           const PhasePoint& z, int n) {
    const auto sc = family.scale(r);
    const double rQ = std::pow(r, family.Qdim());
    const Axis a0 = make_axis(-2.0, -1.0, n), a1 = make_axis(-1.0, 1.0, n), a2 = make_axis(-1.0, 1.0, n);
    const double t = z.t, x = z.x[0], v = z.v[0];
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m0 = a0.at(i);
        const double s = m0 * r;
        const double jac = rQ / std::abs(m0);
        for (int j = 0; j < n; ++j) {
            const double m1 = a1.at(j);
            for (int k = 0; k < n; ++k) {
                const double m2 = a2.at(k);
                const double y = sc.g1 * m1 + sc.g2 * m2;
                const double w = (sc.dg1 * m1 + sc.dg2 * m2) / m0;
                const double jv = family.eval(kind, sc, s, y, w);
                if (jv == 0.0) continue;
                acc += g(t + s, x + y + s * v, v + w) * jv * jac;
            }
        }
    }
    return acc * a0.h * a1.h * a2.h;
}

RepresentationReport representation_residual(const KernelFamily& family, const ScalarFn& f, const ScalarFn& dvf,
                                             const SourceDecomposition& src, const std::vector<PhasePoint>& z_samples,
                                             const RepresentationQuadrature& quad) {
    if (quad.r_nodes < 1 || quad.m_res < 1 || !(quad.kappa >= 1.0))
        throw std::invalid_argument("representation_residual: bad quadrature");
    const double tau = family.tau();
    RepresentationReport rep;
    for (const auto& z : z_samples) {
        const double lhs = f(z.t, z.x[0], z.v[0]) - apply_TK_mspace(family, f, z, quad.m_res);
        double rhs = 0.0;
        for (int j = 0; j < quad.r_nodes; ++j) {
            const double xi = (j + 0.5) / quad.r_nodes;
            const double r = tau * std::pow(xi, quad.kappa);
            const double weight = quad.kappa * tau * std::pow(xi, quad.kappa - 1.0) / quad.r_nodes;
            double integrand = 0.0;
            if (src.S0) integrand += apply_kernel_mspace(family, KernelKind::G0, r, src.S0, z, quad.m_res);
            if (src.S1) integrand += apply_kernel_mspace(family, KernelKind::G1, r, src.S1, z, quad.m_res);
            integrand += apply_kernel_mspace(family, KernelKind::Gv, r, dvf, z, quad.m_res);
            rhs += weight * integrand;
        }
        rep.samples.push_back({z, lhs, rhs});
        rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
    }
    return rep;
}

double kernel_lp_norm(const KernelFamily& family, KernelKind kind, double r, double theta, const UGrid& grid) {
    if (!(theta >= 1.0)) throw std::invalid_argument("kernel_lp_norm: theta must be >= 1");
    const auto box = family.support(r);
    const auto sc = family.scale(r);
    const Axis as = make_axis(box.s_lo, box.s_hi, grid.ns);
    const Axis ay = make_axis(-box.y_bound, box.y_bound, grid.ny);
    const Axis aw = make_axis(-box.w_bound, box.w_bound, grid.nw);
    const bool sup = std::isinf(theta);
    double acc = 0.0;
    for (int i = 0; i < as.n; ++i)
        for (int j = 0; j < ay.n; ++j)
            for (int k = 0; k < aw.n; ++k) {
                const double a = std::abs(family.eval(kind, sc, as.at(i), ay.at(j), aw.at(k)));
                if (a == 0.0) continue;
                if (sup) acc = std::max(acc, a);
                else acc += theta == 1.0 ? a : std::pow(a, theta);
            }
    if (sup) return acc;
    return std::pow(acc * as.h * ay.h * aw.h, 1.0 / theta);
}

double weak_lp_norm(std::vector<double> values, double cell_volume, double theta) {
    if (!(theta >= 1.0)) throw std::invalid_argument("weak_lp_norm: theta must be >= 1");
    if (!(cell_volume > 0.0)) throw std::invalid_argument("weak_lp_norm: cell volume must be positive");
    for (double& x : values) x = std::abs(x);
    std::sort(values.begin(), values.end(), std::greater<double>());
    double best = 0.0;
    for (std::size_t j = 0; j < values.size() && values[j] > 0.0; ++j)
        best = std::max(best, values[j] * std::pow(static_cast<double>(j + 1) * cell_volume, 1.0 / theta));
    return best;
}

double weak_lp_norm(const Field& g, double theta) {
    if (g.comps() != 1) throw std::invalid_argument("weak_lp_norm: scalar field expected");
    return weak_lp_norm(g.data(), g.cell_volume(), theta);
}

IntegratedKernel integrated_kernel(const KernelFamily& family, KernelKind kind, double tau, int n, int r_nodes) {
    const double beta = family.beta();
    const Axis as = make_axis(-2.0 * tau, 0.0, n);
    const Axis ay = make_axis(-family.Cy() * std::pow(tau, beta), family.Cy() * std::pow(tau, beta), n);
    const Axis aw = make_axis(-family.Cw() * std::pow(tau, beta - 1.0), family.Cw() * std::pow(tau, beta - 1.0), n);
    IntegratedKernel out;
    out.cell_volume = as.h * ay.h * aw.h;
    out.values.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    std::vector<KernelFamily::Scale> scales(r_nodes);
    for (int i = 0; i < n; ++i) {
        const double s = as.at(i);
        const double r_lo = -s / 2.0, r_hi = std::min(-s, tau);
        if (!(r_hi > r_lo)) continue;
        const double hr = (r_hi - r_lo) / r_nodes;
        for (int q = 0; q < r_nodes; ++q) scales[q] = family.scale(r_lo + (q + 0.5) * hr);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int q = 0; q < r_nodes; ++q) acc += family.eval(kind, scales[q], s, ay.at(j), aw.at(k));
                out.values[(static_cast<std::size_t>(i) * n + j) * n + k] = acc * hr;
            }
    }
    return out;
}

double kernel_difference_norm(const KernelFamily& family, KernelKind kind, double r, double h, double theta,
                              int n) {
    if (!(theta >= 1.0) || std::isinf(theta)) throw std::invalid_argument("kernel_difference_norm: finite theta >= 1");
    const auto box = family.support(r);
    const double ah = std::abs(h);
    if (ah == 0.0) return 0.0;
    if (ah > 2.0 * box.y_bound) {
        const UGrid g{n, n, n};
        return std::pow(2.0, 1.0 / theta) * kernel_lp_norm(family, kind, r, theta, g);
    }
    // y-spacing divides |h| so that y and y - h fall on the same lattice.
    const int per_h = std::max(1, static_cast<int>(std::ceil(ah / (2.0 * box.y_bound / n))));
    const double hy = ah / per_h;
    const int ny = static_cast<int>(std::ceil((2.0 * box.y_bound + ah) / hy));
    const double y_lo = h > 0 ? -box.y_bound : -box.y_bound - ah;
    const auto sc = family.scale(r);
    const Axis as = make_axis(box.s_lo, box.s_hi, n);
    const Axis aw = make_axis(-box.w_bound, box.w_bound, n);
    double acc = 0.0;
    for (int i = 0; i < as.n; ++i)
        for (int j = 0; j < ny; ++j) {
            const double y = y_lo + (j + 0.5) * hy;
            for (int k = 0; k < aw.n; ++k) {
                const double d =
                    family.eval(kind, sc, as.at(i), y - h, aw.at(k)) - family.eval(kind, sc, as.at(i), y, aw.at(k));
                if (d != 0.0) acc += std::pow(std::abs(d), theta);
            }
        }
    return std::pow(acc * as.h * hy * aw.h, 1.0 / theta);
}

YoungResult young_check(const KernelFn& J, const SupportBox& box, double theta, const Field& f, double p_in,
                        const UGrid& kernel_grid, const UGrid& eval_grid) {
    if (!(theta >= 1.0 && p_in >= 1.0)) throw std::invalid_argument("young_check: need theta, p_in >= 1");
    const double inv_q = 1.0 / theta + 1.0 / p_in - 1.0;
    if (!(inv_q >= 0.0)) throw std::invalid_argument("young_check: 1/theta + 1/p_in must be >= 1");
    if (f.extension() != Extension::Zero) throw std::invalid_argument("young_check: zero-extended field expected");
    const double q = inv_q == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_q;

    // z with z∘u ∈ box(f) for some u in the support.
    const Box& b = f.box();
    const double vlo = b.v0 - box.w_bound, vhi = b.v1 + box.w_bound;
    const double c1 = box.s_lo * vlo, c2 = box.s_lo * vhi, c3 = box.s_hi * vlo, c4 = box.s_hi * vhi;
    const double smin = std::min({c1, c2, c3, c4}), smax = std::max({c1, c2, c3, c4});
    const Box ev{b.t0 - box.s_hi, b.t1 - box.s_lo, b.x0 - box.y_bound - smax, b.x1 + box.y_bound - smin, vlo, vhi};
    Field Tf(ev, eval_grid.ns, eval_grid.ny, eval_grid.nw);
    const ScalarFn fs = field_sampler(f);
    for (int it = 0; it < Tf.nt(); ++it)
        for (int ix = 0; ix < Tf.nx(); ++ix)
            for (int iv = 0; iv < Tf.nv(); ++iv)
                Tf.at(it, ix, iv) = apply_TJ_kernel(J, box, fs, PhasePoint(Tf.t(it), Tf.x(ix), Tf.v(iv)), kernel_grid);

    double jnorm = 0.0;
    {
        const Axis as = make_axis(box.s_lo, box.s_hi, kernel_grid.ns);
        const Axis ay = make_axis(-box.y_bound, box.y_bound, kernel_grid.ny);
        const Axis aw = make_axis(-box.w_bound, box.w_bound, kernel_grid.nw);
        for (int i = 0; i < as.n; ++i)
            for (int j = 0; j < ay.n; ++j)
                for (int k = 0; k < aw.n; ++k) jnorm += std::pow(std::abs(J(as.at(i), ay.at(j), aw.at(k))), theta);
        jnorm = std::pow(jnorm * as.h * ay.h * aw.h, 1.0 / theta);
    }
    return {lp_norm(Tf, q), jnorm * lp_norm(f, p_in), q};
}

double difference_commutation_check(const KernelFn& J, const SupportBox& box, const ScalarFn& g, double h,
                                    const std::vector<PhasePoint>& z_samples, const UGrid& grid) {
    if (h == 0.0) return 0.0;
    SupportBox wide = box;
    wide.y_bound += std::abs(h);
    const KernelFn dJ = [&J, h](double s, double y, double w) { return J(s, y - h, w) - J(s, y, w); };
    double worst = 0.0;
    for (const auto& z : z_samples) {
        PhasePoint zh = z;
        zh.x[0] += h;
        const double lhs = apply_TJ_kernel(J, box, g, zh, grid) - apply_TJ_kernel(J, box, g, z, grid);
        const double rhs = apply_TJ_kernel(dJ, wide, g, z, grid);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace kinlap
