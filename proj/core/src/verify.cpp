#include "kinlap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kinlap {

GNPair rescale_pair(const GNPair& pair, double lambda, double nu) {
    GNPair out;
    out.f = [f = pair.f, lambda, nu](double t, double x, double v) { return f(nu * t, lambda * nu * x, lambda * v); };
    out.dvf = [g = pair.dvf, lambda, nu](double t, double x, double v) {
        return lambda * g(nu * t, lambda * nu * x, lambda * v);
    };
    out.S0 = [s = pair.S0, lambda, nu](double t, double x, double v) {
        return nu / lambda * s(nu * t, lambda * nu * x, lambda * v);
    };
    return out;
}

namespace {

struct Triple {
    double f_q, grad_p, s0_mu;
};

double power(double a, double e) {
    return e == 2.0 ? a * a : std::pow(a, e);
}

Triple pair_norms(const GNPair& pair, const GridSpec& g, double q, double p, double mu) {
    const Box& b = g.box;
    const double ht = (b.t1 - b.t0) / g.nt, hx = (b.x1 - b.x0) / g.nx, hv = (b.v1 - b.v0) / g.nv;
    double sf = 0.0, sg = 0.0, ss = 0.0;
    for (int it = 0; it < g.nt; ++it) {
        const double t = b.t0 + (it + 0.5) * ht;
        for (int ix = 0; ix < g.nx; ++ix) {
            const double x = b.x0 + (ix + 0.5) * hx;
            for (int iv = 0; iv < g.nv; ++iv) {
                const double v = b.v0 + (iv + 0.5) * hv;
                sf += power(std::abs(pair.f(t, x, v)), q);
                sg += power(std::abs(pair.dvf(t, x, v)), p);
                ss += power(std::abs(pair.S0(t, x, v)), mu);
            }
        }
    }
    const double vol = ht * hx * hv;
    return {std::pow(sf * vol, 1.0 / q), std::pow(sg * vol, 1.0 / p), std::pow(ss * vol, 1.0 / mu)};
}

double gn_ratio(const Triple& n, double alpha, bool& degenerate) {
    const double den = std::pow(n.grad_p, alpha) * std::pow(n.s0_mu, 1.0 - alpha);
    degenerate = !(den > 0.0);
    return degenerate ? std::numeric_limits<double>::quiet_NaN() : n.f_q / den;
}

void require_admissible(const ExponentTable& t) {
    if (!t.admissible)
        throw std::invalid_argument(std::string("exponents not admissible: ") + reason_name(t.reason));
}

}  // namespace

GNReport gn_experiment(const GNPair& pair, const GridSpec& grid, const ProblemParams& params,
                       const std::vector<double>& factors) {
    if (params.d != 1) throw std::invalid_argument("gn_experiment: d = 1 only");
    const auto tab = compute_exponents(params);
    require_admissible(tab);
    GNReport rep;
    rep.q = to_double(tab.q);
    rep.p = to_double(params.p);
    rep.mu = to_double(params.mu);
    rep.alpha = to_double(tab.alpha);
    const auto base = pair_norms(pair, grid, rep.q, rep.p, rep.mu);
    rep.norm_f_q = base.f_q;
    rep.norm_grad_p = base.grad_p;
    rep.norm_S0_mu = base.s0_mu;
    rep.ratio = gn_ratio(base, rep.alpha, rep.degenerate);
    if (rep.degenerate) return rep;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double lam : factors)
        for (double nu : factors) {
            const auto n = (lam == 1.0 && nu == 1.0) ? base : pair_norms(rescale_pair(pair, lam, nu), grid, rep.q, rep.p, rep.mu);
            bool deg = false;
            const double ratio = gn_ratio(n, rep.alpha, deg);
            rep.rows.push_back({lam, nu, n.f_q, n.grad_p, n.s0_mu, ratio});
            if (deg) continue;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    rep.scaling_spread = hi / lo;
    return rep;
}

GNReport gn_experiment(const Field& f, const Field& grad_v_f, const Field& S0, const ProblemParams& params) {
    const auto tab = compute_exponents(params);
    require_admissible(tab);
    GNReport rep;
    rep.q = to_double(tab.q);
    rep.p = to_double(params.p);
    rep.mu = to_double(params.mu);
    rep.alpha = to_double(tab.alpha);
    rep.norm_f_q = lp_norm(f, rep.q);
    rep.norm_grad_p = lp_norm(grad_v_f, rep.p);
    rep.norm_S0_mu = lp_norm(S0, rep.mu);
    rep.ratio = gn_ratio({rep.norm_f_q, rep.norm_grad_p, rep.norm_S0_mu}, rep.alpha, rep.degenerate);
    return rep;
}

GainReport subsolution_gain_experiment(const Field& f, const Field& grad_v_f, const Field& S0, const Field& S1,
                                       const Rational& p) {
    for (double x : f.data())
        if (x < 0.0) throw std::invalid_argument("subsolution_gain_experiment: f must be nonnegative");
    const ProblemParams params{1, p, conjugate(p)};
    const auto tab = compute_exponents(params);
    if (!p_in_window(1, p) || !tab.r_source) throw std::invalid_argument("subsolution_gain_experiment: p outside window");
    GainReport rep;
    rep.q = to_double(tab.qbar);
    rep.r = to_double(*tab.r_source);
    const double pd = to_double(p);
    rep.norm_f_q = lp_norm(f, rep.q);
    rep.norm_grad_p = lp_norm(grad_v_f, pd);
    rep.norm_S0_dual = lp_norm(S0, pd / (pd - 1.0));
    rep.norm_S1_r = lp_norm(S1, rep.r);
    const double den = rep.norm_grad_p + rep.norm_S0_dual + rep.norm_S1_r;
    rep.C_meas = den > 0.0 ? rep.norm_f_q / den : 0.0;
    return rep;
}

LocalGainReport localized_gain_experiment(const Field& f, const Field& grad_v_f, const Rational& p, double theta,
                                          double R1, double R2, const PhasePoint& center) {
    if (!p_in_window(1, p)) throw std::invalid_argument("localized_gain_experiment: p outside window");
    for (double x : f.data())
        if (x < 0.0) throw std::invalid_argument("localized_gain_experiment: f must be nonnegative");
    const double pd = to_double(p);
    const Cylinder q1{center, theta, R1, pd}, q2{center, theta, R2, pd};
    if (!cylinder_inside_box(f, q2)) throw std::domain_error("localized_gain_experiment: cylinder outside box");
    const auto tab = compute_exponents({1, p, conjugate(p)});
    const auto cut = CutoffSet(1, theta, R1, R2, pd);
    LocalGainReport rep;
    rep.q = to_double(tab.qbar);
    rep.r = to_double(*tab.r_source);
    rep.Gamma_t = cut.Gamma_t();
    rep.Gamma_v = cut.Gamma_v();
    rep.lhs = lp_norm(f, rep.q, q1);
    const double vol = q2.volume();
    const double g = lp_norm(grad_v_f, pd, q2);
    const double fp = lp_norm(f, pd, q2);
    const double common = g + (1.0 + rep.Gamma_v * std::pow(vol, 1.0 / rep.r - (pd - 1.0) / pd)) * std::pow(g, pd - 1.0) +
                          rep.Gamma_v * fp;
    rep.rhs_lp = common + rep.Gamma_t * std::pow(vol, 1.0 / rep.r - 1.0 / pd) * fp;
    rep.C_meas = rep.rhs_lp > 0.0 ? rep.lhs / rep.rhs_lp : 0.0;
    if (pd >= 2.0) {
        rep.rhs_l2 = common + rep.Gamma_t * std::pow(vol, 1.0 / rep.r - 0.5) * lp_norm(f, 2.0, q2);
        rep.C_meas_l2 = rep.rhs_l2 > 0.0 ? rep.lhs / rep.rhs_l2 : 0.0;
    }
    return rep;
}

EnergyReport energy_experiment(const Field& f, const Field& grad_v_f, double p, double theta, double R1, double R2,
                               const PhasePoint& center) {
    if (!(R1 > 0.0 && R1 < R2)) throw std::invalid_argument("energy_experiment: need 0 < R1 < R2");
    for (double x : f.data())
        if (x < 0.0) throw std::invalid_argument("energy_experiment: f must be nonnegative");
    const Cylinder q1{center, theta, R1, p}, q2{center, theta, R2, p};
    if (!cylinder_inside_box(f, q2)) throw std::domain_error("energy_experiment: cylinder outside box");
    EnergyReport rep;
    const double s = linf_l2_slice_norm(f, q1);
    rep.slice_term = s * s;
    rep.gradient_term = lp_power(grad_v_f, p, q1);
    rep.lhs = rep.slice_term + rep.gradient_term;
    const double gap = std::pow(R2 - R1, p);
    rep.rhs_l2 = lp_power(f, 2.0, q2) / (theta * gap);
    rep.rhs_lp = lp_power(f, p, q2) / gap;
    rep.rhs = rep.rhs_l2 + rep.rhs_lp;
    rep.C_meas = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
    return rep;
}

TransferReport transfer_experiment(const Field& f, const Field& grad_v_f, const Field& S0, const Rational& p,
                                   const Rational& q, const std::vector<double>& h_set) {
    const auto tt = compute_transfer({1, p, conjugate(p)}, q);
    if (!tt.valid) throw std::invalid_argument(std::string("transfer_experiment: invalid q: ") + reason_name(tt.reason));
    TransferReport rep;
    rep.s = to_double(tt.s);
    rep.q = to_double(q);
    rep.alpha = to_double(tt.alpha_s);
    const double pd = to_double(p);
    rep.besov = besov_seminorm(f, rep.s, rep.q, h_set);
    rep.norm_grad_p = lp_norm(grad_v_f, pd);
    rep.norm_S0_dual = lp_norm(S0, pd / (pd - 1.0));
    rep.denominator = std::pow(rep.norm_grad_p, rep.alpha) * std::pow(rep.norm_S0_dual, 1.0 - rep.alpha);
    rep.C_meas = rep.denominator > 0.0 ? rep.besov.value / rep.denominator : 0.0;
    return rep;
}

SampledPair sample_pair(const GNPair& pair, const GridSpec& grid) {
    return {Field::from_function(grid.box, grid.nt, grid.nx, grid.nv, pair.f),
            Field::from_function(grid.box, grid.nt, grid.nx, grid.nv, pair.dvf),
            Field::from_function(grid.box, grid.nt, grid.nx, grid.nv, pair.S0)};
}

GNPair gaussian_gn_pair() {
    GNPair g;
    g.f = [](double t, double x, double v) { return (4.0 * v * v - 2.0) * std::exp(-t * t - x * x - v * v); };
    g.dvf = [](double t, double x, double v) { return (12.0 * v - 8.0 * v * v * v) * std::exp(-t * t - x * x - v * v); };
    g.S0 = [](double t, double x, double v) {
        return (4.0 * t * v + 4.0 * x * v * v + 2.0 * x) * std::exp(-t * t - x * x - v * v);
    };
    return g;
}

std::vector<ManufacturedCase> manufactured_suite() {
    std::vector<ManufacturedCase> out;
    {
        ManufacturedCase c;
        c.name = "gaussian";
        c.f = [](double t, double x, double v) { return std::exp(-(t * t + x * x + v * v)); };
        c.dvf = [](double t, double x, double v) { return -2.0 * v * std::exp(-(t * t + x * x + v * v)); };
        c.src.S1 = [](double t, double x, double v) {
            return (-2.0 * t - 2.0 * x * v) * std::exp(-(t * t + x * x + v * v));
        };
        c.sup = 1.0;
        out.push_back(c);
    }
    {
        ManufacturedCase c;
        c.name = "velocity_profile";
        c.f = [](double, double, double v) { return std::exp(-v * v); };
        c.dvf = [](double, double, double v) { return -2.0 * v * std::exp(-v * v); };
        c.sup = 1.0;
        out.push_back(c);
    }
    {
        ManufacturedCase c;
        c.name = "divergence_source";
        c.f = [](double t, double, double v) { return -2.0 * v * std::exp(-t * t - v * v); };
        c.dvf = [](double t, double, double v) { return (4.0 * v * v - 2.0) * std::exp(-t * t - v * v); };
        c.src.S0 = [](double t, double, double v) { return -2.0 * t * std::exp(-t * t - v * v); };
        c.sup = std::sqrt(2.0) * std::exp(-0.5);
        out.push_back(c);
    }
    return out;
}

std::vector<std::pair<std::string, ScalarFn>> regression_fields() {
    return {
        {"modulated_gaussian",
         [](double t, double x, double v) { return std::exp(-(t * t + x * x + v * v)) * (1.0 + 0.3 * std::sin(x + v)); }},
        {"rational_x", [](double, double x, double v) { return std::exp(-v * v) / (1.0 + x * x); }},
        {"oscillating_t", [](double t, double x, double v) { return std::cos(2.0 * t) * std::exp(-(x * x + v * v)); }},
    };
}

CylinderRun cylinder_solution(double p, double theta, double R2, int level, double eps_reg) {
    if (!(theta > 0.0 && R2 > 0.0) || level < 0) throw std::invalid_argument("cylinder_solution: bad parameters");
    const int m = 1 << level;
    const double duration = theta * std::pow(R2, p);
    const double xh = 1.25 * theta * std::pow(R2, 1.0 + p), vh = 1.25 * R2;
    SolverConfig c;
    c.t_start = 0.0;
    c.t_end = 1.5 * duration;
    c.dt = c.t_end / (40 * m);
    c.x0 = -xh;
    c.x1 = xh;
    c.v0 = -vh;
    c.v1 = vh;
    c.nx = 64 * m;
    c.nv = 32 * m;
    const double pi = std::acos(-1.0);
    const Field f0 = initial_slice(c, [&](double x, double v) {
        return 1.0 + 0.5 * std::cos(pi * x / xh) * std::exp(-2.0 * v * v / (R2 * R2));
    });
    const double eps = eps_reg >= 0.0 ? eps_reg : (p < 2.0 ? 1e-3 : 0.0);
    CylinderRun run{solve(f0, p_laplace(p, eps), c), Field(), PhasePoint(c.t_end, 0.0, 0.0)};
    run.grad_v = grad_v(run.solution.f);
    return run;
}

}  // namespace kinlap
