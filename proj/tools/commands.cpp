#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include "kinlap/degiorgi.hpp"
#include "kinlap/exponents.hpp"
#include "kinlap/mollification.hpp"
#include "kinlap/solver.hpp"
#include "kinlap/trajectories.hpp"
#include "kinlap/verify.hpp"
#include "report.hpp"

namespace kinlap::cli {

namespace {

KeySpec out_key() {
    return {"out", KeyType::String, "", "report path (stdout when empty)"};
}

double rel_change(double a, double b) {
    return std::abs(b / a - 1.0);
}

std::string fmt(double x) {
    return format_double(x);
}

// exponents ------------------------------------------------------------------

json exponent_body(const ProblemParams& pp, const Rational& q) {
    const auto t = compute_exponents(pp);
    json body{{"d", pp.d},
              {"p", format_rational(pp.p)},
              {"mu", format_rational(pp.mu)},
              {"inv_q", format_rational(t.inv_q)},
              {"q", format_rational(t.q)},
              {"a", format_rational(t.a)},
              {"qbar", format_rational(t.qbar)},
              {"alpha", format_rational(t.alpha)},
              {"delta_dg", format_rational(t.delta_dg)},
              {"admissible", t.admissible},
              {"reason", reason_name(t.reason)}};
    body["r_source"] = t.r_source ? json(format_rational(*t.r_source)) : json(nullptr);
    if (t.reason != Reason::DaSingular) {
        body["beta"] = format_rational(t.beta);
        body["Qdim"] = format_rational(t.Qdim);
        body["theta0"] = format_rational(t.theta0);
        body["theta1"] = format_rational(t.theta1);
        body["thetav"] = format_rational(t.thetav);
        const Rational alt_p = 1 / pp.p + (1 - t.beta) / t.Qdim;
        const Rational alt_mu = 1 / pp.mu + (t.beta - 2) / t.Qdim;
        body["checks"] = {{"inv_q_forms_agree", alt_p == t.inv_q && alt_mu == t.inv_q},
                          {"scaling_balance", scaling_balance(pp, t).holds()}};
    }
    if (q > 0) {
        const auto tr = compute_transfer(pp, q);
        body["transfer"] = {{"q", format_rational(tr.q)},
                            {"s", format_rational(tr.s)},
                            {"alpha_s", format_rational(tr.alpha_s)},
                            {"alpha_s_alt", format_rational(tr.alpha_s_alt)},
                            {"beta", format_rational(tr.beta)},
                            {"Qdim", format_rational(tr.Qdim)},
                            {"theta0_s", format_rational(tr.theta0_s)},
                            {"theta1_s", format_rational(tr.theta1_s)},
                            {"thetav_s", format_rational(tr.thetav_s)},
                            {"valid", tr.valid},
                            {"reason", reason_name(tr.reason)}};
    }
    return body;
}

int run_exponents(const Config& cfg) {
    const ProblemParams pp{static_cast<int>(cfg.integer("d")), cfg.rational("p"), cfg.rational("mu")};
    validate(pp);
    const long long n = cfg.integer("map_n");
    const std::string out = cfg.string("out");
    if (n > 0) {
        // (p, μ) admissibility map over [p_lo, p_hi]² with rational nodes
        const Rational lo = cfg.rational("map_lo"), hi = cfg.rational("map_hi");
        if (!(hi > lo && lo > 1)) throw ConfigError("map range must satisfy 1 < map_lo < map_hi");
        std::ofstream file;
        if (!out.empty()) {
            file.open(out, std::ios::binary);
            if (!file) throw ConfigError("cannot write output file: " + out);
        }
        std::ostream& os = out.empty() ? std::cout : file;
        os << "p,mu,inv_q,beta,admissible,reason\n";
        for (long long i = 0; i <= n; ++i)
            for (long long j = 0; j <= n; ++j) {
                const Rational p = lo + (hi - lo) * i / n, mu = lo + (hi - lo) * j / n;
                const auto t = compute_exponents({pp.d, p, mu});
                os << fmt(to_double(p)) << ',' << fmt(to_double(mu)) << ',' << fmt(to_double(t.inv_q)) << ','
                   << (t.reason == Reason::DaSingular ? std::string() : fmt(to_double(t.beta))) << ','
                   << (t.admissible ? "true" : "false") << ',' << reason_name(t.reason) << '\n';
            }
        if (!out.empty()) {
            std::ofstream m(out + ".meta.json", std::ios::binary);
            m << meta_document(cfg, {{"columns", "p,mu,inv_q,beta,admissible,reason"}}).dump(2) << '\n';
        }
        return 0;
    }
    const json body = exponent_body(pp, cfg.rational("q"));
    emit_json(cfg, body, out);
    if (body.contains("checks"))
        for (const auto& c : body["checks"])
            if (!c.get<bool>()) return 1;
    return 0;
}

// trajectory-check -------------------------------------------------------------

int run_trajectory(const Config& cfg) {
    TrajectoryParams tp;
    tp.beta = to_double(cfg.rational("beta"));
    tp.m0 = cfg.real("m0");
    tp.m1 = {cfg.real("m1")};
    tp.m2 = {cfg.real("m2")};
    const double tol = cfg.real("det_tol");
    const auto grid = log_grid(cfg.real("r_min"), cfg.real("r_max"), static_cast<int>(cfg.integer("n")));
    const auto rep = check_M2_M3_M4(tp, grid);
    Report out;
    std::vector<double> rs, c1, c2, dv, vv, xx;
    for (const auto& row : rep.rows) {
        out.add("det_ratio", row.r, 1.0, row.det_ratio, verdict(std::abs(row.det_ratio - 1.0) <= tol), tol);
        out.add("m3_col1", row.r, kNone, row.m3_col1);
        out.add("m3_col2", row.r, kNone, row.m3_col2);
        out.add("m4_dv", row.r, kNone, row.m4_dv);
        out.add("m4_v", row.r, kNone, row.m4_v);
        out.add("m4_x", row.r, kNone, row.m4_x);
        out.add("inverse_error", row.r, 0.0, row.inverse_error);
        rs.push_back(row.r);
        c1.push_back(row.m3_col1);
        c2.push_back(row.m3_col2);
        dv.push_back(row.m4_dv);
        vv.push_back(row.m4_v);
        xx.push_back(row.m4_x);
    }
    const double window = 2.0 * std::acos(-1.0);
    out.add("m3_col1_envelope_slope", kNone, 0.0, envelope_slope(rs, c1, window));
    out.add("m3_col2_envelope_slope", kNone, 0.0, envelope_slope(rs, c2, window));
    out.add("m4_dv_envelope_slope", kNone, 0.0, envelope_slope(rs, dv, window));
    out.add("m4_v_envelope_slope", kNone, 0.0, envelope_slope(rs, vv, window));
    out.add("m4_x_envelope_slope", kNone, 0.0, envelope_slope(rs, xx, window));

    const PhasePoint z(0.3, 0.2, -0.1);
    const double r0 = cfg.real("m1_r");
    std::vector<double> lh, le;
    for (double h : {1e-2, 5e-3, 2.5e-3}) {
        const double e = check_M1(tp, r0, z, h);
        out.add("m1_residual", h, kNone, e);
        lh.push_back(std::log(h));
        le.push_back(std::log(e));
    }
    const double slope = regression_slope(lh, le);
    out.add("m1_richardson_slope", r0, 2.0, slope, verdict(std::abs(slope - 2.0) <= 0.1), 0.1);
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

// kernel-norms -------------------------------------------------------------------

int run_kernel_norms(const Config& cfg) {
    const double beta = to_double(cfg.rational("beta"));
    const double theta = cfg.real("theta");
    const double tol = cfg.real("slope_tol");
    const int grid = static_cast<int>(cfg.integer("grid"));
    const KernelFamily fam(beta);
    const double Q = fam.Qdim();
    Report out;

    const auto rs = log_grid(cfg.real("r_min"), cfg.real("r_max"), static_cast<int>(cfg.integer("n_r")));
    const double pred = Q * (1.0 / theta - 1.0);
    std::vector<double> lr, ln;
    double anchor = 0.0;
    for (double r : rs) {
        const double n = kernel_lp_norm(fam, KernelKind::K, r, theta, UGrid{grid, grid, grid});
        if (anchor == 0.0) anchor = n / std::pow(r, pred);
        out.add("norm_K", r, anchor * std::pow(r, pred), n);
        lr.push_back(std::log(r));
        ln.push_back(std::log(n));
    }
    const double slope = regression_slope(lr, ln);
    out.add("norm_K_slope", theta, pred, slope, verdict(std::abs(slope - pred) <= tol), tol);

    const double th[3] = {Q / (Q + beta - 2.0), Q / (Q - 1.0), Q / (Q + 1.0 - beta)};
    const KernelKind kinds[3] = {KernelKind::G0, KernelKind::G1, KernelKind::Gv};
    const double var_tol = cfg.real("variation_tol");
    const int wn = static_cast<int>(cfg.integer("weak_grid")), rn = static_cast<int>(cfg.integer("r_nodes"));
    for (int i = 0; i < 3; ++i) {
        double lo = INFINITY, hi = 0.0;
        const std::string name = std::string("weak_int_") + kernel_name(kinds[i]);
        for (double tau : cfg.reals("tau_list")) {
            const auto ik = integrated_kernel(fam, kinds[i], tau, wn, rn);
            const double w = weak_lp_norm(ik.values, ik.cell_volume, th[i]);
            out.add(name, tau, kNone, w);
            lo = std::min(lo, w);
            hi = std::max(hi, w);
        }
        out.add(name + "_variation", th[i], 0.0, hi / lo - 1.0, verdict(hi / lo - 1.0 < var_tol), var_tol);
    }

    const double s = cfg.real("s");
    std::vector<double> lh, lH;
    for (double h : log_grid(cfg.real("h_min"), cfg.real("h_max"), static_cast<int>(cfg.integer("n_h")))) {
        const double c = std::pow(h, 1.0 / beta);
        double best = 0.0;
        for (double r : log_grid(c * std::pow(10.0, -1.2), c * std::pow(10.0, 1.2), 25))
            best = std::max(best, kernel_difference_norm(fam, KernelKind::K, r, h, theta, grid) *
                                      std::pow(r, -pred + beta * s));
        out.add("diff_K", h, kNone, best);
        lh.push_back(std::log(h));
        lH.push_back(std::log(best));
    }
    const double dslope = regression_slope(lh, lH);
    out.add("diff_K_slope", s, s, dslope, verdict(std::abs(dslope - s) <= tol), tol);
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

// mollify-check ------------------------------------------------------------------

std::vector<PhasePoint> representation_points() {
    return {PhasePoint(0.3, 0.2, -0.1), PhasePoint(-0.4, -0.3, 0.5)};
}

int run_mollify(const Config& cfg) {
    const double beta = to_double(cfg.rational("beta"));
    const double tau = cfg.real("tau");
    const KernelFamily fam(beta, tau);
    const int ug = static_cast<int>(cfg.integer("ugrid"));
    const UGrid grid{ug, ug, ug};
    const int mres = static_cast<int>(cfg.integer("m_res"));
    Report out;

    const auto box = fam.support(tau);
    const KernelFn K = [&](double s, double y, double w) { return fam.K(tau, s, y, w); };
    const PhasePoint z0(0.3, 0.2, -0.1);
    const double mass = apply_TJ_kernel(K, box, [](double, double, double) { return 1.0; }, z0, grid);
    out.add("unit_mass", tau, 1.0, mass, verdict(std::abs(mass - 1.0) <= 1e-6), 1e-6);

    int idx = 0;
    for (const auto& [name, g] : regression_fields()) {
        const double a = apply_TK_mspace(fam, g, z0, mres);
        const double b = apply_TJ_kernel(K, box, g, z0, grid);
        const double rel = std::abs(a - b) / std::max(std::abs(a), 1e-300);
        out.add("cov_rel_" + name, idx++, a, b, verdict(rel <= 1e-3), 1e-3);
    }

    RepresentationQuadrature q{mres, static_cast<int>(cfg.integer("r_nodes")), cfg.real("kappa")};
    RepresentationQuadrature q2{2 * q.m_res, 2 * q.r_nodes, q.kappa};
    const bool refine = cfg.boolean("refine");
    for (const auto& c : manufactured_suite()) {
        const auto rep = representation_residual(fam, c.f, c.dvf, c.src, representation_points(), q);
        const double r1 = rep.max_residual / c.sup;
        out.add("repr_residual_" + c.name, q.m_res, 0.0, r1, verdict(r1 <= 1e-2), 1e-2);
        if (refine) {
            const auto rep2 = representation_residual(fam, c.f, c.dvf, c.src, representation_points(), q2);
            const double r2 = rep2.max_residual / c.sup;
            out.add("repr_residual_refined_" + c.name, q2.m_res, r1, r2, verdict(r2 < r1));
        }
    }
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

// solve ------------------------------------------------------------------------

int run_solve(const Config& cfg) {
    const double p = to_double(cfg.rational("p"));
    SolverConfig sc;
    sc.t_start = cfg.real("t_start");
    sc.t_end = cfg.real("t_end");
    sc.dt = cfg.real("dt");
    sc.x0 = cfg.real("x0");
    sc.x1 = cfg.real("x1");
    sc.v0 = cfg.real("v0");
    sc.v1 = cfg.real("v1");
    sc.nx = static_cast<int>(cfg.integer("nx"));
    sc.nv = static_cast<int>(cfg.integer("nv"));
    sc.cfl = cfg.real("cfl");
    sc.max_substeps = cfg.integer("max_substeps");
    sc.validate();
    const double eps = cfg.real("eps_reg");
    const Nonlinearity nl = eps >= 0.0 ? p_laplace(p, eps) : p_laplace(p);

    const std::string init = cfg.string("initial");
    const double pi = std::acos(-1.0);
    const double xc = 0.5 * (sc.x0 + sc.x1), xw = 0.5 * (sc.x1 - sc.x0);
    Field f0;
    if (init == "bump") {
        f0 = initial_slice(sc, [&](double x, double v) {
            return 1.0 + 0.5 * std::cos(pi * (x - xc) / xw) * std::exp(-2.0 * v * v);
        });
    } else if (init == "gaussian") {
        f0 = initial_slice(sc, [&](double x, double v) {
            return std::exp(-((x - xc) * (x - xc)) / (0.1 * xw * xw) - 4.0 * v * v);
        });
    } else if (init == "random") {
        std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.integer("seed")));
        std::uniform_real_distribution<double> U(0.0, 1.0);
        f0 = initial_slice(sc, [](double, double) { return 0.0; });
        for (double& x : f0.data()) x = 0.5 + 0.5 * U(rng);
    } else {
        throw ConfigError("initial must be bump, gaussian or random");
    }
    const auto sol = solve(f0, nl, sc);

    Report out;
    const double mtol = cfg.real("mass_tol");
    out.add("mass_drift", sc.t_end, 0.0, sol.max_mass_drift, verdict(sol.max_mass_drift <= mtol), mtol);
    bool mono = true;
    double prev = INFINITY;
    for (const auto& d : sol.diagnostics) {
        if (d.l2 > prev * (1.0 + 1e-12)) mono = false;
        prev = d.l2;
    }
    out.add("l2_monotone", kNone, 1.0, mono ? 1.0 : 0.0, verdict(mono));
    for (int k = 0; k < sol.f.nt(); ++k) {
        double mass = 0.0, mx = 0.0;
        for (int ix = 0; ix < sol.f.nx(); ++ix)
            for (int iv = 0; iv < sol.f.nv(); ++iv) {
                mass += sol.f.at(k, ix, iv);
                mx = std::max(mx, std::abs(sol.f.at(k, ix, iv)));
            }
        out.add("slice_mass", sol.f.t(k), kNone, mass * sol.f.dx() * sol.f.dv());
        out.add("slice_max", sol.f.t(k), kNone, mx);
    }
    out.add("substeps", kNone, kNone, static_cast<double>(sol.diagnostics.size()));
    if (const auto path = cfg.string("field"); !path.empty()) write_field_binary(sol.f, path);
    if (const auto path = cfg.string("diagnostics"); !path.empty()) {
        std::ofstream d(path, std::ios::binary);
        if (!d) throw ConfigError("cannot write diagnostics file: " + path);
        write_diagnostics_csv(sol.diagnostics, d);
    }
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

// verify-gn ---------------------------------------------------------------------

int run_gn(const Config& cfg) {
    const ProblemParams pp{1, cfg.rational("p"), cfg.rational("mu")};
    const double th = cfg.real("t_half"), xh = cfg.real("x_half"), vh = cfg.real("v_half");
    const Box box{-th, th, -xh, xh, -vh, vh};
    GridSpec g{box, static_cast<int>(cfg.integer("nt")), static_cast<int>(cfg.integer("nx")),
               static_cast<int>(cfg.integer("nv"))};
    const auto pair = gaussian_gn_pair();
    const auto rep = gn_experiment(pair, g, pp, cfg.reals("factors"));
    Report out;
    out.add("norm_f_q", rep.q, kNone, rep.norm_f_q);
    out.add("norm_grad_p", rep.p, kNone, rep.norm_grad_p);
    out.add("norm_S0_mu", rep.mu, kNone, rep.norm_S0_mu);
    out.add("alpha", kNone, kNone, rep.alpha);
    if (rep.degenerate) {
        out.add("gn_degenerate", kNone, kNone, 1.0);
        emit_csv(cfg, out, cfg.string("out"));
        return 0;
    }
    for (const auto& r : rep.rows)
        out.add("gn_ratio[lambda=" + fmt(r.lambda) + ";nu=" + fmt(r.nu) + "]", r.lambda, rep.ratio, r.ratio);
    const double stol = cfg.real("spread_tol");
    out.add("gn_spread", kNone, 1.0, rep.scaling_spread, verdict(rep.scaling_spread <= 1.0 + stol), stol);
    if (cfg.boolean("refine")) {
        GridSpec g2{box, 2 * g.nt, 2 * g.nx, 2 * g.nv};
        const auto rep2 = gn_experiment(pair, g2, pp, {1.0});
        const double ch = rel_change(rep.ratio, rep2.ratio);
        const double rtol = cfg.real("refine_tol");
        out.add("gn_ratio_refined", 2.0, rep.ratio, rep2.ratio);
        out.add("gn_refinement_change", kNone, 0.0, ch, verdict(ch <= rtol), rtol);
    }
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

// verify-energy / verify-local-gain ----------------------------------------------

struct CylinderInput {
    Field f, grad;
    PhasePoint center;
};

CylinderInput cylinder_input(const Config& cfg, double p, double theta, double R2, int level) {
    if (const auto path = cfg.string("field"); !path.empty()) {
        Field f = read_field_binary(path);
        Field g = grad_v(f);
        const double tc = f.t(f.nt() - 1) + 0.5 * f.dt();
        return {std::move(f), std::move(g), PhasePoint(tc, cfg.real("x_center"), 0.0)};
    }
    auto run = cylinder_solution(p, theta, R2, level, cfg.real("eps_reg"));
    return {std::move(run.solution.f), std::move(run.grad_v), run.center};
}

int run_energy(const Config& cfg) {
    const double p = to_double(cfg.rational("p"));
    const double theta = cfg.real("theta"), R1 = cfg.real("R1"), R2 = cfg.real("R2");
    const bool refine = cfg.boolean("refine") && cfg.string("field").empty();
    Report out;
    std::vector<double> Cs;
    for (int level = 0; level <= (refine ? 1 : 0); ++level) {
        const auto in = cylinder_input(cfg, p, theta, R2, level);
        const auto r = energy_experiment(in.f, in.grad, p, theta, R1, R2, in.center);
        out.add("slice_term", level, kNone, r.slice_term);
        out.add("gradient_term", level, kNone, r.gradient_term);
        out.add("rhs_l2", level, kNone, r.rhs_l2);
        out.add("rhs_lp", level, kNone, r.rhs_lp);
        out.add("energy_C", level, kNone, r.C_meas, verdict(std::isfinite(r.C_meas) && r.C_meas > 0.0));
        Cs.push_back(r.C_meas);
    }
    if (Cs.size() == 2) {
        const double tol = cfg.real("refine_tol");
        const double ch = rel_change(Cs[0], Cs[1]);
        out.add("energy_refinement_change", theta, 0.0, ch, verdict(ch <= tol), tol);
    }
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

int run_local_gain(const Config& cfg) {
    const Rational pr = cfg.rational("p");
    const double p = to_double(pr);
    const double theta = cfg.real("theta"), R1 = cfg.real("R1"), R2 = cfg.real("R2");
    const bool refine = cfg.boolean("refine") && cfg.string("field").empty();
    Report out;
    std::vector<double> Cs;
    for (int level = 0; level <= (refine ? 1 : 0); ++level) {
        const auto in = cylinder_input(cfg, p, theta, R2, level);
        const auto r = localized_gain_experiment(in.f, in.grad, pr, theta, R1, R2, in.center);
        out.add("Gamma_t", level, 1.0 / (theta * (std::pow(R2, p) - std::pow(R1, p))), r.Gamma_t);
        out.add("Gamma_v", level,
                std::pow(R2, p) / (std::pow(R2, 1.0 + p) - std::pow(R1, 1.0 + p)) + 1.0 / (R2 - R1), r.Gamma_v);
        out.add("lhs", level, kNone, r.lhs);
        out.add("rhs_lp", level, kNone, r.rhs_lp);
        out.add("local_gain_C", level, kNone, r.C_meas, verdict(std::isfinite(r.C_meas) && r.C_meas > 0.0));
        if (p >= 2.0) {
            out.add("rhs_l2", level, kNone, r.rhs_l2);
            out.add("local_gain_C_l2", level, kNone, r.C_meas_l2, verdict(std::isfinite(r.C_meas_l2)));
        }
        Cs.push_back(r.C_meas);
    }
    if (Cs.size() == 2) out.add("local_gain_refinement_change", theta, 0.0, rel_change(Cs[0], Cs[1]));
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

// verify-transfer ----------------------------------------------------------------

int run_transfer(const Config& cfg) {
    const Rational p = cfg.rational("p"), q = cfg.rational("q");
    const double th = cfg.real("t_half"), xh = cfg.real("x_half"), vh = cfg.real("v_half");
    const Box box{-th, th, -xh, xh, -vh, vh};
    const int nt = static_cast<int>(cfg.integer("nt")), nx = static_cast<int>(cfg.integer("nx")),
              nv = static_cast<int>(cfg.integer("nv"));
    const auto hs = dyadic_h_set(cfg.real("h0"), static_cast<int>(cfg.integer("h_count")));
    const auto pair = gaussian_gn_pair();
    const auto sp = sample_pair(pair, GridSpec{box, nt, nx, nv});
    const auto rep = transfer_experiment(sp.f, sp.dvf, sp.S0, p, q, hs);
    Report out;
    out.add("s", kNone, kNone, rep.s);
    out.add("alpha", kNone, kNone, rep.alpha);
    bool finite = true;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        out.add("besov_quotient", hs[i], rep.C_meas * rep.denominator, rep.besov.quotients[i]);
        finite = finite && std::isfinite(rep.besov.quotients[i]);
    }
    const double decades = std::log10(hs.front() / hs.back());
    out.add("h_decades", kNone, 2.0, decades, verdict(decades >= 2.0));
    out.add("besov_bounded", kNone, 1.0, finite ? 1.0 : 0.0, verdict(finite));
    out.add("transfer_C", 0, kNone, rep.C_meas);
    if (cfg.boolean("refine")) {
        const auto sp2 = sample_pair(pair, GridSpec{box, 2 * nt, 2 * nx, 2 * nv});
        const auto rep2 = transfer_experiment(sp2.f, sp2.dvf, sp2.S0, p, q, hs);
        const double tol = cfg.real("refine_tol");
        const double ch = rel_change(rep.C_meas, rep2.C_meas);
        out.add("transfer_C", 1, kNone, rep2.C_meas);
        out.add("transfer_refinement_change", kNone, 0.0, ch, verdict(ch <= tol), tol);
    }
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

// degiorgi ----------------------------------------------------------------------

int run_degiorgi(const Config& cfg) {
    const Rational pr = cfg.rational("p");
    const double p = to_double(pr);
    const DGMode mode = parse_mode(cfg.string("mode"));
    Field f;
    PhasePoint z0;
    if (const auto path = cfg.string("field"); !path.empty()) {
        f = read_field_binary(path);
        z0 = PhasePoint(f.t(f.nt() - 1) + 0.5 * f.dt(), 0.0, 0.0);
    } else {
        SolverConfig sc;
        sc.t_end = cfg.real("t_end");
        sc.dt = cfg.real("dt");
        sc.x0 = -cfg.real("x_half");
        sc.x1 = cfg.real("x_half");
        sc.v0 = -cfg.real("v_half");
        sc.v1 = cfg.real("v_half");
        sc.nx = static_cast<int>(cfg.integer("nx"));
        sc.nv = static_cast<int>(cfg.integer("nv"));
        const double pi = std::acos(-1.0), xh = sc.x1;
        const Field f0 = initial_slice(sc, [&](double x, double v) {
            const double c = std::cos(0.5 * pi * x / xh);
            return c * c * std::exp(-4.0 * v * v);
        });
        f = solve(f0, p_laplace(p), sc).f;
        z0 = PhasePoint(f.t(f.nt() - 1), 0.0, 0.0);
    }
    const int N = static_cast<int>(cfg.integer("N"));
    const auto rep = degiorgi_end_to_end(f, pr, mode, z0, cfg.real("R"), cfg.reals("K"), N);
    Report out;
    bool exact = true;
    const EndToEndRow* chosen = nullptr;
    for (const auto& r : rep.rows) {
        if (!r.feasible) {
            out.add("K_feasible", r.K, kNone, 0.0);
            continue;
        }
        out.add("K_feasible", r.K, kNone, 1.0);
        out.add("K_mean_energy", r.K, kNone, r.mean_energy);
        out.add("K_sup_inner", r.K, 1.0, r.sup_inner);
        out.add("K_vanishing", r.K, kNone, r.vanishing ? 1.0 : 0.0);
        exact = exact && r.exact;
        if (r.bounded && (!chosen || r.mean_energy > chosen->mean_energy)) chosen = &r;
    }
    out.add("counting_chains_exact", kNone, 1.0, exact ? 1.0 : 0.0, verdict(exact));
    out.add("any_bounded", kNone, 1.0, rep.any_bounded ? 1.0 : 0.0, verdict(rep.any_bounded));
    out.add("epsilon0", kNone, kNone, rep.epsilon0);
    if (chosen) {
        // cascade of the least smooth bounded configuration
        const Field g = normalize(f, z0, cfg.real("R"), p);
        const Field scaled = intrinsic_rescale(g, chosen->K, p);
        const double tp = std::pow(2.0, p);
        Field u = Field::from_function(Box{-tp, 0.0, -2.0 * tp, 2.0 * tp, -2.0, 2.0}, 48, 64, 32,
                                       field_sampler(scaled));
        for (double& x : u.data()) x = std::max(x, 0.0);
        const auto st = degiorgi_run(u, pr, mode, N);
        out.add("cascade_K", chosen->K, kNone, chosen->K);
        for (const auto& lv : st.levels) {
            out.add("energy", lv.n, kNone, lv.energy);
            out.add("level_chain", lv.n, lv.level_bound, lv.level_measure, verdict(lv.level_ok));
            if (lv.l2_checked) out.add("l2_chain", lv.n, lv.l2_bound, lv.l2_lhs, verdict(lv.l2_ok));
        }
        out.add("recursion_slope", st.slope_points, 1.0 + st.delta, st.recursion_slope);
        const double gamma = cfg.real("gamma") > 0.0 ? cfg.real("gamma") : 3.0 * p;
        const auto il = interleave_check(st.energies(), st.delta, gamma);
        out.add("interleave_C_raw", gamma, kNone, il.C_raw);
        out.add("interleave", gamma, il.C_raw, std::max(il.C_even, il.C_odd), verdict(il.holds));
    }
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

// fast-lemma --------------------------------------------------------------------

int run_fast_lemma(const Config& cfg) {
    const double C1 = cfg.real("C1"), b = cfg.real("b"), delta = cfg.real("delta"), Y0 = cfg.real("Y0");
    const auto r = fast_convergence_lemma(C1, b, delta, Y0, static_cast<int>(cfg.integer("max_iter")),
                                          cfg.real("threshold"));
    Report out;
    out.add("delta0", kNone, kNone, r.delta0);
    for (std::size_t m = 0; m < r.trace.size(); ++m)
        out.add("trace", static_cast<double>(m), Y0 * std::pow(b, -static_cast<double>(m) / delta), r.trace[m]);
    out.add("geometric", kNone, kNone, r.geometric ? 1.0 : 0.0);
    out.add("below_threshold", kNone, kNone, r.below_threshold ? 1.0 : 0.0);
    const bool claim = Y0 > r.delta0 * (1.0 + 1e-12) || r.converged;
    out.add("converged", Y0 / r.delta0, 1.0, r.converged ? 1.0 : 0.0, verdict(claim));
    emit_csv(cfg, out, cfg.string("out"));
    return out.all_pass() ? 0 : 1;
}

}  // namespace

const std::vector<Command>& commands() {
    using K = KeyType;
    static const std::vector<Command> cmds = {
        {"exponents",
         "exponent table for (d, p, mu), optional transfer exponent q, or an admissibility map",
         {{"d", K::Int, 1, "dimension"},
          {"p", K::Rational, "2/1", "diffusion exponent"},
          {"mu", K::Rational, "2/1", "source exponent"},
          {"q", K::Rational, "0/1", "transfer exponent (0 = none)"},
          {"map_n", K::Int, 0, "map resolution; > 0 writes a (p, mu) CSV instead"},
          {"map_lo", K::Rational, "6/5", "map lower bound"},
          {"map_hi", K::Rational, "5/1", "map upper bound"},
          out_key()},
         run_exponents},
        {"trajectory-check",
         "determinant, inverse and growth ratios of the trajectory matrices",
         {{"beta", K::Rational, "3/2", "trajectory exponent"},
          {"m0", K::Real, -1.5, "m0"},
          {"m1", K::Real, 0.5, "m1"},
          {"m2", K::Real, -0.25, "m2"},
          {"r_min", K::Real, 1e-3, "smallest r"},
          {"r_max", K::Real, 1e3, "largest r"},
          {"n", K::Int, 61, "r samples"},
          {"det_tol", K::Real, 1e-10, "relative tolerance for det W"},
          {"m1_r", K::Real, 1.0, "r for the finite-difference check"},
          out_key()},
         run_trajectory},
        {"kernel-norms",
         "Lebesgue and weak norms of the kinetic kernels and their scaling slopes",
         {{"beta", K::Rational, "3/2", "trajectory exponent"},
          {"theta", K::Real, 1.5, "Lebesgue exponent"},
          {"r_min", K::Real, 0.1, "smallest r"},
          {"r_max", K::Real, 1.0, "largest r"},
          {"n_r", K::Int, 5, "r samples"},
          {"grid", K::Int, 48, "kernel grid per axis"},
          {"tau_list", K::RealList, json::array({0.25, 1.0, 4.0}), "tau values for integrated kernels"},
          {"weak_grid", K::Int, 48, "grid per axis for integrated kernels"},
          {"r_nodes", K::Int, 32, "r nodes for integrated kernels"},
          {"s", K::Real, 2.0 / 15.0, "difference exponent"},
          {"h_min", K::Real, 1e-2, "smallest shift"},
          {"h_max", K::Real, 1.0, "largest shift"},
          {"n_h", K::Int, 7, "shift samples"},
          {"slope_tol", K::Real, 0.05, "slope tolerance"},
          {"variation_tol", K::Real, 0.2, "relative variation tolerance over tau"},
          out_key()},
         run_kernel_norms},
        {"mollify-check",
         "unit mass, change of variables and the representation identity",
         {{"beta", K::Rational, "3/2", "trajectory exponent"},
          {"tau", K::Real, 0.5, "mollification scale"},
          {"m_res", K::Int, 16, "m-points per axis"},
          {"r_nodes", K::Int, 64, "graded r nodes"},
          {"kappa", K::Real, 3.0, "grading exponent"},
          {"ugrid", K::Int, 96, "kernel-space grid per axis"},
          {"refine", K::Bool, true, "also run one refinement level"},
          out_key()},
         run_mollify},
        {"solve",
         "explicit solver for the kinetic p-Laplace equation",
         {{"p", K::Rational, "2/1", "diffusion exponent"},
          {"eps_reg", K::Real, -1.0, "regularisation (< 0: default)"},
          {"t_start", K::Real, 0.0, "start time"},
          {"t_end", K::Real, 1.0, "end time"},
          {"dt", K::Real, 0.1, "output interval"},
          {"x0", K::Real, -1.0, "x lower"},
          {"x1", K::Real, 1.0, "x upper"},
          {"v0", K::Real, -1.0, "v lower"},
          {"v1", K::Real, 1.0, "v upper"},
          {"nx", K::Int, 32, "x cells"},
          {"nv", K::Int, 32, "v cells"},
          {"cfl", K::Real, 0.4, "CFL factor"},
          {"max_substeps", K::Int, 0, "substep budget (0: unlimited); exhausting it exits 3"},
          {"initial", K::String, "bump", "bump, gaussian or random"},
          {"seed", K::Int, 1, "seed for random initial data"},
          {"mass_tol", K::Real, 1e-10, "relative mass drift tolerance"},
          {"field", K::String, "", "binary field output path"},
          {"diagnostics", K::String, "", "per-substep CSV path"},
          out_key()},
         run_solve},
        {"verify-gn",
         "kinetic Gagliardo-Nirenberg ratio and its rescaling spread",
         {{"p", K::Rational, "2/1", "gradient exponent"},
          {"mu", K::Rational, "2/1", "source exponent"},
          {"t_half", K::Real, 10.0, "box half width in t"},
          {"x_half", K::Real, 20.0, "box half width in x"},
          {"v_half", K::Real, 10.0, "box half width in v"},
          {"nt", K::Int, 96, "t cells"},
          {"nx", K::Int, 192, "x cells"},
          {"nv", K::Int, 96, "v cells"},
          {"factors", K::RealList, json::array({0.5, 1.0, 2.0}), "lambda and nu values"},
          {"spread_tol", K::Real, 0.02, "spread tolerance"},
          {"refine", K::Bool, true, "also run at doubled resolution"},
          {"refine_tol", K::Real, 0.1, "relative change tolerance"},
          out_key()},
         run_gn},
        {"verify-energy",
         "Caccioppoli constant on a solver solution",
         {{"p", K::Rational, "2/1", "diffusion exponent"},
          {"theta", K::Real, 1.0, "cylinder theta"},
          {"R1", K::Real, 0.75, "inner radius"},
          {"R2", K::Real, 1.0, "outer radius"},
          {"eps_reg", K::Real, -1.0, "regularisation (< 0: default)"},
          {"refine", K::Bool, true, "also run at doubled resolution"},
          {"refine_tol", K::Real, 0.2, "relative change tolerance"},
          {"field", K::String, "", "binary field input (default: fitted solver run)"},
          {"x_center", K::Real, 0.0, "cylinder x centre for field input"},
          out_key()},
         run_energy},
        {"verify-local-gain",
         "localized gain of integrability on a solver solution",
         {{"p", K::Rational, "2/1", "diffusion exponent"},
          {"theta", K::Real, 1.0, "cylinder theta"},
          {"R1", K::Real, 0.75, "inner radius"},
          {"R2", K::Real, 1.0, "outer radius"},
          {"eps_reg", K::Real, -1.0, "regularisation (< 0: default)"},
          {"refine", K::Bool, true, "also run at doubled resolution"},
          {"field", K::String, "", "binary field input (default: fitted solver run)"},
          {"x_center", K::Real, 0.0, "cylinder x centre for field input"},
          out_key()},
         run_local_gain},
        {"verify-transfer",
         "Besov quotients against the transfer bound",
         {{"p", K::Rational, "2/1", "gradient exponent"},
          {"q", K::Rational, "5/2", "target exponent"},
          {"t_half", K::Real, 5.0, "box half width in t"},
          {"x_half", K::Real, 8.0, "box half width in x"},
          {"v_half", K::Real, 5.0, "box half width in v"},
          {"nt", K::Int, 40, "t cells"},
          {"nx", K::Int, 64, "x cells"},
          {"nv", K::Int, 40, "v cells"},
          {"h0", K::Real, 1.0, "largest shift"},
          {"h_count", K::Int, 8, "dyadic shifts"},
          {"refine", K::Bool, true, "also run at doubled resolution"},
          {"refine_tol", K::Real, 0.2, "relative change tolerance"},
          out_key()},
         run_transfer},
        {"degiorgi",
         "De Giorgi cascade after normalisation and intrinsic rescaling, swept over K",
         {{"p", K::Rational, "3/1", "diffusion exponent"},
          {"mode", K::String, "p_ge_2", "p_ge_2 or singular"},
          {"R", K::Real, 0.25, "normalisation radius"},
          {"K", K::RealList, json::array({0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0}), "levels"},
          {"N", K::Int, 12, "cascade depth"},
          {"gamma", K::Real, 0.0, "rate for the interleaving check (0: 3p)"},
          {"t_end", K::Real, 2.0, "solver end time"},
          {"dt", K::Real, 0.025, "solver output interval"},
          {"x_half", K::Real, 2.0, "solver x half width"},
          {"v_half", K::Real, 1.25, "solver v half width"},
          {"nx", K::Int, 64, "x cells"},
          {"nv", K::Int, 40, "v cells"},
          {"field", K::String, "", "binary field input (default: solver run)"},
          out_key()},
         run_degiorgi},
        {"fast-lemma",
         "iterate Y_{m+1} = C1 b^m Y_m^{1+delta}",
         {{"C1", K::Real, 1.0, "constant"},
          {"b", K::Real, 2.0, "base"},
          {"delta", K::Real, 1.0, "exponent gain"},
          {"Y0", K::Real, 0.5, "initial value"},
          {"max_iter", K::Int, 200, "iterations"},
          {"threshold", K::Real, 1e-300, "convergence threshold"},
          out_key()},
         run_fast_lemma},
    };
    return cmds;
}

}  // namespace kinlap::cli
