#include "kinlap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace kinlap {

double Nonlinearity::diffusivity(double xi) const {
    if (slope) return slope(xi);
    const double h = 1e-6 * std::max(1.0, std::abs(xi));
    return std::abs(flux(0.0, 0.0, 0.0, 0.0, xi + h) - flux(0.0, 0.0, 0.0, 0.0, xi - h)) / (2.0 * h);
}

Nonlinearity p_laplace(double p, double eps_reg) {
    if (!(p > 1.0)) throw std::invalid_argument("p_laplace: p must exceed 1");
    if (!(eps_reg >= 0.0)) throw std::invalid_argument("p_laplace: eps_reg must be >= 0");
    Nonlinearity nl;
    nl.p = p;
    nl.eps_reg = eps_reg;
    if (eps_reg == 0.0) {
        nl.flux = [p](double, double, double, double, double xi) {
            return xi == 0.0 ? 0.0 : std::pow(std::abs(xi), p - 2.0) * xi;
        };
        nl.slope = [p](double xi) { return xi == 0.0 ? (p == 2.0 ? 1.0 : 0.0) : (p - 1.0) * std::pow(std::abs(xi), p - 2.0); };
    } else {
        const double e2 = eps_reg * eps_reg;
        nl.flux = [p, e2](double, double, double, double, double xi) {
            return std::pow(xi * xi + e2, 0.5 * (p - 2.0)) * xi;
        };
        nl.slope = [p, e2](double xi) {
            const double a = xi * xi + e2;
            return std::pow(a, 0.5 * (p - 4.0)) * ((p - 1.0) * xi * xi + e2);
        };
    }
    return nl;
}

Nonlinearity p_laplace(double p) {
    return p_laplace(p, p < 2.0 ? 1e-6 : 0.0);
}

Nonlinearity no_diffusion() {
    Nonlinearity nl;
    nl.p = 2.0;
    nl.flux = [](double, double, double, double, double) { return 0.0; };
    nl.slope = [](double) { return 0.0; };
    return nl;
}

int SolverConfig::slices() const {
    return static_cast<int>(std::llround((t_end - t_start) / dt)) + 1;
}

Box SolverConfig::initial_box() const {
    return {t_start - 0.5 * dt, t_start + 0.5 * dt, x0, x1, v0, v1};
}

void SolverConfig::validate() const {
    if (nx < 8 || nv < 8) throw std::invalid_argument("SolverConfig: grid must be at least 8x8");
    if (!(dt > 0.0) || !(t_end > t_start)) throw std::invalid_argument("SolverConfig: need dt > 0 and t_end > t_start");
    if (!(x1 > x0 && v1 > v0)) throw std::invalid_argument("SolverConfig: empty box");
    if (!(cfl > 0.0 && cfl <= 0.5)) throw std::invalid_argument("SolverConfig: cfl must lie in (0, 1/2]");
    if (max_substeps < 0) throw std::invalid_argument("SolverConfig: max_substeps must be >= 0");
    const double n = (t_end - t_start) / dt;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n))
        throw std::invalid_argument("SolverConfig: (t_end - t_start) must be a multiple of dt");
}

namespace {

double max_abs_v(const Field& f) {
    return std::max(std::abs(f.box().v0), std::abs(f.box().v1));
}

double max_face_slope(const Field& s, const Nonlinearity& nl) {
    double m = 0.0;
    const double inv = 1.0 / s.dv();
    for (int ix = 0; ix < s.nx(); ++ix)
        for (int iv = 0; iv + 1 < s.nv(); ++iv) m = std::max(m, nl.diffusivity((s.at(0, ix, iv + 1) - s.at(0, ix, iv)) * inv));
    return m;
}

double slice_mass(const Field& s) {
    double m = 0.0;
    for (double x : s.data()) m += x;
    return m * s.dx() * s.dv();
}

double slice_l2(const Field& s) {
    double m = 0.0;
    for (double x : s.data()) m += x * x;
    return std::sqrt(m * s.dx() * s.dv());
}

void check_slice(const Field& s) {
    if (s.nt() != 1 || s.comps() != 1) throw std::invalid_argument("solver: expected a single scalar slice");
    if (s.nv() < 2) throw std::invalid_argument("solver: need nv >= 2");
}

}  // namespace

double stable_dt(const Field& slice, const Nonlinearity& nl, const SolverConfig& cfg) {
    check_slice(slice);
    const double vmax = max_abs_v(slice);
    const double dtt = vmax > 0.0 ? slice.dx() / vmax : std::numeric_limits<double>::infinity();
    const double D = max_face_slope(slice, nl);
    const double dtd = D > 0.0 ? slice.dv() * slice.dv() / (2.0 * D) : std::numeric_limits<double>::infinity();
    return cfg.cfl * std::min(dtt, dtd);
}

Field step(const Field& slice, const Nonlinearity& nl, const SolverConfig& cfg, double time, double dt_sub) {
    check_slice(slice);
    if (!(dt_sub > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const double limit = stable_dt(slice, nl, cfg);
    if (dt_sub > limit * (1.0 + 1e-12))
        throw NumericalError("step: dt " + format_double(dt_sub) + " violates the CFL limit " + format_double(limit));
    const int nx = slice.nx(), nv = slice.nv();
    const double dx = slice.dx(), dv = slice.dv();

    Field a = slice;
    for (int ix = 0; ix < nx; ++ix) {
        const int left = (ix + nx - 1) % nx, right = (ix + 1) % nx;
        for (int iv = 0; iv < nv; ++iv) {
            const double v = slice.v(iv);
            const double c = dt_sub * v / dx;
            const double f = slice.at(0, ix, iv);
            a.at(0, ix, iv) = v > 0.0 ? f - c * (f - slice.at(0, left, iv)) : f - c * (slice.at(0, right, iv) - f);
        }
    }

    Field b = a;
    std::vector<double> face(nv + 1, 0.0);
    for (int ix = 0; ix < nx; ++ix) {
        const double x = slice.x(ix);
        for (int iv = 0; iv + 1 < nv; ++iv) {
            const double xi = (a.at(0, ix, iv + 1) - a.at(0, ix, iv)) / dv;
            const double eta = 0.5 * (a.at(0, ix, iv + 1) + a.at(0, ix, iv));
            face[iv + 1] = nl(time, x, slice.box().v0 + (iv + 1) * dv, eta, xi);
        }
        face[0] = face[nv] = 0.0;
        for (int iv = 0; iv < nv; ++iv) b.at(0, ix, iv) += dt_sub / dv * (face[iv + 1] - face[iv]);
    }

    if (cfg.source)
        for (int ix = 0; ix < nx; ++ix)
            for (int iv = 0; iv < nv; ++iv) b.at(0, ix, iv) += dt_sub * cfg.source(time, slice.x(ix), slice.v(iv));

    if (!b.finite()) throw NumericalError("step: non-finite values");
    const double before = slice.max_abs(), after = b.max_abs();
    if (before > 0.0 && after > 10.0 * before) throw NumericalError("step: growth factor above 10");
    return b;
}

Field initial_slice(const SolverConfig& cfg, const std::function<double(double x, double v)>& f0) {
    cfg.validate();
    Field s(cfg.initial_box(), 1, cfg.nx, cfg.nv, 1, Extension::PeriodicX);
    for (int ix = 0; ix < cfg.nx; ++ix)
        for (int iv = 0; iv < cfg.nv; ++iv) s.at(0, ix, iv) = f0(s.x(ix), s.v(iv));
    return s;
}

Solution solve(const Field& f0, const Nonlinearity& nl, const SolverConfig& cfg) {
    cfg.validate();
    check_slice(f0);
    if (f0.nx() != cfg.nx || f0.nv() != cfg.nv) throw std::invalid_argument("solve: initial slice does not match grid");
    const int nt = cfg.slices();
    const Box box{cfg.t_start - 0.5 * cfg.dt, cfg.t_start + (nt - 0.5) * cfg.dt, cfg.x0, cfg.x1, cfg.v0, cfg.v1};
    Solution sol{Field(box, nt, cfg.nx, cfg.nv, 1, Extension::PeriodicX), {}, 0.0};
    Field cur(cfg.initial_box(), 1, cfg.nx, cfg.nv, 1, Extension::PeriodicX);
    cur.data() = f0.data();
    std::copy(cur.data().begin(), cur.data().end(), sol.f.data().begin());
    const double mass0 = slice_mass(cur);
    const double scale = std::max(std::abs(mass0), 1e-300);
    const std::size_t stride = cur.data().size();
    const double vmax = max_abs_v(cur);
    double time = cfg.t_start;
    for (int k = 1; k < nt; ++k) {
        const double target = cfg.t_start + k * cfg.dt;
        while (time < target - 1e-12 * cfg.dt) {
            if (cfg.max_substeps > 0 && static_cast<long>(sol.diagnostics.size()) >= cfg.max_substeps)
                throw NumericalError("solve: substep budget " + std::to_string(cfg.max_substeps) +
                                     " exhausted at t = " + format_double(time));
            const double limit = stable_dt(cur, nl, cfg);
            const double h = std::min(limit, target - time);
            const double D = max_face_slope(cur, nl);
            cur = step(cur, nl, cfg, time, h);
            time = std::min(time + h, target);
            StepDiagnostics dg{time, h, slice_mass(cur), slice_l2(cur), cur.max_abs(),
                               vmax > 0.0 ? h * vmax / cur.dx() : 0.0,
                               D > 0.0 ? h * 2.0 * D / (cur.dv() * cur.dv()) : 0.0};
            sol.max_mass_drift = std::max(sol.max_mass_drift, std::abs(dg.mass - mass0) / scale);
            sol.diagnostics.push_back(dg);
        }
        time = target;
        std::copy(cur.data().begin(), cur.data().end(), sol.f.data().begin() + static_cast<std::ptrdiff_t>(k * stride));
    }
    return sol;
}

Field residual(const Field& f, const Nonlinearity& nl) {
    if (f.nt() < 2) throw std::invalid_argument("residual: need at least two slices");
    const int nt = f.nt(), nx = f.nx(), nv = f.nv();
    const double dt = f.dt(), dx = f.dx(), dv = f.dv();
    Box b = f.box();
    b.t1 -= dt;
    Field out(b, nt - 1, nx, nv, 1, f.extension());
    const bool periodic = f.extension() == Extension::PeriodicX;
    std::vector<double> face(nv + 1, 0.0);
    for (int it = 0; it + 1 < nt; ++it) {
        const double t = f.t(it);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = f.x(ix);
            for (int iv = 0; iv + 1 < nv; ++iv) {
                const double xi = (f.at(it, ix, iv + 1) - f.at(it, ix, iv)) / dv;
                const double eta = 0.5 * (f.at(it, ix, iv + 1) + f.at(it, ix, iv));
                face[iv + 1] = nl(t, x, b.v0 + (iv + 1) * dv, eta, xi);
            }
            face[0] = face[nv] = 0.0;
            for (int iv = 0; iv < nv; ++iv) {
                const double v = f.v(iv);
                double dxf;
                if (v > 0.0) {
                    const double left = ix > 0 ? f.at(it, ix - 1, iv) : (periodic ? f.at(it, nx - 1, iv) : 0.0);
                    dxf = (f.at(it, ix, iv) - left) / dx;
                } else {
                    const double right = ix + 1 < nx ? f.at(it, ix + 1, iv) : (periodic ? f.at(it, 0, iv) : 0.0);
                    dxf = (right - f.at(it, ix, iv)) / dx;
                }
                out.at(it, ix, iv) = (f.at(it + 1, ix, iv) - f.at(it, ix, iv)) / dt + v * dxf -
                                     (face[iv + 1] - face[iv]) / dv;
            }
        }
    }
    return out;
}

Field leading_slices(const Field& f, int count) {
    if (count < 1 || count > f.nt()) throw std::invalid_argument("leading_slices: bad count");
    Box b = f.box();
    b.t1 = b.t0 + count * f.dt();
    Field out(b, count, f.nx(), f.nv(), f.comps(), f.extension());
    std::copy(f.data().begin(), f.data().begin() + static_cast<std::ptrdiff_t>(out.data().size()), out.data().begin());
    return out;
}

DiscreteSources transport_decomposition(const Field& f, const Nonlinearity& nl) {
    Field S1 = residual(f, nl);
    const Field g = grad_v(leading_slices(f, f.nt() - 1));
    Field S0(g.box(), g.nt(), g.nx(), g.nv(), 1, g.extension());
    for (int it = 0; it < g.nt(); ++it)
        for (int ix = 0; ix < g.nx(); ++ix)
            for (int iv = 0; iv < g.nv(); ++iv)
                S0.at(it, ix, iv) = nl(g.t(it), g.x(ix), g.v(iv), f.at(it, ix, iv), g.at(it, ix, iv));
    return {std::move(S0), std::move(S1)};
}

void write_diagnostics_csv(const std::vector<StepDiagnostics>& diags, std::ostream& out) {
    out << "time,dt,mass,l2,max,cfl_transport,cfl_diffusion\n";
    for (const auto& d : diags)
        out << format_double(d.time) << ',' << format_double(d.dt) << ',' << format_double(d.mass) << ','
            << format_double(d.l2) << ',' << format_double(d.max) << ',' << format_double(d.cfl_transport) << ','
            << format_double(d.cfl_diffusion) << '\n';
}

}  // namespace kinlap
