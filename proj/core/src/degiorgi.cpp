#include "kinlap/degiorgi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kinlap/exponents.hpp"
#include "kinlap/trajectories.hpp"

namespace kinlap {

const char* mode_name(DGMode m) {
    return m == DGMode::PGe2 ? "p_ge_2" : "singular";
}

DGMode parse_mode(const std::string& s) {
    if (s == "p_ge_2") return DGMode::PGe2;
    if (s == "singular") return DGMode::Singular;
    throw std::invalid_argument("unknown De Giorgi mode: " + s);
}

std::vector<double> DeGiorgiState::energies() const {
    std::vector<double> e;
    e.reserve(levels.size());
    for (const auto& l : levels) e.push_back(l.energy);
    return e;
}

namespace {

bool leq(double a, double b) {
    return a <= b * (1.0 + kCountingSlack) + std::numeric_limits<double>::min();
}

double powp(double w, double p) {
    return p == 2.0 ? w * w : std::pow(w, p);
}

}  // namespace

DeGiorgiState degiorgi_run(const Field& u, const Rational& p_rat, DGMode mode, int N) {
    if (N < 1) throw std::invalid_argument("degiorgi_run: N must be at least 1");
    if (u.comps() != 1) throw std::invalid_argument("degiorgi_run: scalar field required");
    const auto ex = degiorgi_exponents({1, p_rat, conjugate(p_rat)});
    if (!ex.valid) throw std::invalid_argument("degiorgi_run: p outside the admissible window");
    if (mode == DGMode::PGe2 && p_rat < 2) throw std::invalid_argument("degiorgi_run: p_ge_2 mode needs p >= 2");
    if (mode == DGMode::Singular && p_rat >= 2) throw std::invalid_argument("degiorgi_run: singular mode needs p < 2");
    for (double x : u.data())
        if (x < 0.0) throw std::invalid_argument("degiorgi_run: u must be nonnegative");
    const double p = to_double(p_rat);
    const PhasePoint o = zero_point(1);
    if (!cylinder_inside_box(u, Cylinder{o, 1.0, 2.0, p}))
        throw std::domain_error("degiorgi_run: Q_{1,2} is not inside the field box");

    DeGiorgiState st;
    st.mode = mode;
    st.p = p;
    st.N = N;
    st.delta = to_double(mode == DGMode::PGe2 ? ex.delta : ex.s_sing - 1);

    std::vector<double> R(N + 2), k(N + 2);
    for (int n = 0; n <= N + 1; ++n) {
        R[n] = 1.0 + std::ldexp(1.0, -n);
        k[n] = 1.0 - std::ldexp(1.0, -n);
    }
    // depth of each cell: largest n with the cell centre in Q_{1,R_n}, -1 outside Q_{1,2}
    std::vector<std::pair<double, int>> cells;
    const Cylinder inner{o, 1.0, 1.0, p};
    st.sup_inner = 0.0;
    for (int it = 0; it < u.nt(); ++it)
        for (int ix = 0; ix < u.nx(); ++ix)
            for (int iv = 0; iv < u.nv(); ++iv) {
                const PhasePoint z = cell_point(u, it, ix, iv);
                int depth = -1;
                while (depth < N + 1 && cylinder_contains(Cylinder{o, 1.0, R[depth + 1], p}, z)) ++depth;
                if (depth < 0) continue;
                const double val = u.at(it, ix, iv);
                cells.emplace_back(val, depth);
                if (cylinder_contains(inner, z)) st.sup_inner = std::max(st.sup_inner, val);
            }
    st.bounded = st.sup_inner <= 1.0;
    const double vol = u.cell_volume();
    const double e = mode == DGMode::PGe2 ? p : 2.0;

    auto integral = [&](int n, int min_depth, double expo) {
        double s = 0.0;
        for (const auto& [val, depth] : cells)
            if (depth >= min_depth && val > k[n]) s += powp(val - k[n], expo);
        return s * vol;
    };
    auto count = [&](int min_depth, auto pred) {
        long c = 0;
        for (const auto& [val, depth] : cells)
            if (depth >= min_depth && pred(val)) ++c;
        return static_cast<double>(c) * vol;
    };

    for (int n = 0; n <= N; ++n) {
        DeGiorgiLevel lv;
        lv.n = n;
        lv.R = R[n];
        lv.k = k[n];
        lv.energy = integral(n, n, e);
        st.levels.push_back(lv);
    }
    for (int n = 0; n <= N; ++n) {
        auto& lv = st.levels[n];
        if (mode == DGMode::PGe2) {
            const double kn1 = k[n + 1];
            const double scale = std::pow(2.0, p * (n + 1));
            lv.level_measure = count(n + 1, [&](double val) { return val > kn1; });
            lv.level_mid = scale * integral(n, n + 1, p);
            lv.level_bound = scale * lv.energy;
        } else {
            const double dn = std::ldexp(1.0, -(n + 1));
            const double kn = k[n];
            lv.level_measure = count(n + 1, [&](double val) { return val - kn >= dn; });
            lv.level_mid = integral(n, n + 1, 2.0) / (dn * dn);
            lv.level_bound = lv.energy / (dn * dn);
        }
        lv.level_ok = leq(lv.level_measure, lv.level_mid) && leq(lv.level_mid, lv.level_bound);
        if (mode == DGMode::PGe2 && n >= 1) {
            lv.l2_checked = true;
            const double kn = k[n];
            lv.l2_lhs = integral(n, n - 1, 2.0);
            lv.support_measure = count(n - 1, [&](double val) { return val > kn; });
            lv.support_bound = std::pow(2.0, n * p) * st.levels[n - 1].energy;
            lv.l2_holder = std::pow(integral(n, n - 1, p), 2.0 / p) * std::pow(lv.support_measure, 1.0 - 2.0 / p);
            lv.l2_bound = std::pow(2.0, n * (p - 2.0)) * st.levels[n - 1].energy;
            lv.l2_ok = leq(lv.support_measure, lv.support_bound) && leq(lv.l2_lhs, lv.l2_holder) &&
                       leq(lv.l2_holder, lv.l2_bound);
        }
        st.level_set_exact = st.level_set_exact && lv.level_ok;
        st.l2_exact = st.l2_exact && lv.l2_ok;
    }

    const auto E = st.energies();
    st.decreasing = true;
    for (std::size_t i = 1; i < E.size(); ++i)
        if (E[i] > E[i - 1]) st.decreasing = false;
    st.vanishing = E.back() == 0.0 || E.back() <= 1e-12 * E.front();
    std::vector<double> lx, ly;
    for (int n = 1; n + 1 <= N; ++n)
        if (E[n - 1] > 0.0 && E[n + 1] > 0.0 && E[n - 1] <= 1.0) {
            lx.push_back(std::log(E[n - 1]));
            ly.push_back(std::log(E[n + 1]));
        }
    st.slope_points = static_cast<int>(lx.size());
    if (lx.size() >= 2) st.recursion_slope = regression_slope(lx, ly);
    return st;
}

InterleaveReport interleave_check(const std::vector<double>& E, double delta, double gamma) {
    InterleaveReport r;
    r.gamma = gamma;
    auto ratio = [&](double next, double cur, double rate) { return next / (rate * std::pow(cur, 1.0 + delta)); };
    for (std::size_t m = 0; m + 2 < E.size(); ++m) {
        if (!(E[m] > 0.0)) continue;
        ++r.pairs;
        r.C_raw = std::max(r.C_raw, ratio(E[m + 2], E[m], std::pow(2.0, gamma * m)));
        const std::size_t j = m / 2;
        if (m % 2 == 0)
            r.C_even = std::max(r.C_even, ratio(E[m + 2], E[m], std::pow(2.0, 2.0 * gamma * j)));
        else
            r.C_odd = std::max(r.C_odd, ratio(E[m + 2], E[m], std::pow(2.0, gamma * (2.0 * j + 1.0))));
    }
    r.holds = leq(r.C_even, r.C_raw) && leq(r.C_odd, r.C_raw);
    return r;
}

int FastLemmaResult::first_below(double thr) const {
    for (std::size_t m = 0; m < trace.size(); ++m)
        if (trace[m] < thr) return static_cast<int>(m);
    return -1;
}

FastLemmaResult fast_convergence_lemma(double C1, double b, double delta, double Y0, int max_iter, double threshold) {
    if (!(C1 > 0.0) || !(b > 1.0) || !(delta > 0.0) || !(Y0 >= 0.0) || max_iter < 1 || !std::isfinite(C1) ||
        !std::isfinite(b) || !std::isfinite(delta) || !std::isfinite(Y0))
        throw std::invalid_argument("fast_convergence_lemma: need C1 > 0, b > 1, delta > 0, Y0 >= 0");
    FastLemmaResult r;
    const double lc = std::log(C1), lb = std::log(b);
    r.delta0 = std::exp(-lc / delta - lb / (delta * delta));
    // Y_m = Y0 b^{-m/delta} Z_m with log Z_{m+1} = lk + (1+delta) log Z_m
    const double L0 = Y0 > 0.0 ? std::log(Y0) : -std::numeric_limits<double>::infinity();
    double lk = delta * (L0 - std::log(r.delta0));
    if (std::abs(lk) <= 1e-12 * std::max(1.0, std::abs(L0))) lk = 0.0;
    double lz = 0.0;
    r.trace.push_back(Y0);
    r.geometric = true;
    for (int m = 0; m < max_iter; ++m) {
        lz = lk + (1.0 + delta) * lz;
        if (lz > 1e-9) r.geometric = false;
        r.trace.push_back(std::exp(L0 - (m + 1) * lb / delta + lz));
    }
    r.below_threshold = r.first_below(threshold) >= 0;
    r.monotone_from_1 = true;
    for (std::size_t m = 2; m < r.trace.size(); ++m)
        if (r.trace[m - 1] > 0.0 && !(r.trace[m] < r.trace[m - 1])) r.monotone_from_1 = false;
    r.converged = r.below_threshold || r.geometric;
    return r;
}

EndToEndReport degiorgi_end_to_end(const Field& f, const Rational& p_rat, DGMode mode, const PhasePoint& z0, double R,
                                   const std::vector<double>& K_values, int N, const FitGrid& fit) {
    const double p = to_double(p_rat);
    const Field g = normalize(f, z0, R, p);
    EndToEndReport rep;
    rep.mode = mode;
    rep.p = p;
    const Cylinder q2{zero_point(1), 1.0, 2.0, p};
    for (double K : K_values) {
        EndToEndRow row;
        row.K = K;
        row.Theta = std::pow(K, 2.0 - p);
        const Field scaled = intrinsic_rescale(g, K, p);
        row.feasible = cylinder_inside_box(scaled, q2);
        if (row.feasible) {
            const double tp = std::pow(2.0, p);
            const Box fb{-tp, 0.0, -2.0 * tp, 2.0 * tp, -2.0, 2.0};
            Field u = Field::from_function(fb, fit.nt, fit.nx, fit.nv, field_sampler(scaled));
            for (double& x : u.data()) x = std::max(x, 0.0);
            const double e = mode == DGMode::PGe2 ? p : 2.0;
            row.mean_energy = lp_power(u, e, q2) / region_measure(u, q2);
            const auto st = degiorgi_run(u, p_rat, mode, N);
            row.E0 = st.levels.front().energy;
            row.sup_inner = st.sup_inner;
            row.bounded = st.bounded;
            row.vanishing = st.vanishing;
            row.exact = st.level_set_exact && st.l2_exact;
            rep.any_bounded = rep.any_bounded || row.bounded;
        }
        rep.rows.push_back(row);
    }
    std::vector<const EndToEndRow*> feas;
    for (const auto& r : rep.rows)
        if (r.feasible) feas.push_back(&r);
    std::sort(feas.begin(), feas.end(), [](auto a, auto b) { return a->mean_energy < b->mean_energy; });
    for (const auto* r : feas) {
        if (!r->bounded) break;
        rep.epsilon0 = r->mean_energy;
    }
    return rep;
}

}  // namespace kinlap
