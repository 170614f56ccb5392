#include "kinlap/exponents.hpp"

#include <algorithm>
#include <stdexcept>

namespace kinlap {

void validate(const ProblemParams& params) {
    if (params.d < 1) throw std::invalid_argument("d must be >= 1");
    if (params.p <= 1) throw std::invalid_argument("p must be > 1");
    if (params.mu <= 1) throw std::invalid_argument("mu must be > 1");
}

Rational conjugate(const Rational& p) {
    return p / (p - 1);
}

const char* reason_name(Reason r) {
    switch (r) {
    case Reason::None: return "NONE";
    case Reason::WindowP: return "WINDOW_P";
    case Reason::WindowQ2: return "WINDOW_Q2";
    case Reason::WindowA: return "WINDOW_A";
    case Reason::DaSingular: return "DA_SINGULAR";
    case Reason::QRange: return "Q_RANGE";
    }
    return "UNKNOWN";
}

namespace {

Rational safe_div(const Rational& num, const Rational& den) {
    return den == 0 ? Rational(0) : num / den;
}

}  // namespace

ExponentTable compute_exponents(const ProblemParams& params) {
    validate(params);
    const Rational d = params.d;
    const Rational& p = params.p;
    const Rational& mu = params.mu;

    ExponentTable t;
    t.a = 1 / p - 1 / mu;
    t.inv_q = ((3 * d + 1) / p + (d + 1) / mu - 1) / (4 * d + 2);
    t.q = safe_div(Rational(1), t.inv_q);
    t.qbar = p * (4 * d + 2) / (d * (p + 2));
    t.alpha = (3 * d + 1) / (4 * d + 2);
    t.delta_dg = 1 - p / t.qbar;
    const Rational r_den = p * (3 * d + 2) - 2 * d;
    if (r_den != 0) t.r_source = p * (4 * d + 2) / r_den;

    const Rational one_minus_da = 1 - d * t.a;
    if (one_minus_da == 0) {
        t.reason = Reason::DaSingular;
        return t;
    }
    t.beta = (3 + (1 - d) * t.a) / (2 * one_minus_da);
    t.Qdim = (2 * d + 1) / one_minus_da;
    t.theta0 = safe_div(t.Qdim, t.Qdim + t.beta - 2);
    t.theta1 = safe_div(t.Qdim, t.Qdim - 1);
    t.thetav = safe_div(t.Qdim, t.Qdim + 1 - t.beta);

    const bool a_window = t.a > Rational(-1) / (d + 1) && t.a < 1 / (3 * d + 1);
    if (!a_window) {
        t.reason = Reason::WindowA;
        return t;
    }
    if (!(t.inv_q > 0 && t.inv_q < Rational(1, 2))) {
        t.reason = Reason::WindowQ2;
        return t;
    }
    t.admissible = true;
    return t;
}

std::pair<Rational, Rational> p_admissible_window(int d) {
    const Rational dd = d;
    return {2 - 2 / (3 * dd + 2), 2 + 2 / dd};
}

bool p_in_window(int d, const Rational& p) {
    const auto [lo, hi] = p_admissible_window(d);
    return p > lo && p < hi;
}

TransferTable compute_transfer(const ProblemParams& params, const Rational& q) {
    validate(params);
    if (params.mu != conjugate(params.p))
        throw std::invalid_argument("compute_transfer requires mu = p/(p-1)");
    if (q <= 0) throw std::invalid_argument("q must be positive");
    const Rational d = params.d;
    const Rational& p = params.p;

    TransferTable t;
    t.q = q;
    const Rational den = q * (d * (p - 2) + 2 * p + 2);
    t.s = (p * (4 * d + 2) - q * d * (p + 2)) / den;
    t.alpha_s = (3 * d + 1) / (4 * d + 2) - (d - 1) / (4 * d + 2) * t.s;
    t.alpha_s_alt = (q * (p * (1 + d) - d + 1) - (d - 1) * p) / den;
    t.beta = (d * (p - 2) + 2 * p + 2) / (2 * (d * (p - 2) + p));
    t.Qdim = (2 * t.beta - 1) * d + 1;
    const Rational bs = t.beta * t.s;
    t.theta0_s = safe_div(t.Qdim, t.Qdim + t.beta - 2 + bs);
    t.theta1_s = safe_div(t.Qdim, t.Qdim - 1 + bs);
    t.thetav_s = safe_div(t.Qdim, t.Qdim + 1 - t.beta + bs);

    if (!p_in_window(params.d, p)) {
        t.reason = Reason::WindowP;
        return t;
    }
    const Rational lower = std::max(p, params.mu);
    const Rational qbar = p * (4 * d + 2) / (d * (p + 2));
    if (!(q > lower && q < qbar)) {
        t.reason = Reason::QRange;
        return t;
    }
    t.valid = true;
    return t;
}

DeGiorgiExponents degiorgi_exponents(const ProblemParams& params) {
    validate(params);
    const Rational d = params.d;
    const Rational& p = params.p;
    const Rational qbar = p * (4 * d + 2) / (d * (p + 2));
    DeGiorgiExponents out;
    out.delta = 1 - p / qbar;
    out.s_sing = 2 * (p - 1) / p + 1 - 2 / qbar;
    if (p_in_window(params.d, p)) {
        out.valid = true;
    } else {
        out.reason = Reason::WindowP;
    }
    return out;
}

ScalingBalance scaling_balance(const ProblemParams& params, const ExponentTable& table) {
    const Rational d = params.d;
    const Rational& p = params.p;
    const Rational& mu = params.mu;
    const Rational& a = table.alpha;
    ScalingBalance b;
    b.lambda_lhs = -2 * d * table.inv_q;
    b.lambda_rhs = (1 - 2 * d / p) * a + (-1 - 2 * d / mu) * (1 - a);
    b.nu_lhs = -(d + 1) * table.inv_q;
    b.nu_rhs = -(d + 1) * a / p + (1 - (d + 1) / mu) * (1 - a);
    return b;
}

}  // namespace kinlap
