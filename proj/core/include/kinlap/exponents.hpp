#pragma once

#include <optional>
#include <utility>

#include "kinlap/rational.hpp"

namespace kinlap {

struct ProblemParams {
    int d = 1;
    Rational p = 2;
    Rational mu = 2;
};

/// Throws std::invalid_argument unless d >= 1, p > 1, mu > 1.
void validate(const ProblemParams& params);

/// Dual exponent p' = p/(p-1).
Rational conjugate(const Rational& p);

enum class Reason {
    None,
    WindowP,     ///< p outside (2 - 2/(3d+2), 2 + 2/d)
    WindowQ2,    ///< 1/q not in (0, 1/2)
    WindowA,     ///< a = 1/p - 1/mu outside (-1/(d+1), 1/(3d+1)), i.e. beta outside (1,2)
    DaSingular,  ///< d*a == 1
    QRange       ///< transfer exponent outside (max{p,p'}, qbar)
};

const char* reason_name(Reason r);

struct ExponentTable {
    Rational inv_q;  ///< symmetric formula for 1/q
    Rational q;      ///< 1/inv_q, zero when inv_q == 0
    Rational a;
    Rational beta;
    Rational Qdim;
    Rational theta0, theta1, thetav;
    std::optional<Rational> r_source;
    Rational qbar;
    Rational alpha;
    Rational delta_dg;  ///< 1 - p/qbar
    bool admissible = false;
    Reason reason = Reason::None;
};

ExponentTable compute_exponents(const ProblemParams& params);

/// (2 - 2/(3d+2), 2 + 2/d).
std::pair<Rational, Rational> p_admissible_window(int d);

bool p_in_window(int d, const Rational& p);

struct TransferTable {
    Rational q;
    Rational s;
    Rational alpha_s;      ///< (3d+1)/(4d+2) - (d-1)s/(4d+2)
    Rational alpha_s_alt;  ///< (q[p(1+d)-d+1] - (d-1)p) / (q[d(p-2)+2p+2])
    Rational beta;
    Rational Qdim;
    Rational theta0_s, theta1_s, thetav_s;
    bool valid = false;
    Reason reason = Reason::None;
};

/// Requires params.mu == p'. Throws std::invalid_argument otherwise.
TransferTable compute_transfer(const ProblemParams& params, const Rational& q);

struct DeGiorgiExponents {
    Rational delta;   ///< 1 - p/qbar
    Rational s_sing;  ///< 2(p-1)/p + 1 - 2/qbar
    bool valid = false;
    Reason reason = Reason::None;
};

DeGiorgiExponents degiorgi_exponents(const ProblemParams& params);

/// Both sides of the two power balances under x,v -> lambda and t,x -> nu rescaling.
struct ScalingBalance {
    Rational lambda_lhs, lambda_rhs;
    Rational nu_lhs, nu_rhs;
    bool holds() const { return lambda_lhs == lambda_rhs && nu_lhs == nu_rhs; }
};

ScalingBalance scaling_balance(const ProblemParams& params, const ExponentTable& table);

}  // namespace kinlap
