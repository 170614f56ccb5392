#pragma once

#include <string>
#include <vector>

#include "kinlap/field.hpp"
#include "kinlap/rational.hpp"

namespace kinlap {

enum class DGMode { PGe2, Singular };

const char* mode_name(DGMode m);
/// Parses "p_ge_2" or "singular".
DGMode parse_mode(const std::string& s);

/// One level of the cascade. The checked chains are
///   p_ge_2:   |E_{n+1}| ≤ 2^{p(n+1)} ∫_{Q_{R_{n+1}}} w_n^p ≤ 2^{p(n+1)} M_n
///   singular: |{w_n ≥ δ_n} ∩ Q_{R_{n+1}}| ≤ δ_n^{-2} ∫_{Q_{R_{n+1}}} w_n² ≤ δ_n^{-2} Y_n
/// and, for p_ge_2 and n ≥ 1,
///   ∫_{Q_{R_{n-1}}} w_n² ≤ (∫ w_n^p)^{2/p} |{w_n>0}|^{1-2/p} ≤ 2^{n(p-2)} M_{n-1}.
struct DeGiorgiLevel {
    int n = 0;
    double R = 0.0, k = 0.0;
    double energy = 0.0;  ///< M_n or Y_n

    double level_measure = 0.0;
    double level_mid = 0.0;
    double level_bound = 0.0;
    bool level_ok = true;

    bool l2_checked = false;
    double l2_lhs = 0.0, l2_holder = 0.0, l2_bound = 0.0;
    double support_measure = 0.0, support_bound = 0.0;
    bool l2_ok = true;
};

struct DeGiorgiState {
    DGMode mode = DGMode::PGe2;
    double p = 2.0;
    double delta = 0.0;
    int N = 12;
    std::vector<DeGiorgiLevel> levels;
    double sup_inner = 0.0;        ///< max of u over cells in Q_{1,1}
    bool bounded = false;          ///< sup_inner ≤ 1
    bool decreasing = false;       ///< energies nonincreasing
    bool vanishing = false;        ///< last energy ≤ 1e-12 · first, or zero
    double recursion_slope = 0.0;  ///< log E_{n+1} vs log E_{n-1} over pairs with E_{n-1} ≤ 1
    int slope_points = 0;
    bool level_set_exact = true;
    bool l2_exact = true;

    std::vector<double> energies() const;
};

/// Relative slack for the cell-counting chains (summation order only).
inline constexpr double kCountingSlack = 1e-12;

/// Cascade on u over Q_{1,R_n} centred at the origin, n = 0..N.
/// Throws std::invalid_argument if u is negative, p does not fit the mode, or N < 1;
/// std::domain_error if Q_{1,2} leaves the box.
DeGiorgiState degiorgi_run(const Field& u, const Rational& p, DGMode mode, int N = 12);

struct InterleaveReport {
    double gamma = 0.0;
    double C_raw = 0.0;   ///< max E_{m+2} / (2^{γm} E_m^{1+δ})
    double C_even = 0.0;  ///< max B_{m+1} / (2^{2γm} B_m^{1+δ})
    double C_odd = 0.0;   ///< max C_{m+1} / (2^{γ(2m+1)} C_m^{1+δ})
    int pairs = 0;
    bool holds = true;    ///< C_even, C_odd ≤ C_raw
};

/// Measured constants of the two-step recursion and its even/odd splits over positive entries.
InterleaveReport interleave_check(const std::vector<double>& energies, double delta, double gamma);

struct FastLemmaResult {
    double delta0 = 0.0;        ///< C1^{-1/δ} b^{-1/δ²}
    std::vector<double> trace;  ///< Y_0..Y_max_iter
    bool converged = false;
    bool below_threshold = false;  ///< some Y_m < threshold
    bool geometric = false;        ///< Y_m ≤ Y_0 b^{-m/δ} for all m
    bool monotone_from_1 = false;  ///< strictly decreasing from m = 1 while positive

    /// First index with Y_m < thr, or -1.
    int first_below(double thr) const;
};

/// Iterates Y_{m+1} = C1 b^m Y_m^{1+δ} in log space. Converged when the trace drops below
/// `threshold` or follows the geometric envelope Y_0 b^{-m/δ}.
/// Throws std::invalid_argument unless C1 > 0, b > 1, δ > 0, Y0 ≥ 0.
FastLemmaResult fast_convergence_lemma(double C1, double b, double delta, double Y0, int max_iter = 200,
                                       double threshold = 1e-300);

struct EndToEndRow {
    double K = 0.0, Theta = 0.0;
    bool feasible = false;     ///< Q_{1,2} inside the rescaled box
    double mean_energy = 0.0;  ///< average of u^p (p_ge_2) or u² (singular) over Q_{1,2}
    double E0 = 0.0;
    double sup_inner = 0.0;
    bool bounded = false;
    bool vanishing = false;
    bool exact = false;        ///< counting chains held
};

struct EndToEndReport {
    DGMode mode = DGMode::PGe2;
    double p = 2.0;
    std::vector<EndToEndRow> rows;
    double epsilon0 = 0.0;  ///< largest mean energy below which every feasible row was bounded
    bool any_bounded = false;
};

/// Resolution of the grid fitted to the bounding box of Q_{1,2}.
struct FitGrid {
    int nt = 48, nx = 64, nv = 32;
};

/// normalize(f, z0, R) then, per K, intrinsic_rescale(K) with Θ = K^{2-p}, multilinear resampling onto
/// `fit` over the bounding box of Q_{1,2}, and degiorgi_run.
EndToEndReport degiorgi_end_to_end(const Field& f, const Rational& p, DGMode mode, const PhasePoint& z0, double R,
                                   const std::vector<double>& K_values, int N = 12, const FitGrid& fit = {});

}  // namespace kinlap
