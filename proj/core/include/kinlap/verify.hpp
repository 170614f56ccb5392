#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kinlap/exponents.hpp"
#include "kinlap/field.hpp"
#include "kinlap/geometry.hpp"
#include "kinlap/mollification.hpp"
#include "kinlap/solver.hpp"

namespace kinlap {

/// Analytic triple (f, ∂_v f, S0) with (∂_t + v∂_x) f = ∂_v S0 (+ S1, unused here).
struct GNPair {
    ScalarFn f;
    ScalarFn dvf;
    ScalarFn S0;
};

/// f_{λ,ν}(t,x,v) = f(νt, λνx, λv) with ∂_v and S0 co-rescaled so the transport identity persists.
GNPair rescale_pair(const GNPair& pair, double lambda, double nu);

struct GridSpec {
    Box box;
    int nt = 32, nx = 32, nv = 32;
};

struct GNRow {
    double lambda, nu;
    double norm_f_q, norm_grad_p, norm_S0_mu, ratio;
};

struct GNReport {
    double q = 0.0, p = 0.0, mu = 0.0, alpha = 0.0;
    double norm_f_q = 0.0, norm_grad_p = 0.0, norm_S0_mu = 0.0;
    double ratio = 0.0;           ///< ‖f‖_q / (‖∇_v f‖_p^α ‖S0‖_μ^{1-α})
    double scaling_spread = 1.0;  ///< max/min ratio over the rescaling grid
    bool degenerate = false;      ///< denominator vanished
    std::vector<GNRow> rows;
};

/// Norms by midpoint quadrature on `grid`, ratio at (1,1) and its spread over λ, ν ∈ `factors`.
/// Throws std::invalid_argument if params are not admissible.
GNReport gn_experiment(const GNPair& pair, const GridSpec& grid, const ProblemParams& params,
                       const std::vector<double>& factors = {0.5, 1.0, 2.0});

/// Same ratio from discrete fields (no rescaling spread).
GNReport gn_experiment(const Field& f, const Field& grad_v_f, const Field& S0, const ProblemParams& params);

struct GainReport {
    double q = 0.0, r = 0.0;
    double norm_f_q = 0.0, norm_grad_p = 0.0, norm_S0_dual = 0.0, norm_S1_r = 0.0;
    double C_meas = 0.0;  ///< ‖f‖_q / (‖∇_v f‖_p + ‖S0‖_{p'} + ‖S1‖_r)
};

/// Global gain with a zeroth-order source; f must be nonnegative (throws std::invalid_argument otherwise).
GainReport subsolution_gain_experiment(const Field& f, const Field& grad_v_f, const Field& S0, const Field& S1,
                                       const Rational& p);

struct LocalGainReport {
    double q = 0.0, r = 0.0;
    double Gamma_t = 0.0, Gamma_v = 0.0;
    double lhs = 0.0;          ///< ‖f‖_{L^q(Q_{θ,R1})}
    double rhs_lp = 0.0;       ///< bracket of the first variant (‖f‖_p in the Γ_t term)
    double rhs_l2 = 0.0;       ///< bracket of the second variant (p ≥ 2 only, else 0)
    double C_meas = 0.0;       ///< lhs / rhs_lp
    double C_meas_l2 = 0.0;    ///< lhs / rhs_l2 when p ≥ 2
};

LocalGainReport localized_gain_experiment(const Field& f, const Field& grad_v_f, const Rational& p, double theta,
                                          double R1, double R2, const PhasePoint& center);

struct EnergyReport {
    double slice_term = 0.0;     ///< ‖f‖²_{L^∞_t L²(Q_{θ,R1})}
    double gradient_term = 0.0;  ///< ‖∇_v f‖^p_{L^p(Q_{θ,R1})}
    double lhs = 0.0;
    double rhs_l2 = 0.0;         ///< ‖f‖²_{L²(Q_{θ,R2})} / (θ (R2-R1)^p)
    double rhs_lp = 0.0;         ///< ‖f‖^p_{L^p(Q_{θ,R2})} / (R2-R1)^p
    double rhs = 0.0;
    double C_meas = 0.0;         ///< lhs / rhs
};

EnergyReport energy_experiment(const Field& f, const Field& grad_v_f, double p, double theta, double R1, double R2,
                               const PhasePoint& center);

struct TransferReport {
    double s = 0.0, q = 0.0, alpha = 0.0;
    BesovEstimate besov;
    double norm_grad_p = 0.0, norm_S0_dual = 0.0;
    double denominator = 0.0;  ///< ‖∇_v f‖_p^α ‖S0‖_{p'}^{1-α}
    double C_meas = 0.0;
};

/// Besov quotient of f against the transfer bound. Throws std::invalid_argument if q is not valid.
TransferReport transfer_experiment(const Field& f, const Field& grad_v_f, const Field& S0, const Rational& p,
                                   const Rational& q, const std::vector<double>& h_set);

/// Samples an analytic pair on a grid: f, ∂_v f and S0 as fields.
struct SampledPair {
    Field f, dvf, S0;
};
SampledPair sample_pair(const GNPair& pair, const GridSpec& grid);

/// Gaussian pair with zero zeroth-order source: H = exp(-t²-x²-v²), f = ∂_v²H, S0 = ∂_t∂_vH + v∂_x∂_vH - ∂_xH.
GNPair gaussian_gn_pair();

/// Smooth test function with its transport decomposition (∂_t + v∂_x) f = ∂_v S0 + S1.
struct ManufacturedCase {
    std::string name;
    ScalarFn f;
    ScalarFn dvf;
    SourceDecomposition src;
    double sup;  ///< ‖f‖_∞
};

/// Gaussian with S1 only, v-only profile, and a pure ∂_v S0 case.
std::vector<ManufacturedCase> manufactured_suite();

/// Smooth fields for comparing operator evaluations.
std::vector<std::pair<std::string, ScalarFn>> regression_fields();

/// Solver run on a grid fitted to Q_{θ,R2}((T,0,0)) with T the last stored time:
/// x ∈ ±1.25θR2^{1+p}, v ∈ ±1.25R2, t ∈ [0, 1.5θR2^p], resolution (64, 32, 40 slices) · 2^level.
struct CylinderRun {
    Solution solution;
    Field grad_v;
    PhasePoint center;
};

/// eps_reg < 0 selects 1e-3 for p < 2 and 0 otherwise.
CylinderRun cylinder_solution(double p, double theta, double R2, int level, double eps_reg = -1.0);

}  // namespace kinlap
