#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "kinlap/field.hpp"
#include "kinlap/geometry.hpp"
#include "kinlap/trajectories.hpp"

namespace kinlap {

/// exp(-1/(1-u²)) on (-1,1), zero elsewhere.
double bump(double u);
double bump_prime(double u);
/// ∫ bump over (-1,1), computed once by tanh-sinh quadrature.
double bump_integral();

/// ψ(m0,m1,m2) = c · bump(2m0+3) · bump(m1) · bump(m2), d = 1, unit mass, supp ⊂ (-2,-1)×(-1,1)×(-1,1).
struct Mollifier {
    double normalization;

    Mollifier();
    double operator()(double m0, double m1, double m2) const;
    /// (∂ψ/∂m1, ∂ψ/∂m2).
    std::array<double, 2> grad(double m0, double m1, double m2) const;
};

const Mollifier& default_mollifier();

enum class KernelKind { K, G0, G1, Gv };

const char* kernel_name(KernelKind k);

/// Axis-aligned box containing the support of a kernel at scale r.
struct SupportBox {
    double s_lo, s_hi, y_bound, w_bound;
};

/// Kinetic kernels K_r, G⁰_r, G¹_r, Gᵛ_r for d = 1 and a fixed β.
class KernelFamily {
public:
    explicit KernelFamily(double beta, double tau = 1.0);

    double beta() const { return beta_; }
    double tau() const { return tau_; }
    /// 𝖰 = (2β - 1)d + 1.
    double Qdim() const { return 2.0 * beta_; }
    /// Support constants: |y| ≤ Cy r^β, |w| ≤ Cw r^{β-1}.
    double Cy() const { return cy_; }
    double Cw() const { return cw_; }

    /// Per-scale quantities shared by every kernel evaluation at that r.
    struct Scale {
        double r, g1, g2, dg1, dg2, ddg1, ddg2, det, r_minus_Q;
    };

    Scale scale(double r) const;
    SupportBox support(double r) const;
    double eval(KernelKind kind, const Scale& sc, double s, double y, double w) const;
    double eval(KernelKind kind, double r, double s, double y, double w) const { return eval(kind, scale(r), s, y, w); }
    double K(double r, double s, double y, double w) const { return eval(KernelKind::K, r, s, y, w); }

private:
    double beta_, tau_, cy_, cw_;
};

using KernelFn = std::function<double(double s, double y, double w)>;

/// Quadrature resolution per axis in u-space (kernel space).
struct UGrid {
    int ns = 64, ny = 64, nw = 64;
};

/// ∫ f(z∘u) J(u) du by tensor midpoint rule over `box`.
double apply_TJ_kernel(const KernelFn& J, const SupportBox& box, const ScalarFn& f, const PhasePoint& z,
                       const UGrid& grid = {});

enum class DomainPolicy { Strict, ZeroExtend };

struct OperatorValue {
    double value = 0.0;
    bool zero_extended = false;  ///< the support reached outside the field's box
};

/// Field version; Strict throws std::domain_error naming the missing region.
OperatorValue apply_TJ_kernel(const KernelFn& J, const SupportBox& box, const Field& f, const PhasePoint& z,
                              DomainPolicy policy, const UGrid& grid = {});

/// ∫ f(γ^m(τ; z)) ψ(m) dm by tensor midpoint rule with n points per m-axis.
double apply_TK_mspace(const KernelFamily& family, const ScalarFn& f, const PhasePoint& z, int n = 16);
OperatorValue apply_TK_mspace(const KernelFamily& family, const Field& f, const PhasePoint& z, DomainPolicy policy,
                              int n = 16);

/// T_{J_r} g(z) with J one of the kinetic kernels, integrated after pulling u back to m-space
/// (du = r^𝖰 |m0|^{-1} dm). The kernel formula itself is evaluated at u(m).
double apply_kernel_mspace(const KernelFamily& family, KernelKind kind, double r, const ScalarFn& g,
                           const PhasePoint& z, int n = 16);

struct SourceDecomposition {
    ScalarFn S0;
    ScalarFn S1;
};

struct RepresentationQuadrature {
    int m_res = 16;     ///< m-points per axis
    int r_nodes = 64;   ///< graded r-mesh size
    double kappa = 3.0; ///< grading exponent, r = τ ξ^κ
};

struct RepresentationSample {
    PhasePoint z;
    double lhs;  ///< f - T_{K_τ} f
    double rhs;  ///< ∫_0^τ (T_{G⁰}S0 + T_{G¹}S1 + T_{Gᵛ}∂_v f) dr
};

struct RepresentationReport {
    std::vector<RepresentationSample> samples;
    double max_residual = 0.0;
};

/// Residual of f - T_{K_τ} f = ∫_0^τ (...) dr at each sample point. `dvf` is ∂_v f.
RepresentationReport representation_residual(const KernelFamily& family, const ScalarFn& f, const ScalarFn& dvf,
                                             const SourceDecomposition& src, const std::vector<PhasePoint>& z_samples,
                                             const RepresentationQuadrature& quad = {});

/// ‖J_r‖_θ over the support box at scale r; θ = infinity gives the sup.
double kernel_lp_norm(const KernelFamily& family, KernelKind kind, double r, double theta, const UGrid& grid = {});

/// sup_λ λ |{|g| > λ}|^{1/θ} for values on cells of volume `cell_volume`, computed exactly from the sorted values.
double weak_lp_norm(std::vector<double> values, double cell_volume, double theta);
double weak_lp_norm(const Field& g, double theta);

/// Samples of ∫_0^τ J_r dr on a uniform grid over the union of supports, r integrated on `r_nodes` midpoints.
struct IntegratedKernel {
    std::vector<double> values;
    double cell_volume = 0.0;
};

IntegratedKernel integrated_kernel(const KernelFamily& family, KernelKind kind, double tau, int n, int r_nodes);

/// ‖Δ_y^{-h} J_r‖_θ with Δ_y^{-h}J(s,y,w) = J(s,y-h,w) - J(s,y,w).
double kernel_difference_norm(const KernelFamily& family, KernelKind kind, double r, double h, double theta,
                              int n = 48);

struct YoungResult {
    double lhs = 0.0;  ///< ‖T_J f‖_q
    double rhs = 0.0;  ///< ‖J‖_θ ‖f‖_{p_in}
    double q = 0.0;
};

/// f is sampled with zero extension; T_J f is evaluated on `f`'s grid enlarged to cover its support.
/// Throws std::invalid_argument unless 1 ≤ θ, p_in and 1/θ + 1/p_in ≥ 1.
YoungResult young_check(const KernelFn& J, const SupportBox& box, double theta, const Field& f, double p_in,
                        const UGrid& kernel_grid, const UGrid& eval_grid);

/// max over samples of |Δ_x^h[T_J g](z) - T_{Δ_y^{-h}J} g(z)|.
double difference_commutation_check(const KernelFn& J, const SupportBox& box, const ScalarFn& g, double h,
                                    const std::vector<PhasePoint>& z_samples, const UGrid& grid = {});

}  // namespace kinlap
