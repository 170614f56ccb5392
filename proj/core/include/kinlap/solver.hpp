#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinlap/field.hpp"

namespace kinlap {

/// Raised when the explicit scheme blows up or produces non-finite values.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flux A(t,x,v,η,ξ) for d = 1 with p-growth constants.
struct Nonlinearity {
    using Flux = std::function<double(double t, double x, double v, double eta, double xi)>;

    double p = 2.0;
    double lambda = 1.0;
    double Lambda = 1.0;
    double eps_reg = 0.0;
    Flux flux;
    /// Bound for ∂A/∂ξ at ξ, used by the CFL condition. Defaults to a centred difference of `flux`.
    std::function<double(double xi)> slope;

    double operator()(double t, double x, double v, double eta, double xi) const { return flux(t, x, v, eta, xi); }
    double diffusivity(double xi) const;
};

/// |ξ|^{p-2}ξ, regularised as (ξ²+ε²)^{(p-2)/2}ξ when eps_reg > 0.
Nonlinearity p_laplace(double p, double eps_reg);
/// Default regularisation: 1e-6 for p < 2, none otherwise.
Nonlinearity p_laplace(double p);
/// Zero flux (pure transport).
Nonlinearity no_diffusion();

struct SolverConfig {
    double t_start = 0.0;
    double t_end = 1.0;
    double dt = 0.1;  ///< spacing of stored slices; CFL substeps run in between
    double x0 = -1.0, x1 = 1.0;
    double v0 = -1.0, v1 = 1.0;
    int nx = 32;
    int nv = 32;
    double cfl = 0.4;
    /// Substep budget for the whole run; 0 means unlimited. Exceeding it raises NumericalError.
    long max_substeps = 0;
    /// Optional forcing S(t,x,v) added to the right-hand side.
    ScalarFn source;

    int slices() const;
    /// Spatial box of the initial data; time extent is [t_start - dt/2, t_start + dt/2].
    Box initial_box() const;
    void validate() const;
};

struct StepDiagnostics {
    double time;
    double dt;
    double mass;
    double l2;
    double max;
    double cfl_transport;  ///< dt / (Δx / max|v|)
    double cfl_diffusion;  ///< dt / (Δv² / (2 max ∂A/∂ξ))
};

/// Largest stable substep for the current slice.
double stable_dt(const Field& slice, const Nonlinearity& nl, const SolverConfig& cfg);

/// One forward-Euler substep of length dt_sub (transport then diffusion) on a single time slice
/// (nt = 1, PeriodicX). Throws NumericalError if dt_sub exceeds the stable step or on NaN.
Field step(const Field& slice, const Nonlinearity& nl, const SolverConfig& cfg, double time, double dt_sub);

struct Solution {
    Field f;  ///< slices at t_start + k dt, k = 0..slices()-1
    std::vector<StepDiagnostics> diagnostics;
    double max_mass_drift = 0.0;  ///< max |mass - mass0| / max(|mass0|, tiny)
};

/// f0 is a single slice on cfg's spatial grid (nt = 1).
Solution solve(const Field& f0, const Nonlinearity& nl, const SolverConfig& cfg);

/// Initial slice sampled from a function at t_start.
Field initial_slice(const SolverConfig& cfg, const std::function<double(double x, double v)>& f0);

/// Discrete residual (f^{k+1}-f^k)/Δt + v D_x^{up} f^k - D_v A(D_v f^k), one slice shorter than f.
Field residual(const Field& f, const Nonlinearity& nl);

struct DiscreteSources {
    Field S0;  ///< A(t,x,v,f,∇_v f) at cell centres
    Field S1;  ///< residual
};

DiscreteSources transport_decomposition(const Field& f, const Nonlinearity& nl);

/// Field restricted to the first `count` time slices.
Field leading_slices(const Field& f, int count);

void write_diagnostics_csv(const std::vector<StepDiagnostics>& diags, std::ostream& out);

}  // namespace kinlap
