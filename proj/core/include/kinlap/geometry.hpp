#pragma once

#include <cstdint>
#include <vector>

namespace kinlap {

/// Point (t, x, v) of R^{1+2d}.
struct PhasePoint {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> v;

    PhasePoint() = default;
    PhasePoint(double t_, std::vector<double> x_, std::vector<double> v_);
    /// d = 1 shorthand.
    PhasePoint(double t_, double x_, double v_);

    int dim() const { return static_cast<int>(x.size()); }
    bool finite() const;
};

PhasePoint zero_point(int d);

/// (t,x,v)∘(s,y,w) = (t+s, x+y+s v, v+w). Throws std::invalid_argument on dimension mismatch.
PhasePoint group_compose(const PhasePoint& a, const PhasePoint& b);

/// (t,x,v)^{-1} = (-t, -x+t v, -v).
PhasePoint group_inverse(const PhasePoint& a);

/// δ_r(t,x,v) = (r^p t, r^{1+p} x, r v).
PhasePoint dilate(const PhasePoint& z, double r, double p);

/// Volume of the Euclidean unit ball in R^d.
double unit_ball_volume(int d);

/// Backward kinetic p-cylinder Q_{θ,R}(z0).
struct Cylinder {
    PhasePoint center;
    double theta = 1.0;
    double R = 1.0;
    double p = 2.0;

    double volume() const;
    /// Measure of the (x,v) slice D_{θ,R}(t) for any t in the time range.
    double slice_measure() const;
    double t_min() const { return center.t - theta * duration_scale(); }
    double t_max() const { return center.t; }
    double duration_scale() const;
};

/// t ∈ [t0-θR^p, t0), |x-x0-(t-t0)v0| < θR^{1+p}, |v-v0| < R.
bool cylinder_contains(const Cylinder& c, const PhasePoint& z);

/// exp(-1/x) glued smooth step: 0 for s<=0, 1 for s>=1.
double smooth_step(double s);
double smooth_step_derivative(double s);

/// Transport-aligned cutoff χ(t,x,v) = η(t) ζ(x - t v) φ(v) centred at the origin.
class CutoffSet {
public:
    CutoffSet(int d, double theta, double R1, double R2, double p);

    double eta(double t) const;
    double eta_prime(double t) const;
    /// Radial profile, 1 on B_{θR1^{1+p}}, 0 outside B_{θR2^{1+p}}.
    double zeta(const std::vector<double>& y) const;
    std::vector<double> zeta_grad(const std::vector<double>& y) const;
    double phi(const std::vector<double>& v) const;
    std::vector<double> phi_grad(const std::vector<double>& v) const;

    double chi(const PhasePoint& z) const;
    /// (∂_t + v·∇_x)χ in closed form.
    double transport_chi(const PhasePoint& z) const;
    std::vector<double> grad_v_chi(const PhasePoint& z) const;

    int d() const { return d_; }
    double theta() const { return theta_; }
    double R1() const { return R1_; }
    double R2() const { return R2_; }
    double p() const { return p_; }
    double Gamma_t() const { return gamma_t_; }
    double Gamma_v() const { return gamma_v_; }
    /// sup|(∂_t+v·∇_x)χ| / Γ_t and sup|∇_vχ| / Γ_v measured on the sample set.
    double measured_C_t() const { return measured_ct_; }
    double measured_C_v() const { return measured_cv_; }
    double sup_grad_v() const { return sup_grad_v_; }

private:
    friend CutoffSet build_cutoffs(int d, double theta, double R1, double R2, double p, std::uint64_t seed,
                                   int samples);
    int d_;
    double theta_, R1_, R2_, p_;
    double gamma_t_, gamma_v_;
    double measured_ct_ = 0.0, measured_cv_ = 0.0, sup_grad_v_ = 0.0;
};

/// Throws std::invalid_argument unless 0 < R1 < R2 and θ > 0.
CutoffSet build_cutoffs(int d, double theta, double R1, double R2, double p, std::uint64_t seed = 7,
                        int samples = 20000);

}  // namespace kinlap
