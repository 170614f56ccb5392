#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kinlap/geometry.hpp"

namespace kinlap {

/// Axis-aligned (t, x, v) box.
struct Box {
    double t0 = 0.0, t1 = 1.0;
    double x0 = 0.0, x1 = 1.0;
    double v0 = 0.0, v1 = 1.0;
};

enum class Extension { Zero, PeriodicX };

using ScalarFn = std::function<double(double t, double x, double v)>;

/// Cell-centred field on a uniform (t, x, v) grid, d = 1, row-major [it][ix][iv][comp].
class Field {
public:
    Field() = default;
    Field(const Box& box, int nt, int nx, int nv, int comps = 1, Extension ext = Extension::Zero);

    static Field from_function(const Box& box, int nt, int nx, int nv, const ScalarFn& fn,
                               Extension ext = Extension::Zero);

    int nt() const { return nt_; }
    int nx() const { return nx_; }
    int nv() const { return nv_; }
    int comps() const { return comps_; }
    const Box& box() const { return box_; }
    Extension extension() const { return ext_; }
    void set_extension(Extension e) { ext_ = e; }

    double dt() const { return (box_.t1 - box_.t0) / nt_; }
    double dx() const { return (box_.x1 - box_.x0) / nx_; }
    double dv() const { return (box_.v1 - box_.v0) / nv_; }
    double cell_volume() const { return dt() * dx() * dv(); }

    double t(int it) const { return box_.t0 + (it + 0.5) * dt(); }
    double x(int ix) const { return box_.x0 + (ix + 0.5) * dx(); }
    double v(int iv) const { return box_.v0 + (iv + 0.5) * dv(); }

    std::size_t index(int it, int ix, int iv, int c = 0) const {
        return ((static_cast<std::size_t>(it) * nx_ + ix) * nv_ + iv) * comps_ + c;
    }
    double& at(int it, int ix, int iv, int c = 0) { return data_[index(it, ix, iv, c)]; }
    double at(int it, int ix, int iv, int c = 0) const { return data_[index(it, ix, iv, c)]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    /// True if (t,x,v) lies in the closed box (x ignored for PeriodicX).
    bool inside(double t, double x, double v) const;
    /// Multilinear interpolation; clamped within the box, zero outside it, x wrapped for PeriodicX.
    double sample(double t, double x, double v, int c = 0) const;

    double max_abs() const;
    bool finite() const;

private:
    Box box_{};
    int nt_ = 0, nx_ = 0, nv_ = 0, comps_ = 1;
    Extension ext_ = Extension::Zero;
    std::vector<double> data_;
};

/// Sampler view of a scalar field.
ScalarFn field_sampler(const Field& f);

PhasePoint cell_point(const Field& f, int it, int ix, int iv);

/// True when the cylinder lies inside the box (no wrap, even for PeriodicX).
bool cylinder_inside_box(const Field& f, const Cylinder& c);

/// ‖f‖_p by midpoint quadrature over the box, or over cells whose centre lies in `region`.
/// p = infinity gives the max. Vector fields use the pointwise Euclidean norm.
/// Throws std::domain_error if the region contains no cell centre.
double lp_norm(const Field& f, double p, const std::optional<Cylinder>& region = std::nullopt);

/// ∫ |f|^p over box or region (no root taken).
double lp_power(const Field& f, double p, const std::optional<Cylinder>& region = std::nullopt);

/// Measure of {f > k} ∩ region by cell counting.
double level_set_measure(const Field& f, double k, const std::optional<Cylinder>& region = std::nullopt);

/// Measure of region ∩ box by cell counting.
double region_measure(const Field& f, const std::optional<Cylinder>& region = std::nullopt);

/// Max over time slices of the L² norm over D_{θ,R}(t). Throws std::domain_error if the cylinder leaves the box.
double linf_l2_slice_norm(const Field& f, const Cylinder& c);

/// f(t, x+h, v) - f(t, x, v) at cell centres.
Field diff_x(const Field& f, double h);

/// Central differences in v, second order one-sided at the v boundary. Requires nv >= 3.
Field grad_v(const Field& f);

struct BesovEstimate {
    double s = 0.0;
    double q = 0.0;
    std::vector<double> h_set;
    std::vector<double> quotients;  ///< ‖Δ_x^h f‖_q / |h|^s per h
    double value = 0.0;             ///< max of quotients
};

BesovEstimate besov_seminorm(const Field& f, double s, double q, const std::vector<double>& h_set);

/// Dyadic set h0 2^{-j}, j = 0..count-1.
std::vector<double> dyadic_h_set(double h0, int count);

/// (f - k)_+.
Field truncate(const Field& f, double k);

/// u(t,x,v) = f(Θt, Θx, v)/K with Θ = K^{2-p}; exact regrid by rescaling the box.
Field intrinsic_rescale(const Field& f, double K, double p);

/// g(z) = f(z0 ∘ δ_R z) for z0 with zero velocity; exact regrid by rescaling the box.
Field normalize(const Field& f, const PhasePoint& z0, double R, double p);

void write_field_binary(const Field& f, std::ostream& out);
Field read_field_binary(std::istream& in);
void write_field_binary(const Field& f, const std::string& path);
Field read_field_binary(const std::string& path);

/// CSV with header "x,v,value" for the time slice it.
void write_slice_csv(const Field& f, int it, std::ostream& out);

/// Shortest round-trip decimal.
std::string format_double(double x);

}  // namespace kinlap
