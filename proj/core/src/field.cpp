#include "kinlap/field.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>
#include <istream>
#include <stdexcept>

namespace kinlap {

static_assert(std::endian::native == std::endian::little, "binary field I/O assumes a little-endian host");

Field::Field(const Box& box, int nt, int nx, int nv, int comps, Extension ext)
    : box_(box), nt_(nt), nx_(nx), nv_(nv), comps_(comps), ext_(ext) {
    if (nt < 1 || nx < 1 || nv < 1 || comps < 1) throw std::invalid_argument("Field: sizes must be positive");
    if (!(box.t1 > box.t0 && box.x1 > box.x0 && box.v1 > box.v0))
        throw std::invalid_argument("Field: box must have positive extent");
    data_.assign(static_cast<std::size_t>(nt) * nx * nv * comps, 0.0);
}

Field Field::from_function(const Box& box, int nt, int nx, int nv, const ScalarFn& fn, Extension ext) {
    Field f(box, nt, nx, nv, 1, ext);
    for (int it = 0; it < nt; ++it)
        for (int ix = 0; ix < nx; ++ix)
            for (int iv = 0; iv < nv; ++iv) f.at(it, ix, iv) = fn(f.t(it), f.x(ix), f.v(iv));
    return f;
}

bool Field::inside(double t, double x, double v) const {
    if (t < box_.t0 || t > box_.t1 || v < box_.v0 || v > box_.v1) return false;
    if (ext_ == Extension::PeriodicX) return true;
    return x >= box_.x0 && x <= box_.x1;
}

namespace {

struct AxisWeights {
    int i0, i1;
    double w;
};

AxisWeights clamp_axis(double pos, double lo, double h, int n) {
    const double s = (pos - lo) / h - 0.5;
    double fl = std::floor(s);
    int i0 = static_cast<int>(fl);
    double w = s - fl;
    int i1 = i0 + 1;
    if (i0 < 0) {
        i0 = i1 = 0;
        w = 0.0;
    } else if (i1 > n - 1) {
        i0 = i1 = n - 1;
        w = 0.0;
    }
    return {i0, i1, w};
}

AxisWeights periodic_axis(double pos, double lo, double h, int n) {
    const double s = (pos - lo) / h - 0.5;
    const double fl = std::floor(s);
    const double w = s - fl;
    long long i0 = static_cast<long long>(fl) % n;
    if (i0 < 0) i0 += n;
    const int a = static_cast<int>(i0);
    return {a, (a + 1) % n, w};
}

}  // namespace

double Field::sample(double t, double x, double v, int c) const {
    if (!inside(t, x, v)) return 0.0;
    const auto at_ = clamp_axis(t, box_.t0, dt(), nt_);
    const auto av = clamp_axis(v, box_.v0, dv(), nv_);
    const auto ax = ext_ == Extension::PeriodicX ? periodic_axis(x, box_.x0, dx(), nx_)
                                                 : clamp_axis(x, box_.x0, dx(), nx_);
    double acc = 0.0;
    for (int a = 0; a < 2; ++a) {
        const int it = a ? at_.i1 : at_.i0;
        const double wt = a ? at_.w : 1.0 - at_.w;
        if (wt == 0.0) continue;
        for (int b = 0; b < 2; ++b) {
            const int ix = b ? ax.i1 : ax.i0;
            const double wx = b ? ax.w : 1.0 - ax.w;
            if (wx == 0.0) continue;
            for (int e = 0; e < 2; ++e) {
                const int iv = e ? av.i1 : av.i0;
                const double wv = e ? av.w : 1.0 - av.w;
                if (wv == 0.0) continue;
                acc += wt * wx * wv * at(it, ix, iv, c);
            }
        }
    }
    return acc;
}

double Field::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

bool Field::finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

ScalarFn field_sampler(const Field& f) {
    return [&f](double t, double x, double v) { return f.sample(t, x, v); };
}

PhasePoint cell_point(const Field& f, int it, int ix, int iv) {
    return PhasePoint(f.t(it), f.x(ix), f.v(iv));
}

namespace {

/// d = 1 membership without allocating.
struct FastCylinder {
    double t0, x0, v0, tlen, rx, rv;
    explicit FastCylinder(const Cylinder& c) {
        if (c.center.dim() != 1) throw std::invalid_argument("grid operations support d = 1 only");
        t0 = c.center.t;
        x0 = c.center.x[0];
        v0 = c.center.v[0];
        tlen = c.theta * std::pow(c.R, c.p);
        rx = c.theta * std::pow(c.R, 1.0 + c.p);
        rv = c.R;
    }
    bool time_ok(double t) const { return t - t0 >= -tlen && t - t0 < 0.0; }
    bool contains(double t, double x, double v) const {
        if (!time_ok(t)) return false;
        return std::abs(x - x0 - (t - t0) * v0) < rx && std::abs(v - v0) < rv;
    }
};

double pointwise_norm(const Field& f, int it, int ix, int iv) {
    if (f.comps() == 1) return std::abs(f.at(it, ix, iv));
    double s = 0.0;
    for (int c = 0; c < f.comps(); ++c) s += f.at(it, ix, iv, c) * f.at(it, ix, iv, c);
    return std::sqrt(s);
}

template <class Visit>
void for_cells(const Field& f, const std::optional<Cylinder>& region, Visit&& visit) {
    if (!region) {
        for (int it = 0; it < f.nt(); ++it)
            for (int ix = 0; ix < f.nx(); ++ix)
                for (int iv = 0; iv < f.nv(); ++iv) visit(it, ix, iv);
        return;
    }
    const FastCylinder fc(*region);
    for (int it = 0; it < f.nt(); ++it) {
        const double t = f.t(it);
        if (!fc.time_ok(t)) continue;
        for (int ix = 0; ix < f.nx(); ++ix)
            for (int iv = 0; iv < f.nv(); ++iv)
                if (fc.contains(t, f.x(ix), f.v(iv))) visit(it, ix, iv);
    }
}

}  // namespace

bool cylinder_inside_box(const Field& f, const Cylinder& c) {
    const FastCylinder fc(c);
    const Box& b = f.box();
    if (c.center.t - fc.tlen < b.t0 || c.center.t > b.t1) return false;
    if (fc.v0 - fc.rv < b.v0 || fc.v0 + fc.rv > b.v1) return false;
    const double drift = fc.tlen * std::abs(fc.v0);
    return fc.x0 - fc.rx - drift >= b.x0 && fc.x0 + fc.rx + drift <= b.x1;
}

double lp_power(const Field& f, double p, const std::optional<Cylinder>& region) {
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("lp_power: need finite p >= 1");
    double s = 0.0;
    std::size_t count = 0;
    for_cells(f, region, [&](int it, int ix, int iv) {
        const double a = pointwise_norm(f, it, ix, iv);
        s += p == 2.0 ? a * a : std::pow(a, p);
        ++count;
    });
    if (count == 0) throw std::domain_error("lp_power: empty region");
    return s * f.cell_volume();
}

double lp_norm(const Field& f, double p, const std::optional<Cylinder>& region) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: need p >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        std::size_t count = 0;
        for_cells(f, region, [&](int it, int ix, int iv) {
            m = std::max(m, pointwise_norm(f, it, ix, iv));
            ++count;
        });
        if (count == 0) throw std::domain_error("lp_norm: empty region");
        return m;
    }
    return std::pow(lp_power(f, p, region), 1.0 / p);
}

double level_set_measure(const Field& f, double k, const std::optional<Cylinder>& region) {
    std::size_t count = 0;
    for_cells(f, region, [&](int it, int ix, int iv) {
        if (f.at(it, ix, iv) > k) ++count;
    });
    return static_cast<double>(count) * f.cell_volume();
}

double region_measure(const Field& f, const std::optional<Cylinder>& region) {
    std::size_t count = 0;
    for_cells(f, region, [&](int, int, int) { ++count; });
    return static_cast<double>(count) * f.cell_volume();
}

double linf_l2_slice_norm(const Field& f, const Cylinder& c) {
    if (!cylinder_inside_box(f, c)) throw std::domain_error("linf_l2_slice_norm: cylinder outside box");
    const FastCylinder fc(c);
    double best = 0.0;
    bool any = false;
    const double area = f.dx() * f.dv();
    for (int it = 0; it < f.nt(); ++it) {
        const double t = f.t(it);
        if (!fc.time_ok(t)) continue;
        any = true;
        double s = 0.0;
        for (int ix = 0; ix < f.nx(); ++ix)
            for (int iv = 0; iv < f.nv(); ++iv)
                if (fc.contains(t, f.x(ix), f.v(iv))) {
                    const double a = pointwise_norm(f, it, ix, iv);
                    s += a * a;
                }
        best = std::max(best, std::sqrt(s * area));
    }
    if (!any) throw std::domain_error("linf_l2_slice_norm: no time slice inside the cylinder");
    return best;
}

Field diff_x(const Field& f, double h) {
    Field out(f.box(), f.nt(), f.nx(), f.nv(), f.comps(), f.extension());
    if (h == 0.0) return out;
    for (int it = 0; it < f.nt(); ++it)
        for (int ix = 0; ix < f.nx(); ++ix)
            for (int iv = 0; iv < f.nv(); ++iv)
                for (int c = 0; c < f.comps(); ++c)
                    out.at(it, ix, iv, c) = f.sample(f.t(it), f.x(ix) + h, f.v(iv), c) - f.at(it, ix, iv, c);
    return out;
}

Field grad_v(const Field& f) {
    if (f.nv() < 3) throw std::invalid_argument("grad_v: need nv >= 3");
    if (f.comps() != 1) throw std::invalid_argument("grad_v: scalar field expected");
    Field g(f.box(), f.nt(), f.nx(), f.nv(), 1, f.extension());
    const double inv = 1.0 / (2.0 * f.dv());
    const int n = f.nv();
    for (int it = 0; it < f.nt(); ++it)
        for (int ix = 0; ix < f.nx(); ++ix) {
            g.at(it, ix, 0) = (-3.0 * f.at(it, ix, 0) + 4.0 * f.at(it, ix, 1) - f.at(it, ix, 2)) * inv;
            for (int iv = 1; iv < n - 1; ++iv) g.at(it, ix, iv) = (f.at(it, ix, iv + 1) - f.at(it, ix, iv - 1)) * inv;
            g.at(it, ix, n - 1) =
                (3.0 * f.at(it, ix, n - 1) - 4.0 * f.at(it, ix, n - 2) + f.at(it, ix, n - 3)) * inv;
        }
    return g;
}

BesovEstimate besov_seminorm(const Field& f, double s, double q, const std::vector<double>& h_set) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("besov_seminorm: need s in (0,1)");
    if (!(q >= 1.0)) throw std::invalid_argument("besov_seminorm: need q >= 1");
    BesovEstimate est;
    est.s = s;
    est.q = q;
    est.h_set = h_set;
    for (double h : h_set) {
        if (h == 0.0) throw std::invalid_argument("besov_seminorm: h must be nonzero");
        const double quotient = lp_norm(diff_x(f, h), q) / std::pow(std::abs(h), s);
        est.quotients.push_back(quotient);
        est.value = std::max(est.value, quotient);
    }
    return est;
}

std::vector<double> dyadic_h_set(double h0, int count) {
    std::vector<double> out;
    for (int j = 0; j < count; ++j) out.push_back(std::ldexp(h0, -j));
    return out;
}

Field truncate(const Field& f, double k) {
    Field out = f;
    for (double& x : out.data()) x = std::max(x - k, 0.0);
    return out;
}

namespace {

Field regrid(const Field& f, const Box& b) {
    Field out(b, f.nt(), f.nx(), f.nv(), f.comps(), f.extension());
    out.data() = f.data();
    return out;
}

}  // namespace

Field intrinsic_rescale(const Field& f, double K, double p) {
    if (!(K > 0.0)) throw std::invalid_argument("intrinsic_rescale: K must be positive");
    const double theta = std::pow(K, 2.0 - p);
    const Box& b = f.box();
    Field out = regrid(f, Box{b.t0 / theta, b.t1 / theta, b.x0 / theta, b.x1 / theta, b.v0, b.v1});
    for (double& x : out.data()) x /= K;
    return out;
}

Field normalize(const Field& f, const PhasePoint& z0, double R, double p) {
    if (z0.dim() != 1) throw std::invalid_argument("normalize: d = 1 only");
    if (z0.v[0] != 0.0) throw std::invalid_argument("normalize: z0 must have zero velocity for an exact regrid");
    if (!(R > 0.0)) throw std::invalid_argument("normalize: R must be positive");
    const double rp = std::pow(R, p), rx = rp * R;
    const Box& b = f.box();
    return regrid(f, Box{(b.t0 - z0.t) / rp, (b.t1 - z0.t) / rp, (b.x0 - z0.x[0]) / rx, (b.x1 - z0.x[0]) / rx,
                         b.v0 / R, b.v1 / R});
}

namespace {

constexpr char kMagic[8] = {'K', 'I', 'N', 'F', 'L', 'D', '0', '1'};

template <class T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw std::runtime_error("read_field_binary: truncated input");
    return value;
}

}  // namespace

void write_field_binary(const Field& f, std::ostream& out) {
    out.write(kMagic, sizeof(kMagic));
    put<std::int64_t>(out, f.nt());
    put<std::int64_t>(out, f.nx());
    put<std::int64_t>(out, f.nv());
    put<std::int64_t>(out, f.comps());
    put<std::int64_t>(out, f.extension() == Extension::PeriodicX ? 1 : 0);
    const Box& b = f.box();
    for (double x : {b.t0, b.t1, b.x0, b.x1, b.v0, b.v1}) put<double>(out, x);
    for (double x : {f.dt(), f.dx(), f.dv()}) put<double>(out, x);
    out.write(reinterpret_cast<const char*>(f.data().data()),
              static_cast<std::streamsize>(f.data().size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_field_binary: write failed");
}

Field read_field_binary(std::istream& in) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("read_field_binary: bad magic");
    const auto nt = get<std::int64_t>(in), nx = get<std::int64_t>(in), nv = get<std::int64_t>(in);
    const auto comps = get<std::int64_t>(in);
    const auto ext = get<std::int64_t>(in);
    Box b;
    b.t0 = get<double>(in);
    b.t1 = get<double>(in);
    b.x0 = get<double>(in);
    b.x1 = get<double>(in);
    b.v0 = get<double>(in);
    b.v1 = get<double>(in);
    for (int i = 0; i < 3; ++i) get<double>(in);
    Field f(b, static_cast<int>(nt), static_cast<int>(nx), static_cast<int>(nv), static_cast<int>(comps),
            ext == 1 ? Extension::PeriodicX : Extension::Zero);
    in.read(reinterpret_cast<char*>(f.data().data()), static_cast<std::streamsize>(f.data().size() * sizeof(double)));
    if (!in) throw std::runtime_error("read_field_binary: truncated payload");
    return f;
}

void write_field_binary(const Field& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_field_binary(f, out);
}

Field read_field_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_field_binary(in);
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_slice_csv(const Field& f, int it, std::ostream& out) {
    if (it < 0 || it >= f.nt()) throw std::out_of_range("write_slice_csv: slice index");
    out << "x,v,value\n";
    for (int ix = 0; ix < f.nx(); ++ix)
        for (int iv = 0; iv < f.nv(); ++iv)
            out << format_double(f.x(ix)) << ',' << format_double(f.v(iv)) << ','
                << format_double(f.at(it, ix, iv)) << '\n';
}

}  // namespace kinlap
