#include "cclab/spectral/grid.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace cclab::spectral {

GridField GridField::make(int dim, int n, std::string symbol) {
    if (dim < 1 || dim > 3) throw GridError("grid dimension must be 1, 2 or 3");
    if (n < 2 || (n & (n - 1)) != 0) throw GridError("grid resolution must be a power of two");
    GridField f;
    f.geom = {dim, n};
    f.a.assign(f.geom.size(), cplx{0.0, 0.0});
    f.symbol = std::move(symbol);
    return f;
}

static void check_compatible(const GridField& a, const GridField& b) {
    if (a.geom.dim != b.geom.dim || a.geom.n != b.geom.n)
        throw GridError("grid fields live on different grids");
}

GridField& GridField::operator+=(const GridField& o) {
    check_compatible(*this, o);
    for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    real_flag = real_flag && o.real_flag;
    return *this;
}

GridField& GridField::operator-=(const GridField& o) {
    check_compatible(*this, o);
    for (size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    real_flag = real_flag && o.real_flag;
    return *this;
}

GridField& GridField::operator*=(double s) {
    for (auto& v : a) v *= s;
    return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }

GridField pointwise_mul(const GridField& a, const GridField& b) {
    check_compatible(a, b);
    GridField r = a;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] *= b.a[i];
    r.real_flag = a.real_flag && b.real_flag;
    return r;
}

GridField conj_field(GridField a) {
    for (auto& v : a.a) v = std::conj(v);
    return a;
}

GridField real_part(GridField a) {
    for (auto& v : a.a) v = cplx{v.real(), 0.0};
    a.real_flag = true;
    return a;
}

GridField sample_function(int dim, int n, const std::function<cplx(const double*)>& f,
                          const std::string& symbol) {
    GridField g = GridField::make(dim, n, symbol);
    size_t total = g.size();
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
        int iv[3] = {0, 0, 0};
        g.geom.unflatten(static_cast<size_t>(idx), iv);
        double x[3] = {0, 0, 0};
        for (int d = 0; d < dim; ++d) x[d] = g.geom.coord(iv[d]);
        g.a[static_cast<size_t>(idx)] = f(x);
    }
    for (const auto& v : g.a)
        if (v.imag() != 0.0) {
            g.real_flag = false;
            break;
        }
    return g;
}

// blocked reduction: per-block partials in parallel, serial fold in block order
template <typename Map>
static double blocked_sum(size_t total, Map&& term) {
    constexpr size_t kBlocks = 64;
    std::array<double, kBlocks> partial{};
    size_t chunk = (total + kBlocks - 1) / kBlocks;
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(kBlocks); ++b) {
        size_t lo = static_cast<size_t>(b) * chunk;
        size_t hi = std::min(total, lo + chunk);
        double s = 0;
        for (size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<size_t>(b)] = s;
    }
    double s = 0;
    for (double p : partial) s += p;
    return s;
}

double integral_real(const GridField& f) {
    return f.geom.cell_volume() * blocked_sum(f.size(), [&](size_t i) { return f.a[i].real(); });
}

cplx integral_complex(const GridField& f) {
    double re = blocked_sum(f.size(), [&](size_t i) { return f.a[i].real(); });
    double im = blocked_sum(f.size(), [&](size_t i) { return f.a[i].imag(); });
    return f.geom.cell_volume() * cplx{re, im};
}

double integral_abs(const GridField& f) {
    return f.geom.cell_volume() * blocked_sum(f.size(), [&](size_t i) { return std::abs(f.a[i]); });
}

double lp_norm(const GridField& f, double p) {
    double s = blocked_sum(f.size(), [&](size_t i) { return std::pow(std::abs(f.a[i]), p); });
    return std::pow(f.geom.cell_volume() * s, 1.0 / p);
}

double l2_norm(const GridField& f) { return lp_norm(f, 2.0); }

double max_abs(const GridField& f) {
    double m = 0;
    for (const auto& v : f.a) m = std::max(m, std::abs(v));
    return m;
}

cplx inner_product(const GridField& f, const GridField& g) {
    check_compatible(f, g);
    double re = blocked_sum(f.size(), [&](size_t i) { return (f.a[i] * std::conj(g.a[i])).real(); });
    double im = blocked_sum(f.size(), [&](size_t i) { return (f.a[i] * std::conj(g.a[i])).imag(); });
    return f.geom.cell_volume() * cplx{re, im};
}

static void transform_axis(GridField& f, int axis, bool inverse, const Fft& plan) {
    int n = f.geom.n;
    int dim = f.geom.dim;
    size_t total = f.size();
    size_t lines = total / static_cast<size_t>(n);

    // stride of the axis in the row-major layout
    size_t stride = 1;
    for (int d = dim - 1; d > axis; --d) stride *= static_cast<size_t>(n);

#pragma omp parallel
    {
        std::vector<cplx> line(static_cast<size_t>(n));
#pragma omp for schedule(static)
        for (long long li = 0; li < static_cast<long long>(lines); ++li) {
            size_t strides[3] = {0, 0, 0};
            size_t m = 1;
            for (int d = dim - 1; d >= 0; --d) {
                strides[d] = m;
                m *= static_cast<size_t>(n);
            }
            size_t rem = static_cast<size_t>(li);
            size_t base = 0;
            for (int d = dim - 1; d >= 0; --d) {
                if (d == axis) continue;
                base += (rem % static_cast<size_t>(n)) * strides[d];
                rem /= static_cast<size_t>(n);
            }
            for (int i = 0; i < n; ++i) line[static_cast<size_t>(i)] = f.a[base + static_cast<size_t>(i) * stride];
            if (inverse)
                plan.inverse(line.data());
            else
                plan.forward(line.data());
            for (int i = 0; i < n; ++i) f.a[base + static_cast<size_t>(i) * stride] = line[static_cast<size_t>(i)];
        }
    }
}

GridField fft_forward(const GridField& f) {
    GridField g = f;
    Fft plan(f.geom.n);
    for (int axis = 0; axis < f.geom.dim; ++axis) transform_axis(g, axis, false, plan);
    g.real_flag = false;
    return g;
}

GridField fft_inverse(const GridField& f) {
    GridField g = f;
    Fft plan(f.geom.n);
    for (int axis = 0; axis < f.geom.dim; ++axis) transform_axis(g, axis, true, plan);
    return g;
}

double conjugate_symmetry_defect(const GridField& spec) {
    const GridGeom& gg = spec.geom;
    double worst = 0, scale = 0;
    for (size_t i = 0; i < spec.size(); ++i) scale = std::max(scale, std::abs(spec.a[i]));
    if (scale == 0) return 0;
    int iv[3], jv[3];
    for (size_t i = 0; i < spec.size(); ++i) {
        gg.unflatten(i, iv);
        for (int d = 0; d < gg.dim; ++d) jv[d] = (gg.n - iv[d]) % gg.n;
        size_t j = 0;
        for (int d = 0; d < gg.dim; ++d) j = j * static_cast<size_t>(gg.n) + static_cast<size_t>(jv[d]);
        worst = std::max(worst, std::abs(spec.a[i] - std::conj(spec.a[j])));
    }
    return worst / scale;
}

void GridField::save_raw(const std::string& path_prefix) const {
    std::ofstream raw(path_prefix + ".f64", std::ios::binary);
    for (const auto& v : a) {
        double re = v.real(), im = v.imag();
        raw.write(reinterpret_cast<const char*>(&re), sizeof(double));
        raw.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
    nlohmann::json j;
    j["dims"] = geom.dim;
    j["resolution"] = geom.n;
    j["symbol"] = symbol;
    j["real"] = real_flag;
    j["layout"] = "row-major interleaved re,im little-endian float64";
    std::ofstream side(path_prefix + ".json");
    side << j.dump(2) << "\n";
}

namespace ref {

GridField fft_forward(const GridField& f) {
    GridField g = f;
    int n = f.geom.n;
    for (int axis = 0; axis < f.geom.dim; ++axis) {
        size_t strides[3] = {0, 0, 0};
        size_t m = 1;
        for (int d = f.geom.dim - 1; d >= 0; --d) {
            strides[d] = m;
            m *= static_cast<size_t>(n);
        }
        size_t lines = f.size() / static_cast<size_t>(n);
        for (size_t li = 0; li < lines; ++li) {
            size_t rem = li, base = 0;
            for (int d = f.geom.dim - 1; d >= 0; --d) {
                if (d == axis) continue;
                base += (rem % static_cast<size_t>(n)) * strides[d];
                rem /= static_cast<size_t>(n);
            }
            std::vector<cplx> line(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) line[static_cast<size_t>(i)] = g.a[base + static_cast<size_t>(i) * strides[axis]];
            auto out = naive_dft(line, false);
            for (int i = 0; i < n; ++i) g.a[base + static_cast<size_t>(i) * strides[axis]] = out[static_cast<size_t>(i)];
        }
    }
    g.real_flag = false;
    return g;
}

double integral_abs(const GridField& f) {
    double s = 0;
    for (const auto& v : f.a) s += std::abs(v);
    return f.geom.cell_volume() * s;
}

}  // namespace ref

}  // namespace cclab::spectral
