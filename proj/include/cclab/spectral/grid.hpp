#pragma once

#include <array>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cclab/multiindex.hpp"
#include "cclab/spectral/fft.hpp"

namespace cclab::spectral {

struct GridError : std::runtime_error {
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

/// Geometry of the periodic box [-pi, pi)^dim sampled with n points per axis.
struct GridGeom {
    int dim = 2;
    int n = 0;

    size_t size() const {
        size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<size_t>(n);
        return s;
    }
    double coord(int i) const { return -std::numbers::pi + 2.0 * std::numbers::pi * i / n; }
    double cell_volume() const {
        double c = 1;
        for (int d = 0; d < dim; ++d) c *= 2.0 * std::numbers::pi / n;
        return c;
    }
    // flat index -> per-axis indices
    void unflatten(size_t idx, int* out) const {
        for (int d = dim - 1; d >= 0; --d) {
            out[d] = static_cast<int>(idx % static_cast<size_t>(n));
            idx /= static_cast<size_t>(n);
        }
    }
    // signed wavenumber of index i; Nyquist reported as n/2
    int wavenumber(int i) const { return i <= n / 2 ? i : i - n; }
};

/// Periodic complex samples on a torus box, with the symbol they represent.
struct GridField {
    GridGeom geom;
    std::vector<cplx> a;
    bool real_flag = true;
    std::string symbol;

    static GridField make(int dim, int n, std::string symbol = "");

    size_t size() const { return geom.size(); }
    GridField& operator+=(const GridField& o);
    GridField& operator-=(const GridField& o);
    GridField& operator*=(double s);

    void save_raw(const std::string& path_prefix) const;  // .f64 plus .json sidecar
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField pointwise_mul(const GridField& a, const GridField& b);
GridField conj_field(GridField a);
GridField real_part(GridField a);

// fill from an arbitrary pointwise function of the coordinates
GridField sample_function(int dim, int n, const std::function<cplx(const double*)>& f,
                          const std::string& symbol = "");

// deterministic blocked reductions (independent of thread count)
double integral_real(const GridField& f);   // trapezoid of Re f
cplx integral_complex(const GridField& f);
double integral_abs(const GridField& f);
double lp_norm(const GridField& f, double p);
double l2_norm(const GridField& f);
double max_abs(const GridField& f);
cplx inner_product(const GridField& f, const GridField& g);  // int f conj(g)

// forward / inverse transforms over every axis; parallel over lines
GridField fft_forward(const GridField& f);
GridField fft_inverse(const GridField& f);

// largest relative violation of conjugate symmetry in the spectrum
double conjugate_symmetry_defect(const GridField& f);

namespace ref {
// serial single-line-at-a-time transform built on the naive DFT
GridField fft_forward(const GridField& f);
double integral_abs(const GridField& f);
}  // namespace ref

}  // namespace cclab::spectral
