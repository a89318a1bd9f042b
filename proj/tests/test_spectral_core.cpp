#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cclab/spectral/quadrature.hpp"

using namespace cclab;
using namespace cclab::spectral;

namespace {

// band-limited complex field; multiplier identities are exact on these
GridField random_complex_field(int dim, int n, unsigned seed) {
    GridField f = random_trig_field(dim, n, seed, 4, 6, "f");
    GridField g = random_trig_field(dim, n, seed + 9999, 4, 6);
    for (size_t i = 0; i < f.size(); ++i) f.a[i] += cplx{0, 1} * g.a[i];
    f.real_flag = false;
    return f;
}

}  // namespace

TEST_CASE("fast transform matches the naive reference") {
    std::mt19937 rng(3);
    std::normal_distribution<double> g(0, 1);
    for (int dim : {1, 2}) {
        GridField f = GridField::make(dim, 16, "f");
        for (auto& v : f.a) v = cplx{g(rng), g(rng)};
        GridField fast = fft_forward(f);
        GridField slow = ref::fft_forward(f);
        double err = 0, scale = 0;
        for (size_t i = 0; i < fast.size(); ++i) {
            err = std::max(err, std::abs(fast.a[i] - slow.a[i]));
            scale = std::max(scale, std::abs(slow.a[i]));
        }
        CHECK(err / scale < 1e-12);
        // round trip
        GridField back = fft_inverse(fast);
        double rerr = 0;
        for (size_t i = 0; i < back.size(); ++i) rerr = std::max(rerr, std::abs(back.a[i] - f.a[i]));
        CHECK(rerr < 1e-12);
    }
}

TEST_CASE("deterministic reductions match the serial reference") {
    BumpSpec bs;
    bs.dim = 2;
    bs.seed = 5;
    GridField f = sample_field(*random_bump_scalar(bs), 64, "f");
    CHECK(std::abs(integral_abs(f) - ref::integral_abs(f)) <= 1e-12 * ref::integral_abs(f));
}

TEST_CASE("plane waves are derivative eigenfunctions") {
    int n = 64;
    GridField pw = sample_function(2, n, [](const double* x) {
        return cplx{std::cos(x[0]), std::sin(x[0])};
    });
    GridField d = spectral_derivative(pw, MultiIndex{1, 0});
    double err = 0;
    for (size_t i = 0; i < d.size(); ++i)
        err = std::max(err, std::abs(d.a[i] - cplx{0, 1} * pw.a[i]));
    CHECK(err < 1e-12);
}

TEST_CASE("derivative then antiderivative returns the input away from the mean") {
    GridField f = random_complex_field(2, 128, 7);
    cplx mean = integral_complex(f) / std::pow(2 * std::numbers::pi, 2);
    GridField d = spectral_derivative(f, MultiIndex{1, 0});
    // antiderivative: divide by i k_x, zero on the k_x = 0 slab
    GridField spec = fft_forward(d);
    const GridGeom& g = spec.geom;
    int iv[2];
    std::vector<cplx> orig = fft_forward(f).a;
    for (size_t i = 0; i < spec.size(); ++i) {
        g.unflatten(i, iv);
        int kx = g.wavenumber(iv[0]);
        if (kx == 0 || iv[0] == g.n / 2) {
            spec.a[i] = orig[i];  // untouched modes carried over
            continue;
        }
        spec.a[i] /= cplx{0, static_cast<double>(kx)};
    }
    GridField back = fft_inverse(spec);
    double err = 0;
    for (size_t i = 0; i < back.size(); ++i) err = std::max(err, std::abs(back.a[i] - f.a[i]));
    CHECK(err / (std::abs(mean) + max_abs(f)) < 1e-12);
}

TEST_CASE("real fields have conjugate-symmetric spectra") {
    GridField f = random_trig_field(2, 64, 11, 4, 6, "f");
    CHECK(f.real_flag);
    CHECK(conjugate_symmetry_defect(fft_forward(f)) < 1e-12);
}

TEST_CASE("riesz and leray behave as projections") {
    int n = 64;
    GridField psi = random_trig_field(2, n, 13, 4, 6, "psi");
    std::vector<GridField> grad = potential_gradient(psi);
    std::vector<GridField> proj = leray_project(grad);
    CHECK(l2_norm(proj[0]) / (l2_norm(grad[0]) + 1e-300) < 1e-12);
    CHECK(l2_norm(proj[1]) / (l2_norm(grad[1]) + 1e-300) < 1e-12);

    std::vector<GridField> w{random_complex_field(2, n, 17), random_complex_field(2, n, 18)};
    std::vector<GridField> u = leray_project(w);
    CHECK(l2_norm(divergence(u)) / (l2_norm(u[0]) + l2_norm(u[1])) < 1e-12);
    std::vector<GridField> uu = leray_project(u);
    CHECK(l2_norm(uu[0] - u[0]) / l2_norm(u[0]) < 1e-12);

    GridField r0 = riesz(psi, 0);
    cplx mean = integral_complex(r0);
    CHECK(std::abs(mean) < 1e-12);
}

TEST_CASE("beurling transform identities") {
    int n = 128;
    GridField pw10 = sample_function(2, n, [](const double* x) {
        return cplx{std::cos(x[0]), std::sin(x[0])};
    });
    GridField s10 = beurling(pw10);
    double e1 = 0;
    for (size_t i = 0; i < s10.size(); ++i) e1 = std::max(e1, std::abs(s10.a[i] - pw10.a[i]));
    CHECK(e1 < 1e-12);

    GridField pw01 = sample_function(2, n, [](const double* x) {
        return cplx{std::cos(x[1]), std::sin(x[1])};
    });
    GridField s01 = beurling(pw01);
    double e2 = 0;
    for (size_t i = 0; i < s01.size(); ++i) e2 = std::max(e2, std::abs(s01.a[i] + pw01.a[i]));
    CHECK(e2 < 1e-12);

    for (unsigned seed : {21u, 22u, 23u}) {
        GridField f = random_complex_field(2, n, seed);
        GridField sf = beurling(f);
        CHECK(std::abs(l2_norm(sf) - l2_norm(f)) / l2_norm(f) < 1e-12);

        auto [uz, uzb] = wirtinger(f);
        GridField suzb = beurling(uzb);
        CHECK(l2_norm(suzb - uz) / (l2_norm(uz) + 1e-300) < 1e-12);

        // Ju = |u_z|^2 - |u_zbar|^2 and its vanishing integral
        GridField re = real_part(f);
        GridField im = f;
        for (size_t i = 0; i < im.size(); ++i) im.a[i] = cplx{f.a[i].imag(), 0.0};
        im.real_flag = true;
        GridField ju = jacobian({re, im});
        GridField alt = GridField::make(2, n);
        for (size_t i = 0; i < alt.size(); ++i)
            alt.a[i] = std::norm(uz.a[i]) - std::norm(uzb.a[i]);
        CHECK(l2_norm(real_part(ju) - alt) / (l2_norm(alt) + 1e-300) < 1e-12);
        double scale = integral_abs(ju) + 1e-300;
        CHECK(std::abs(integral_complex(ju)) / scale < 1e-10);
    }
}

TEST_CASE("identity map has unit determinant on the plateau") {
    // u(z) = z on the plateau of a cutoff; checked pointwise at the center
    int n = 128;
    auto cut = plateau_bump(2, 1.0, 1.5);
    auto ux = std::make_shared<AnalyticScalar>();
    ux->dimension = 2;
    PolyPart px;
    px.dim = 2;
    px.coeffs[MultiIndex{1, 0}] = 1.0;
    ux->poly = px;
    ux->bump = cut->bump;
    auto uy = std::make_shared<AnalyticScalar>();
    uy->dimension = 2;
    PolyPart py;
    py.dim = 2;
    py.coeffs[MultiIndex{0, 1}] = 1.0;
    uy->poly = py;
    uy->bump = cut->bump;
    // gradient from exact jets; determinant at the plateau center is 1
    double x0[3] = {0, 0, 0};
    double a = ux->jet(MultiIndex{1, 0}, x0).real();
    double b = ux->jet(MultiIndex{0, 1}, x0).real();
    double c = uy->jet(MultiIndex{1, 0}, x0).real();
    double d = uy->jet(MultiIndex{0, 1}, x0).real();
    CHECK(std::abs(a * d - b * c - 1.0) < 1e-12);
    (void)n;
}

TEST_CASE("commutator-type operator") {
    int n = 128;
    GridField b = random_trig_field(2, n, 31, 4, 6, "b");

    GridField bc = GridField::make(2, n, "b");
    for (auto& v : bc.a) v = 2.5;
    GridField f = random_complex_field(2, n, 33);
    CHECK(l2_norm(kb_apply(bc, f)) / l2_norm(f) < 1e-12);

    for (unsigned seed : {41u, 42u, 43u, 44u}) {
        GridField g = random_complex_field(2, n, seed);
        CHECK(kb_identity_check(b, g) < 1e-10);
    }

    GridField g = random_complex_field(2, n, 51);
    GridField kbf2 = kb_apply(b, f);
    GridField kbg2 = kb_apply(b, g);
    cplx lhs = inner_product(kbf2, g);
    cplx rhs = inner_product(f, kbg2);
    CHECK(std::abs(lhs - rhs) /
              (l2_norm(kbf2) * l2_norm(g) + l2_norm(f) * l2_norm(kbg2) + 1e-300) <
          1e-12);

    BmosEstimate est = bmos_norm(b, 40);
    CHECK(est.value > 0);
    CHECK(est.iterations >= 2);
    for (size_t i = 1; i < est.sequence.size(); ++i)
        CHECK(est.sequence[i] >= est.sequence[i - 1] * (1 - 1e-12));
}

TEST_CASE("hessian determinant of plane waves") {
    int n = 64;
    // a single mode has a rank-one Hessian, so the determinant vanishes
    GridField one = sample_function(2, n, [](const double* x) {
        return cplx{std::cos(x[0] + 2 * x[1]), 0.0};
    });
    CHECK(max_abs(hessian_det(one)) < 1e-11);
    // two independent modes interact
    GridField two = sample_function(2, n, [](const double* x) {
        return cplx{std::cos(x[0]) + std::cos(2 * x[1]), 0.0};
    });
    CHECK(max_abs(hessian_det(two)) > 0.1);
}

TEST_CASE("poisson solver and the potentials") {
    int n = 64;
    GridField pw = sample_function(2, n, [](const double* x) {
        return cplx{std::cos(2 * x[0] + x[1]), std::sin(2 * x[0] + x[1])};
    });
    GridField t = poisson_solve(pw);
    double err = 0;
    for (size_t i = 0; i < t.size(); ++i) err = std::max(err, std::abs(t.a[i] - pw.a[i] / 5.0));
    CHECK(err < 1e-12);

    GridField bad = GridField::make(2, n);
    for (auto& v : bad.a) v = 1.0;
    CHECK_THROWS_AS(poisson_solve(bad), GridError);

    for (int dim : {2, 3}) {
        int nn = dim == 3 ? 32 : 64;
        std::vector<GridField> w;
        for (int c = 0; c < dim; ++c)
            w.push_back(random_trig_field(dim, nn, 60 + static_cast<unsigned>(c), 4, 6, "w"));
        std::vector<GridField> u = leray_project(w);

        // B(C(T)) = -Laplace T for divergence-free T
        std::vector<GridField> bc = potential_B(potential_C(u));
        for (int c = 0; c < dim; ++c) {
            GridField lap = GridField::make(dim, nn);
            for (int d = 0; d < dim; ++d) {
                MultiIndex a(dim);
                a.set(d, 2);
                lap += spectral_derivative(u[static_cast<size_t>(c)], a);
            }
            lap *= -1.0;
            CHECK(l2_norm(bc[static_cast<size_t>(c)] - lap) / (l2_norm(lap) + 1e-300) < 1e-12);
        }

        // round trip through the right inverse
        std::vector<GridField> phi = divergence_potential(u);
        std::vector<GridField> back = potential_B(phi);
        for (int c = 0; c < dim; ++c)
            CHECK(l2_norm(back[static_cast<size_t>(c)] - u[static_cast<size_t>(c)]) /
                      (l2_norm(u[static_cast<size_t>(c)]) + 1e-300) <
                  1e-10);
    }
}

TEST_CASE("convective identity for solenoidal fields") {
    int n = 32;
    std::vector<GridField> w;
    for (int c = 0; c < 3; ++c)
        w.push_back(random_trig_field(3, n, 70 + static_cast<unsigned>(c), 4, 6, "u"));
    std::vector<GridField> u = leray_project(w);
    NsIdentity id = ns_identity_check(u);
    CHECK(id.relative_error < 1e-10);

    // single solenoidal plane-wave mode: u = (sin(y), 0, 0)
    std::vector<GridField> shear;
    shear.push_back(sample_function(3, n, [](const double* x) { return cplx{std::sin(x[1]), 0}; }));
    shear.push_back(GridField::make(3, n));
    shear.push_back(GridField::make(3, n));
    GridField div_shear = divergence(shear);
    CHECK(l2_norm(div_shear) < 1e-12);
    // both sides vanish identically for a planar shear
    std::vector<std::vector<GridField>> grad(3);
    NsIdentity ids = ns_identity_check(shear);
    CHECK(ids.relative_error < 1e-10);
    CHECK(l2_norm(ids.pressure) < 1e-10);

    CHECK_THROWS_AS(ns_identity_check(w), GridError);  // not solenoidal
}
