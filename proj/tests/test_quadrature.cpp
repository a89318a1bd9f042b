#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cclab/spectral/quadrature.hpp"

using namespace cclab;
using namespace cclab::spectral;

namespace {
OperatorSpec parse(const std::string& text) { return parse_operator(text); }
}

TEST_CASE("the oracle vanishes on the planar antisymmetric form") {
    OperatorSpec jac = parse(
        "operator \"j\" { dims 2; functions u: R^2;"
        " expr = dx(u[1])*dy(u[2]) - dy(u[1])*dx(u[2]); }");
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        FieldMap fields = sample_spec_fields(jac, 256, seed);
        QuadratureResult q = quadrature_integral(jac, fields, 256);
        CHECK(q.rel() <= 1e-8);
    }
}

TEST_CASE("exact total derivatives integrate to zero") {
    // d_x(u v) expanded; the periodic trapezoid rule is exact on
    // band-limited data, compact bumps carry a small spectral tail
    OperatorSpec d = parse(
        "operator \"d\" { dims 2; functions u: R^1, v: R^1; expr = u*dx(v) + dx(u)*v; }");
    FieldMap fields = sample_spec_fields(d, 256, 9, FieldStyle::band_limited);
    QuadratureResult q = quadrature_integral(d, fields, 256);
    CHECK(q.rel() <= 1e-10);
    FieldMap cfields = sample_spec_fields(d, 256, 9, FieldStyle::compact_bump);
    QuadratureResult qc = quadrature_integral(d, cfields, 256);
    CHECK(qc.rel() <= 1e-8);
}

TEST_CASE("witness-guided samples beat the threshold") {
    OperatorSpec bad = parse(
        "operator \"b\" { dims 2; functions u: R^1, v: R^1; expr = dx(u)*dy(v); }");
    Verdict v = zero_integral(bad);
    REQUIRE_FALSE(v.value);
    double rel = witness_rel_integral(bad, *v.witness, 256);
    CHECK(rel >= 1e-3);
}

TEST_CASE("numeric cross-check agrees on both verdict signs") {
    OperatorSpec jac = parse(
        "operator \"j\" { dims 2; functions u: R^2;"
        " expr = dx(u[1])*dy(u[2]) - dy(u[1])*dx(u[2]); }");
    NumericCrossCheck nc = numeric_cross_check(jac, zero_integral(jac), 256, 5, 42, 1e-8);
    CHECK(nc.agrees);
    CHECK(nc.max_rel_integral <= 1e-8);

    OperatorSpec bad = parse(
        "operator \"b\" { dims 2; functions u: R^1, v: R^1; expr = u*dx(v) - dx(u)*v; }");
    NumericCrossCheck nb = numeric_cross_check(bad, zero_integral(bad), 256, 5, 42, 1e-8);
    CHECK(nb.agrees);
    CHECK(nb.witness_rel_integral >= 1e-3);
}

TEST_CASE("constrained fields satisfy their constraints exactly") {
    OperatorSpec eb = parse(
        "operator \"eb\" { dims 2; functions E: R^2 constraint div0, B: R^2 constraint curl0;"
        " expr = E[1]*B[1] + E[2]*B[2]; }");
    // band-limited realizations are spectrally exact
    FieldMap fields = sample_spec_fields(eb, 128, 3, FieldStyle::band_limited);
    std::vector<GridField> e{fields.at({"E", 1}).grid, fields.at({"E", 2}).grid};
    CHECK(l2_norm(divergence(e)) / (l2_norm(e[0]) + l2_norm(e[1]) + 1e-300) < 1e-10);
    GridField curl = spectral_derivative(fields.at({"B", 2}).grid, MultiIndex{1, 0}) -
                     spectral_derivative(fields.at({"B", 1}).grid, MultiIndex{0, 1});
    CHECK(l2_norm(curl) / (l2_norm(fields.at({"B", 1}).grid) + 1e-300) < 1e-10);
    QuadratureResult q = quadrature_integral(eb, fields, 128);
    CHECK(q.rel() <= 1e-10);

    // the compactly supported realization passes the oracle gate at 256^2
    FieldMap cfields = sample_spec_fields(eb, 256, 3, FieldStyle::compact_bump);
    QuadratureResult qc = quadrature_integral(eb, cfields, 256);
    CHECK(qc.rel() <= 1e-8);
}

TEST_CASE("analytic jets agree with spectral differentiation on band-limited fields") {
    auto s = random_trig_scalar(2, 21, 4, 6);
    GridField f = sample_field(*s, 256, "f");
    for (auto alpha : {MultiIndex{1, 0}, MultiIndex{0, 1}, MultiIndex{1, 1}, MultiIndex{2, 0}}) {
        GridField spectral_d = spectral_derivative(f, alpha);
        GridGeom geom{2, 256};
        std::vector<std::vector<cplx>> exact;
        s->sample_batch(geom, {alpha}, exact);
        double err = 0, scale = 0;
        for (size_t i = 0; i < f.size(); ++i) {
            err = std::max(err, std::abs(spectral_d.a[i] - exact[0][i]));
            scale = std::max(scale, std::abs(exact[0][i]));
        }
        CHECK(err / scale < 1e-11);
    }
}

TEST_CASE("bump jets agree with finite differences") {
    BumpSpec bs;
    bs.dim = 2;
    bs.seed = 21;
    auto s = random_bump_scalar(bs);
    const double h = 1e-3;
    const double pts[][2] = {{0.3, 0.1}, {0.8, -0.5}, {-1.0, 0.6}, {1.2, 0.7}};
    for (const auto& p : pts) {
        double x[3] = {p[0], p[1], 0};
        // d/dx by a centered 5-point stencil on exact values
        auto val = [&](double dx, double dy) {
            double y[3] = {p[0] + dx, p[1] + dy, 0};
            return s->jet(MultiIndex(2), y).real();
        };
        double fd = (-val(2 * h, 0) + 8 * val(h, 0) - 8 * val(-h, 0) + val(-2 * h, 0)) / (12 * h);
        double exact = s->jet(MultiIndex{1, 0}, x).real();
        CHECK(std::abs(fd - exact) < 1e-7 * (1 + std::abs(exact)));
        double fdy = (-val(0, 2 * h) + 8 * val(0, h) - 8 * val(0, -h) + val(0, -2 * h)) / (12 * h);
        double exacty = s->jet(MultiIndex{0, 1}, x).real();
        CHECK(std::abs(fdy - exacty) < 1e-7 * (1 + std::abs(exacty)));
        // second derivative
        double fdxx = (-val(2 * h, 0) + 16 * val(h, 0) - 30 * val(0, 0) + 16 * val(-h, 0) -
                       val(-2 * h, 0)) /
                      (12 * h * h);
        double exactxx = s->jet(MultiIndex{2, 0}, x).real();
        CHECK(std::abs(fdxx - exactxx) < 1e-5 * (1 + std::abs(exactxx)));  // h^2-limited
    }
}

TEST_CASE("missing fields are reported") {
    OperatorSpec jac = parse(
        "operator \"j\" { dims 2; functions u: R^2;"
        " expr = dx(u[1])*dy(u[2]) - dy(u[1])*dx(u[2]); }");
    FieldMap fields;
    CHECK_THROWS_AS(quadrature_integral(jac, fields, 64), GridError);
}

TEST_CASE("plateau bumps are exact on both sides of the transition") {
    BumpSpec bs;
    bs.dim = 2;
    bs.seed = 77;
    bs.r_plateau = 0.6;
    bs.r_support = 1.3;
    auto s = random_bump_scalar(bs);
    REQUIRE(s->bump.has_value());
    const RadialBump& b = *s->bump;
    // plateau value and support are exact, not approximate
    double inner[3] = {0.3, -0.4, 0};
    double outer[3] = {1.2, 0.9, 0};
    CHECK(b.value(inner) == 1.0);
    CHECK(b.value(outer) == 0.0);
    for (auto alpha : {MultiIndex{1, 0}, MultiIndex{2, 0}, MultiIndex{1, 1}}) {
        CHECK(b.deriv(alpha, inner) == 0.0);
        CHECK(b.deriv(alpha, outer) == 0.0);
    }
    // transition values are strictly between
    double mid[3] = {0.9, 0.0, 0};
    CHECK(b.value(mid) > 0.0);
    CHECK(b.value(mid) < 1.0);
}

TEST_CASE("planar-only operators reject other dimensions") {
    GridField f = random_trig_field(3, 16, 1, 2, 3, "f");
    CHECK_THROWS_AS(beurling(f), GridError);
    CHECK_THROWS_AS(wirtinger(f), GridError);
    CHECK_THROWS_AS(kb_apply(f, f), GridError);
}
