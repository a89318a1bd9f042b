#include "cclab/spectral/estimators.hpp"

#include <cmath>

#include "cclab/spectral/analytic.hpp"

namespace cclab::spectral {

H1Estimate h1_norm_estimate(const GridField& h, int j_minus, int j_plus) {
    H1Estimate est;
    double mean = std::abs(integral_complex(h));
    double mass = integral_abs(h) + 1e-300;
    est.mean_flag = mean > 1e-8 * mass;

    GridField spec = fft_forward(h);
    std::vector<double> maximal(h.size(), 0.0);
    for (int j = j_minus; j <= j_plus; ++j) {
        double t = std::ldexp(1.0, j);
        // normalized mollifier at scale t, sampled analytically
        RadialBump eta;
        eta.dim = h.geom.dim;
        eta.r_plateau = 0.0;
        eta.r_support = t;
        eta.amplitude = 1.0;
        GridField etat = sample_function(h.geom.dim, h.geom.n,
                                         [&](const double* x) { return cplx{eta.value(x), 0.0}; });
        double mass_eta = integral_real(etat);
        if (mass_eta <= 0) throw GridError("mollifier under-resolved at the requested scale");
        etat *= 1.0 / mass_eta;
        GridField espec = fft_forward(etat);
        GridField conv_spec = spec;
        for (size_t i = 0; i < conv_spec.a.size(); ++i) conv_spec.a[i] *= espec.a[i];
        GridField conv = fft_inverse(conv_spec);
        double vol = h.geom.cell_volume();
        for (size_t i = 0; i < conv.a.size(); ++i)
            maximal[i] = std::max(maximal[i], std::abs(conv.a[i]) * vol);
    }
    double sum = 0;
    for (double m : maximal) sum += m;
    est.value = h.geom.cell_volume() * sum;
    return est;
}

double bmo_norm_estimate(const GridField& b) {
    const GridGeom& g = b.geom;
    int levels = 0;
    while ((1 << levels) < g.n) ++levels;
    double worst = 0;
    int iv[3];
    for (int level = 0; level <= levels; ++level) {
        int cubes = 1 << level;
        int side = g.n / cubes;
        if (side < 1) break;
        // mean per cube
        std::vector<double> mean(static_cast<size_t>(std::pow(cubes, g.dim)), 0.0);
        std::vector<double> osc(mean.size(), 0.0);
        auto cube_of = [&](const int* idx) {
            size_t c = 0;
            for (int d = 0; d < g.dim; ++d) c = c * static_cast<size_t>(cubes) + static_cast<size_t>(idx[d] / side);
            return c;
        };
        for (size_t i = 0; i < b.size(); ++i) {
            g.unflatten(i, iv);
            mean[cube_of(iv)] += b.a[i].real();
        }
        double cells_per_cube = std::pow(side, g.dim);
        for (auto& m : mean) m /= cells_per_cube;
        for (size_t i = 0; i < b.size(); ++i) {
            g.unflatten(i, iv);
            size_t c = cube_of(iv);
            osc[c] += std::abs(b.a[i].real() - mean[c]);
        }
        for (const auto& o : osc) worst = std::max(worst, o / cells_per_cube);
    }
    return worst;
}

PoincareResult poincare_check(const GridField& f, const Cube& q, int k, double p) {
    const GridGeom& g = f.geom;
    if (q.side_cells < 2 || q.side_cells > g.n) throw GridError("degenerate cube");
    for (int d = 0; d < g.dim; ++d)
        if (q.lo[static_cast<size_t>(d)] < 0 || q.lo[static_cast<size_t>(d)] + q.side_cells > g.n)
            throw GridError("cube leaves the grid");

    PoincareResult out;
    double side_len = q.side_cells * 2.0 * std::numbers::pi / g.n;
    // cube center coordinates
    double x0[3] = {0, 0, 0};
    for (int d = 0; d < g.dim; ++d)
        x0[d] = g.coord(q.lo[static_cast<size_t>(d)]) + 0.5 * side_len;

    auto for_each_cube_site = [&](auto&& fn) {
        int idx[3] = {0, 0, 0};
        long long cells = 1;
        for (int d = 0; d < g.dim; ++d) cells *= q.side_cells;
        for (long long c = 0; c < cells; ++c) {
            long long rem = c;
            for (int d = g.dim - 1; d >= 0; --d) {
                idx[d] = q.lo[static_cast<size_t>(d)] + static_cast<int>(rem % q.side_cells);
                rem /= q.side_cells;
            }
            size_t flat = 0;
            for (int d = 0; d < g.dim; ++d) flat = flat * static_cast<size_t>(g.n) + static_cast<size_t>(idx[d]);
            double x[3] = {0, 0, 0};
            for (int d = 0; d < g.dim; ++d) x[d] = g.coord(idx[d]);
            fn(flat, x);
        }
    };
    double cells = std::pow(q.side_cells, g.dim);

    // derivative averages up to order k-1 and the k-th order energy
    std::map<MultiIndex, double, MultiIndexLess> avg_df;
    for (int ord = 0; ord <= k - 1; ++ord) {
        for (const auto& alpha : enumerate(g.dim, ord, EnumMode::exact)) {
            GridField df = spectral_derivative(f, alpha);
            double s = 0;
            for_each_cube_site([&](size_t flat, const double*) { s += df.a[flat].real(); });
            avg_df[alpha] = s / cells;
        }
    }

    // monomial averages around the center
    std::map<MultiIndex, double, MultiIndexLess> avg_mono;
    for (const auto& m : enumerate(g.dim, k - 1, EnumMode::upto)) {
        double s = 0;
        for_each_cube_site([&](size_t, const double* x) {
            double t = 1;
            for (int d = 0; d < g.dim; ++d)
                for (int e = 0; e < m[d]; ++e) t *= x[d] - x0[d];
            s += t;
        });
        avg_mono[m] = s / cells;
    }

    // back-substitution from the top order down:
    // sum_{beta >= alpha} c_beta beta!/(beta-alpha)! avg (x-x0)^{beta-alpha} = avg d^alpha f
    auto& c = out.polynomial;
    for (int ord = k - 1; ord >= 0; --ord) {
        for (const auto& alpha : enumerate(g.dim, ord, EnumMode::exact)) {
            double rhs = avg_df.at(alpha);
            for (const auto& [beta, cb] : c) {
                if (!leq(alpha, beta)) continue;
                MultiIndex rest = sub(beta, alpha);
                double fall = 1;
                for (int d = 0; d < g.dim; ++d)
                    for (int e = 0; e < alpha[d]; ++e) fall *= rest[d] + alpha[d] - e;
                rhs -= cb * fall * avg_mono.at(rest);
            }
            double fall = 1;
            for (int d = 0; d < g.dim; ++d)
                for (int e = 2; e <= alpha[d]; ++e) fall *= e;
            c[alpha] = rhs / fall;  // alpha! with avg 1 for the constant monomial
        }
    }

    // lhs: (avg |f - P|^q)^{1/q}
    double n_over = static_cast<double>(g.dim);
    double qexp;
    if (k * p < n_over)
        qexp = n_over * p / (n_over - k * p);
    else
        qexp = 2.0 * p;
    double s_lhs = 0;
    for_each_cube_site([&](size_t flat, const double* x) {
        double pv = 0;
        for (const auto& [beta, cb] : c) {
            double t = cb;
            for (int d = 0; d < g.dim; ++d)
                for (int e = 0; e < beta[d]; ++e) t *= x[d] - x0[d];
            pv += t;
        }
        s_lhs += std::pow(std::abs(f.a[flat].real() - pv), qexp);
    });
    out.lhs = std::pow(s_lhs / cells, 1.0 / qexp);

    double s_rhs = 0;
    std::vector<GridField> dks;
    for (const auto& alpha : enumerate(g.dim, k, EnumMode::exact))
        dks.push_back(spectral_derivative(f, alpha));
    for_each_cube_site([&](size_t flat, const double*) {
        double e2 = 0;
        for (const auto& df : dks) e2 += df.a[flat].real() * df.a[flat].real();
        s_rhs += std::pow(std::sqrt(e2), p);
    });
    out.rhs = std::pow(side_len, k) * std::pow(s_rhs / cells, 1.0 / p);
    return out;
}

}  // namespace cclab::spectral
