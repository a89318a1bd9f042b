#include "cclab/spectral/analytic.hpp"

#include <cmath>

namespace cclab::spectral {

// ---------------- series arithmetic ----------------

Series Series::constant(double v) {
    Series s;
    s.c[0] = v;
    return s;
}

Series Series::variable(double v) {
    Series s;
    s.c[0] = v;
    s.c[1] = 1.0;
    return s;
}

Series Series::operator+(const Series& o) const {
    Series r;
    for (int i = 0; i <= kJetOrder; ++i) r.c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] + o.c[static_cast<size_t>(i)];
    return r;
}

Series Series::operator-(const Series& o) const {
    Series r;
    for (int i = 0; i <= kJetOrder; ++i) r.c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] - o.c[static_cast<size_t>(i)];
    return r;
}

Series Series::operator*(const Series& o) const {
    Series r;
    for (int i = 0; i <= kJetOrder; ++i)
        for (int j = 0; i + j <= kJetOrder; ++j)
            r.c[static_cast<size_t>(i + j)] += c[static_cast<size_t>(i)] * o.c[static_cast<size_t>(j)];
    return r;
}

Series Series::scaled(double s) const {
    Series r = *this;
    for (auto& v : r.c) v *= s;
    return r;
}

Series Series::reciprocal() const {
    Series r;
    double a0 = c[0];
    r.c[0] = 1.0 / a0;
    for (int k = 1; k <= kJetOrder; ++k) {
        double s = 0;
        for (int j = 1; j <= k; ++j) s += c[static_cast<size_t>(j)] * r.c[static_cast<size_t>(k - j)];
        r.c[static_cast<size_t>(k)] = -s / a0;
    }
    return r;
}

Series Series::sqrt_series() const {
    Series r;
    double a0 = c[0];
    r.c[0] = std::sqrt(a0);
    for (int k = 1; k <= kJetOrder; ++k) {
        double s = 0;
        for (int j = 1; j < k; ++j) s += r.c[static_cast<size_t>(j)] * r.c[static_cast<size_t>(k - j)];
        r.c[static_cast<size_t>(k)] = (c[static_cast<size_t>(k)] - s) / (2.0 * r.c[0]);
    }
    return r;
}

Series Series::exp_series() const {
    // g' = f' g with g_0 = exp(f_0)
    Series r;
    double g0 = std::exp(c[0]);
    if (g0 == 0.0) return r;  // flat zero, avoids inf*0 downstream
    r.c[0] = g0;
    for (int k = 1; k <= kJetOrder; ++k) {
        double s = 0;
        for (int j = 1; j <= k; ++j)
            s += j * c[static_cast<size_t>(j)] * r.c[static_cast<size_t>(k - j)];
        r.c[static_cast<size_t>(k)] = s / k;
    }
    return r;
}

Series Series::compose(const Series& inner_offset) const {
    // Horner in the inner series, whose constant term must be zero
    Series r = constant(c[static_cast<size_t>(kJetOrder)]);
    for (int k = kJetOrder - 1; k >= 0; --k)
        r = r * inner_offset + constant(c[static_cast<size_t>(k)]);
    return r;
}

double Series::deriv(int k) const {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[static_cast<size_t>(k)] * f;
}

Series bump_kernel_jets(double t0) {
    if (t0 < 1.0 / 700.0) return Series{};  // exp(-1/t) underflows
    Series t = Series::variable(t0);
    return t.reciprocal().scaled(-1.0).exp_series();
}

Series smoothstep_jets(double t0) {
    if (t0 <= 1e-9) return Series::constant(1.0);
    if (t0 >= 1.0 - 1e-9) return Series{};
    // S = A/(A+B), A = e(1-t), B = e(t)
    Series a = bump_kernel_jets(1.0 - t0);
    for (int k = 1; k <= kJetOrder; k += 2) a.c[static_cast<size_t>(k)] = -a.c[static_cast<size_t>(k)];
    Series b = bump_kernel_jets(t0);
    return a * (a + b).reciprocal();
}

// ---------------- radial bump ----------------

std::array<double, 5> RadialBump::radial_jets(double q) const {
    std::array<double, 5> out{};
    double qp = r_plateau * r_plateau, qs = r_support * r_support;
    if (q <= qp) {
        out[0] = amplitude;
        return out;
    }
    if (q >= qs) return out;
    // H(q) = S((sqrt(q) - r_plateau) / w)
    double w = r_support - r_plateau;
    Series root = Series::variable(q).sqrt_series();
    double t0 = (root.c[0] - r_plateau) / w;
    Series inner = root.scaled(1.0 / w);
    inner.c[0] = 0.0;  // offset series of t around t0
    Series s = smoothstep_jets(t0).compose(inner);
    for (int k = 0; k <= 4; ++k) out[static_cast<size_t>(k)] = amplitude * s.deriv(k);
    return out;
}

double RadialBump::value(const double* x) const {
    double q = 0;
    for (int d = 0; d < dim; ++d) {
        double t = x[d] - center[static_cast<size_t>(d)];
        q += t * t;
    }
    return radial_jets(q)[0];
}

// expansion of d^alpha H(|x-c|^2) in terms H^(k)(q) * monomials of (x-c)
namespace {
struct ChainTerm {
    int k;
    MultiIndex mono;
    double coeff;
};

std::vector<ChainTerm> chain_terms(int dim, const MultiIndex& alpha) {
    std::vector<ChainTerm> cur{{0, MultiIndex(dim), 1.0}};
    for (int ax = 0; ax < dim; ++ax) {
        for (int rep = 0; rep < alpha[ax]; ++rep) {
            std::vector<ChainTerm> next;
            for (const auto& t : cur) {
                // d/dx_ax [H^(k)(q) * m] = H^(k+1) * 2 (x-c)_ax * m + H^(k) * dm/dx_ax
                ChainTerm up{t.k + 1, add(t.mono, MultiIndex::unit(dim, ax)), 2.0 * t.coeff};
                next.push_back(up);
                if (t.mono[ax] > 0) {
                    ChainTerm down{t.k, sub(t.mono, MultiIndex::unit(dim, ax)),
                                   t.coeff * t.mono[ax]};
                    next.push_back(down);
                }
            }
            // merge duplicates
            std::vector<ChainTerm> merged;
            for (const auto& t : next) {
                bool found = false;
                for (auto& m : merged)
                    if (m.k == t.k && m.mono == t.mono) {
                        m.coeff += t.coeff;
                        found = true;
                        break;
                    }
                if (!found) merged.push_back(t);
            }
            cur = std::move(merged);
        }
    }
    return cur;
}
}  // namespace

double RadialBump::deriv(const MultiIndex& alpha, const double* x) const {
    if (alpha.order() == 0) return value(x);
    if (alpha.order() > 4) throw GridError("radial bump derivatives supported to order 4");
    double q = 0;
    double dx[3] = {0, 0, 0};
    for (int d = 0; d < dim; ++d) {
        dx[d] = x[d] - center[static_cast<size_t>(d)];
        q += dx[d] * dx[d];
    }
    auto H = radial_jets(q);
    double out = 0;
    for (const auto& t : chain_terms(dim, alpha)) {
        double mono = 1;
        for (int d = 0; d < dim; ++d)
            for (int e = 0; e < t.mono[d]; ++e) mono *= dx[d];
        out += t.coeff * H[static_cast<size_t>(t.k)] * mono;
    }
    return out;
}

// ---------------- trig / poly parts ----------------

cplx TrigPoly::value(const double* x) const {
    cplx s = 0;
    for (const auto& m : modes) {
        double phase = 0;
        for (int d = 0; d < dim; ++d) phase += m.k[static_cast<size_t>(d)] * x[d];
        s += m.c * cplx{std::cos(phase), std::sin(phase)};
    }
    return s;
}

cplx TrigPoly::deriv(const MultiIndex& alpha, const double* x) const {
    cplx s = 0;
    for (const auto& m : modes) {
        cplx f = m.c;
        for (int d = 0; d < dim; ++d)
            for (int e = 0; e < alpha[d]; ++e) f *= cplx{0.0, static_cast<double>(m.k[static_cast<size_t>(d)])};
        double phase = 0;
        for (int d = 0; d < dim; ++d) phase += m.k[static_cast<size_t>(d)] * x[d];
        s += f * cplx{std::cos(phase), std::sin(phase)};
    }
    return s;
}

double PolyPart::value(const double* x) const {
    double s = 0;
    for (const auto& [m, c] : coeffs) {
        double t = c;
        for (int d = 0; d < dim; ++d)
            for (int e = 0; e < m[d]; ++e) t *= x[d];
        s += t;
    }
    return s;
}

double PolyPart::deriv(const MultiIndex& alpha, const double* x) const {
    double s = 0;
    for (const auto& [m, c] : coeffs) {
        if (!leq(alpha, m)) continue;
        double t = c;
        for (int d = 0; d < dim; ++d)
            for (int e = 0; e < alpha[d]; ++e) t *= m[d] - e;
        MultiIndex rest = sub(m, alpha);
        for (int d = 0; d < dim; ++d)
            for (int e = 0; e < rest[d]; ++e) t *= x[d];
        s += t;
    }
    return s;
}

// ---------------- samplers ----------------

cplx JetSampler::value(const double* x) const { return jet(MultiIndex(dim()), x); }

void JetSampler::sample_batch(const GridGeom& geom, const std::vector<MultiIndex>& alphas,
                              std::vector<std::vector<cplx>>& out) const {
    out.assign(alphas.size(), std::vector<cplx>(geom.size()));
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < static_cast<long long>(geom.size()); ++idx) {
        int iv[3];
        geom.unflatten(static_cast<size_t>(idx), iv);
        double x[3] = {0, 0, 0};
        for (int d = 0; d < geom.dim; ++d) x[d] = geom.coord(iv[d]);
        for (size_t a = 0; a < alphas.size(); ++a)
            out[a][static_cast<size_t>(idx)] = jet(alphas[a], x);
    }
}

GridField sample_field(const JetSampler& s, int n, const std::string& symbol) {
    GridField f = sample_function(s.dim(), n, [&](const double* x) { return s.value(x); }, symbol);
    return f;
}

cplx AnalyticScalar::jet(const MultiIndex& alpha, const double* x) const {
    // Leibniz over the (up to three) parts
    cplx total = 0;
    auto betas = enumerate(dimension, alpha.order(), EnumMode::upto);
    for (const auto& beta : betas) {
        if (!leq(beta, alpha)) continue;
        double pv;
        if (poly)
            pv = poly->deriv(beta, x);
        else if (beta.order() == 0)
            pv = 1.0;
        else
            continue;
        MultiIndex rest1 = sub(alpha, beta);
        for (const auto& gamma : enumerate(dimension, rest1.order(), EnumMode::upto)) {
            if (!leq(gamma, rest1)) continue;
            cplx tv;
            if (trig)
                tv = trig->deriv(gamma, x);
            else if (gamma.order() == 0)
                tv = 1.0;
            else
                continue;
            MultiIndex rest2 = sub(rest1, gamma);
            double bv;
            if (bump)
                bv = bump->deriv(rest2, x);
            else if (rest2.order() == 0)
                bv = 1.0;
            else
                continue;
            double weight = static_cast<double>(binomial(alpha, beta)) *
                            static_cast<double>(binomial(rest1, gamma));
            total += weight * pv * tv * bv;
        }
    }
    return scale * total;
}

void AnalyticScalar::sample_batch(const GridGeom& geom, const std::vector<MultiIndex>& alphas,
                                  std::vector<std::vector<cplx>>& out) const {
    out.assign(alphas.size(), std::vector<cplx>(geom.size()));

    // Leibniz splits per alpha, with shared tables for the expensive parts:
    // chain terms per distinct bump index and (i k)^gamma factors per mode.
    struct Split {
        MultiIndex beta;
        int gamma_id;
        int rest_id;
        double weight;
    };
    std::vector<MultiIndex> gammas, rests;
    auto intern = [](std::vector<MultiIndex>& pool, const MultiIndex& m) {
        for (size_t i = 0; i < pool.size(); ++i)
            if (pool[i] == m) return static_cast<int>(i);
        pool.push_back(m);
        return static_cast<int>(pool.size() - 1);
    };
    std::vector<std::vector<Split>> splits(alphas.size());
    for (size_t a = 0; a < alphas.size(); ++a) {
        const MultiIndex& alpha = alphas[a];
        for (const auto& beta : enumerate(geom.dim, alpha.order(), EnumMode::upto)) {
            if (!leq(beta, alpha)) continue;
            if (!poly && beta.order() > 0) continue;
            MultiIndex rest1 = sub(alpha, beta);
            for (const auto& gamma : enumerate(geom.dim, rest1.order(), EnumMode::upto)) {
                if (!leq(gamma, rest1)) continue;
                if (!trig && gamma.order() > 0) continue;
                MultiIndex rest2 = sub(rest1, gamma);
                if (!bump && rest2.order() > 0) continue;
                double w = static_cast<double>(binomial(alpha, beta)) *
                           static_cast<double>(binomial(rest1, gamma));
                splits[a].push_back({beta, intern(gammas, gamma), intern(rests, rest2), w});
            }
        }
    }

    size_t n_modes = trig ? trig->modes.size() : 0;
    // factor[g * n_modes + m] = c_m (i k_m)^{gamma_g}
    std::vector<cplx> mode_factor(gammas.size() * n_modes);
    for (size_t g = 0; g < gammas.size(); ++g)
        for (size_t m = 0; m < n_modes; ++m) {
            cplx f = trig->modes[m].c;
            for (int d = 0; d < geom.dim; ++d)
                for (int e = 0; e < gammas[g][d]; ++e)
                    f *= cplx{0.0, static_cast<double>(trig->modes[m].k[static_cast<size_t>(d)])};
            mode_factor[g * n_modes + m] = f;
        }
    std::vector<std::vector<ChainTerm>> rest_chains(rests.size());
    for (size_t r = 0; r < rests.size(); ++r)
        if (rests[r].order() > 0) rest_chains[r] = chain_terms(geom.dim, rests[r]);

#pragma omp parallel
    {
        std::vector<cplx> phases(n_modes);
        std::vector<cplx> trig_vals(gammas.size());
        std::vector<double> bump_vals(rests.size());
#pragma omp for schedule(static)
        for (long long idx = 0; idx < static_cast<long long>(geom.size()); ++idx) {
            int iv[3];
            geom.unflatten(static_cast<size_t>(idx), iv);
            double x[3] = {0, 0, 0};
            for (int d = 0; d < geom.dim; ++d) x[d] = geom.coord(iv[d]);

            for (size_t m = 0; m < n_modes; ++m) {
                double phase = 0;
                for (int d = 0; d < geom.dim; ++d)
                    phase += trig->modes[m].k[static_cast<size_t>(d)] * x[d];
                phases[m] = cplx{std::cos(phase), std::sin(phase)};
            }
            for (size_t g = 0; g < gammas.size(); ++g) {
                if (!trig) {
                    trig_vals[g] = gammas[g].order() == 0 ? cplx{1, 0} : cplx{0, 0};
                    continue;
                }
                cplx s = 0;
                for (size_t m = 0; m < n_modes; ++m) s += mode_factor[g * n_modes + m] * phases[m];
                trig_vals[g] = s;
            }

            std::array<double, 5> H{};
            double dxv[3] = {0, 0, 0};
            if (bump) {
                double q = 0;
                for (int d = 0; d < geom.dim; ++d) {
                    dxv[d] = x[d] - bump->center[static_cast<size_t>(d)];
                    q += dxv[d] * dxv[d];
                }
                H = bump->radial_jets(q);
            }
            for (size_t r = 0; r < rests.size(); ++r) {
                if (!bump) {
                    bump_vals[r] = rests[r].order() == 0 ? 1.0 : 0.0;
                    continue;
                }
                if (rests[r].order() == 0) {
                    bump_vals[r] = H[0];
                    continue;
                }
                double v = 0;
                for (const auto& t : rest_chains[r]) {
                    double mono = 1;
                    for (int d = 0; d < geom.dim; ++d)
                        for (int e = 0; e < t.mono[d]; ++e) mono *= dxv[d];
                    v += t.coeff * H[static_cast<size_t>(t.k)] * mono;
                }
                bump_vals[r] = v;
            }

            for (size_t a = 0; a < alphas.size(); ++a) {
                cplx total = 0;
                for (const auto& sp : splits[a]) {
                    double pv = poly ? poly->deriv(sp.beta, x) : 1.0;
                    total += sp.weight * pv * trig_vals[static_cast<size_t>(sp.gamma_id)] *
                             bump_vals[static_cast<size_t>(sp.rest_id)];
                }
                out[a][static_cast<size_t>(idx)] = scale * total;
            }
        }
    }
}

cplx LinearImage::jet(const MultiIndex& alpha, const double* x) const {
    cplx s = 0;
    for (const auto& t : terms) s += t.coeff * t.base->jet(add(alpha, t.shift), x);
    return s;
}

void LinearImage::sample_batch(const GridGeom& geom, const std::vector<MultiIndex>& alphas,
                               std::vector<std::vector<cplx>>& out) const {
    out.assign(alphas.size(), std::vector<cplx>(geom.size()));
    for (const auto& t : terms) {
        std::vector<MultiIndex> shifted;
        shifted.reserve(alphas.size());
        for (const auto& a : alphas) shifted.push_back(add(a, t.shift));
        std::vector<std::vector<cplx>> part;
        t.base->sample_batch(geom, shifted, part);
        for (size_t a = 0; a < alphas.size(); ++a)
            for (size_t i = 0; i < out[a].size(); ++i) out[a][i] += t.coeff * part[a][i];
    }
}

cplx SumSampler::jet(const MultiIndex& alpha, const double* x) const {
    cplx s = 0;
    for (const auto& [w, p] : parts) s += w * p->jet(alpha, x);
    return s;
}

void SumSampler::sample_batch(const GridGeom& geom, const std::vector<MultiIndex>& alphas,
                              std::vector<std::vector<cplx>>& out) const {
    out.assign(alphas.size(), std::vector<cplx>(geom.size()));
    for (const auto& [w, p] : parts) {
        std::vector<std::vector<cplx>> part;
        p->sample_batch(geom, alphas, part);
        for (size_t a = 0; a < alphas.size(); ++a)
            for (size_t i = 0; i < out[a].size(); ++i) out[a][i] += w * part[a][i];
    }
}

}  // namespace cclab::spectral
