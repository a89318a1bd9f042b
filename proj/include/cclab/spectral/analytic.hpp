#pragma once

#include <map>
#include <memory>
#include <optional>

#include "cclab/spectral/grid.hpp"

namespace cclab::spectral {

inline constexpr int kJetOrder = 6;  // univariate truncation order

/// Truncated Taylor coefficients c_0..c_M of a scalar function of one
/// variable; enough series arithmetic to differentiate the bump profile.
struct Series {
    std::array<double, kJetOrder + 1> c{};

    static Series constant(double v);
    static Series variable(double v);  // v + (t - t0)

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series scaled(double s) const;
    Series reciprocal() const;
    Series sqrt_series() const;  // requires c[0] > 0
    Series exp_series() const;
    // outer evaluated along this series; inner constant term must match the
    // outer expansion point implicitly (composition in the offset variable)
    Series compose(const Series& inner_offset) const;

    double deriv(int k) const;  // k! c_k
};

// jets of exp(-1/t) at t0 (identically 0 for t0 <= underflow threshold)
Series bump_kernel_jets(double t0);
// jets of the plateau profile S: S=1 on t<=0, S=0 on t>=1, smooth transition
Series smoothstep_jets(double t0);

/// Radial plateau bump: 1 on |x-c| <= r_plateau, 0 outside |x-c| >= r_support,
/// built from the standard exp(-1/t) transition. Exact derivatives up to
/// order 4 through the chain rule in q = |x-c|^2.
struct RadialBump {
    int dim = 2;
    std::array<double, 3> center{0, 0, 0};
    double r_plateau = 0.5;
    double r_support = 1.5;
    double amplitude = 1.0;

    double value(const double* x) const;
    double deriv(const MultiIndex& alpha, const double* x) const;
    // H(q)=value as a function of q=|x-c|^2; derivatives d^k H / dq^k
    std::array<double, 5> radial_jets(double q) const;
};

/// Finite trigonometric polynomial sum c_k e^{i k.x}.
struct TrigPoly {
    int dim = 2;
    struct Mode {
        std::array<int, 3> k{0, 0, 0};
        cplx c;
    };
    std::vector<Mode> modes;

    cplx value(const double* x) const;
    cplx deriv(const MultiIndex& alpha, const double* x) const;
};

/// Polynomial in the centered coordinates.
struct PolyPart {
    int dim = 2;
    std::map<MultiIndex, double, MultiIndexLess> coeffs;  // x^m

    double value(const double* x) const;
    double deriv(const MultiIndex& alpha, const double* x) const;
};

/// Pointwise sampler with exact derivative access.
struct JetSampler {
    virtual ~JetSampler() = default;
    virtual int dim() const = 0;
    virtual cplx jet(const MultiIndex& alpha, const double* x) const = 0;
    cplx value(const double* x) const;

    // derivative samples on a grid for a batch of indices; default loops
    // over jet(), concrete samplers share per-site work
    virtual void sample_batch(const GridGeom& geom, const std::vector<MultiIndex>& alphas,
                              std::vector<std::vector<cplx>>& out) const;
};

GridField sample_field(const JetSampler& s, int n, const std::string& symbol = "");

/// Product of up to three parts (polynomial, trig content, bump cutoff);
/// derivatives by the Leibniz rule across parts.
struct AnalyticScalar final : JetSampler {
    int dimension = 2;
    std::optional<PolyPart> poly;
    std::optional<TrigPoly> trig;
    std::optional<RadialBump> bump;
    double scale = 1.0;

    int dim() const override { return dimension; }
    cplx jet(const MultiIndex& alpha, const double* x) const override;
    void sample_batch(const GridGeom& geom, const std::vector<MultiIndex>& alphas,
                      std::vector<std::vector<cplx>>& out) const override;
};

/// Linear combination of shifted derivatives of base samplers; covers
/// gradients and the first-order images that realize constrained fields.
struct LinearImage final : JetSampler {
    struct Term {
        double coeff;
        MultiIndex shift;
        std::shared_ptr<const JetSampler> base;
    };
    int dimension = 2;
    std::vector<Term> terms;

    int dim() const override { return dimension; }
    cplx jet(const MultiIndex& alpha, const double* x) const override;
    void sample_batch(const GridGeom& geom, const std::vector<MultiIndex>& alphas,
                      std::vector<std::vector<cplx>>& out) const override;
};

/// Sum of samplers with scalar weights (witness realizations plus bumps).
struct SumSampler final : JetSampler {
    int dimension = 2;
    std::vector<std::pair<double, std::shared_ptr<const JetSampler>>> parts;

    int dim() const override { return dimension; }
    cplx jet(const MultiIndex& alpha, const double* x) const override;
    void sample_batch(const GridGeom& geom, const std::vector<MultiIndex>& alphas,
                      std::vector<std::vector<cplx>>& out) const override;
};

}  // namespace cclab::spectral
