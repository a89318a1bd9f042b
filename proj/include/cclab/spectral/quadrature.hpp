#pragma once

#include <map>

#include "cclab/criteria.hpp"
#include "cclab/spectral/analytic.hpp"
#include "cclab/spectral/multipliers.hpp"

namespace cclab::spectral {

/// A field bound to one (symbol, component): grid samples always, exact jet
/// sampler when the field was built analytically. Derivatives come from the
/// sampler when present and from spectral differentiation otherwise.
struct FieldSource {
    std::shared_ptr<const JetSampler> analytic;
    GridField grid;
};

using FieldKey = std::pair<std::string, int>;
using FieldMap = std::map<FieldKey, FieldSource>;

struct QuadratureResult {
    cplx integral{0, 0};
    double scale = 0;  // integral of the sum of absolute term values
    double rel() const { return std::abs(integral) / (scale + 1e-300); }
};

// trapezoid rule of the body evaluated pointwise from per-jet sample arrays
QuadratureResult quadrature_integral(const DiffPolynomial& body, const FieldMap& fields, int n);
QuadratureResult quadrature_integral(const OperatorSpec& spec, const FieldMap& fields, int n);

// the pointwise values of the body on the grid (experiment support)
GridField body_values(const DiffPolynomial& body, const FieldMap& fields, int n);

// ---- seeded field construction ----

struct BumpSpec {
    int dim = 2;
    std::array<double, 3> center{0, 0, 0};
    double r_plateau = 0.65;
    double r_support = 1.5;
    int band = 2;       // trig content |k|_inf <= band
    int mode_count = 5;
    unsigned seed = 1;
    double amplitude = 1.0;
};

// smooth compactly supported scalar with band-limited random content
std::shared_ptr<AnalyticScalar> random_bump_scalar(const BumpSpec& spec);
// plain plateau cutoff without random content
std::shared_ptr<AnalyticScalar> plateau_bump(int dim, double r_plateau, double r_support,
                                             double amplitude = 1.0);
// mean-free band-limited trigonometric field (no cutoff); multiplier
// identities and the coarse-grid oracle are exact on these
std::shared_ptr<AnalyticScalar> random_trig_scalar(int dim, unsigned seed, int band = 3,
                                                   int mode_count = 6);
GridField random_trig_field(int dim, int n, unsigned seed, int band = 3, int mode_count = 6,
                            const std::string& symbol = "");

enum class FieldStyle {
    compact_bump,  // plateau bump times trig content, supported inside the box
    band_limited,  // pure trig content, exact under the trapezoid rule
};
FieldStyle default_field_style(int dim);  // compact at 256^2, band-limited at 64^3

// fields for every (symbol, component); div0 and curl0 slots realized through
// their potentials so the constraints hold exactly. Grid samples can be
// skipped when only the analytic jets are consumed.
FieldMap sample_spec_fields(const OperatorSpec& spec, int n, unsigned seed,
                            FieldStyle style = FieldStyle::compact_bump,
                            bool with_grids = true);

// ---- numeric cross-check against the symbolic verdict ----

struct NumericCrossCheck {
    int trials = 0;
    double max_rel_integral = 0;
    double witness_rel_integral = 0;
    bool agrees = true;
};

NumericCrossCheck numeric_cross_check(const OperatorSpec& spec, const Verdict& verdict, int n,
                                      int trials, unsigned seed, double tol);

// witness-guided sample family; returns the best |integral|/scale over the family
double witness_rel_integral(const OperatorSpec& spec, const Witness& w, int n);

int default_grid(int dim);  // 256 for n<=2, 64 for n=3

}  // namespace cclab::spectral
