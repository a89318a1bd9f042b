#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cclab/coefficients.hpp"

namespace cclab {

struct UnsupportedConstraint : std::runtime_error {
    explicit UnsupportedConstraint(const std::string& what) : std::runtime_error(what) {}
};

struct CriterionPrecondition : std::runtime_error {
    explicit CriterionPrecondition(const std::string& what) : std::runtime_error(what) {}
};

enum class VerdictMethod {
    euler_oracle,
    coefficient_criterion,
    homogeneous_criterion,
    condition_44,
    potential_substitution_euler,
    parity_rule,
};

std::string verdict_method_str(VerdictMethod m);

/// Constructive refutation of a zero-integral claim: a jet point where some
/// Euler residual is nonzero, plus the Taylor realization of that jet.
struct Witness {
    std::string symbol;  // the component the residual was taken against
    int component = 1;
    DiffPolynomial residual;
    JetAssignment assignment;
    Rational value;
    // Taylor coefficients value/alpha! per (symbol, component); realized as a
    // polynomial, to be multiplied by a cutoff equal to 1 near the origin.
    std::map<std::pair<std::string, int>, std::map<MultiIndex, Rational, MultiIndexLess>>
        realization;
    std::string realization_text;
};

struct Verdict {
    bool value = false;
    VerdictMethod method = VerdictMethod::euler_oracle;
    std::optional<Witness> witness;
    std::map<std::string, Rational> details;  // nonzero criterion sums, keyed per condition
};

// ---- potential substitution ----

struct PotentialMap {
    std::string original;
    Constraint constraint = Constraint::none;
    std::string potential;  // fresh scalar (curl0) or antisymmetric-component (div0) symbol
};

struct SubstitutedSpec {
    OperatorSpec spec;  // unconstrained, over potential symbols
    std::vector<PotentialMap> maps;
};

// curl0 slot -> gradient of a fresh scalar; div0 slot -> first-order image of
// a fresh field with n(n-1)/2 components.
SubstitutedSpec potential_substitute(const OperatorSpec& spec);

// 0-based linear position of the (i,j) pair, 1 <= i < j <= n
int pair_position(int n, int i, int j);
// the replacement expressions themselves (one per component of the field)
std::vector<DiffPolynomial> divergence_potential_expr(int dim, const std::string& phi);
std::vector<DiffPolynomial> gradient_potential_expr(int dim, const std::string& psi);

// ---- verdicts ----

// Euler residuals (symbol, component, residual) of a raw body, nonzero only.
std::vector<std::tuple<std::string, int, DiffPolynomial>> euler_residuals(
    const DiffPolynomial& body);

Verdict zero_integral(const OperatorSpec& spec);
Verdict bilinear_criterion(const CoefficientTable& table);
Verdict homogeneous_criterion(const CoefficientTable& table);
Verdict condition_44(const CoefficientTable& table);
Verdict null_lagrangian(const OperatorSpec& spec);

std::vector<std::pair<int, OperatorSpec>> scaling_decompose(const OperatorSpec& spec);

struct H1Verdict {
    std::optional<bool> value;  // empty when no covered theorem applies
    std::string theorem;        // bilinear | multilinear_slot_homogeneous |
                                // homogeneous_polynomial | none
};

H1Verdict h1_verdict(const OperatorSpec& spec);

enum class ParityShape { difference, sum, product };
std::string parity_shape_str(ParityShape s);

struct ParityResult {
    ParityShape shape;
    Verdict verdict;
};

// Detects P(u)v - P(v)u, P(u)v + P(v)u or P(uv) for scalar u, v and applies
// the corresponding order-parity / constant-term rule.
std::optional<ParityResult> parity_classify(const OperatorSpec& spec);

// all jet factors of the body share one derivative order; empty body or
// mixed orders -> nullopt
std::optional<int> uniform_factor_order(const DiffPolynomial& body);

// deterministic nonzero point of a nonzero polynomial (jet assignment search)
Witness make_witness(const std::string& symbol, int component, const DiffPolynomial& residual);

}  // namespace cclab
