#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cclab/multiindex.hpp"
#include "cclab/rational.hpp"

namespace cclab {

struct SymbolClash : std::runtime_error {
    explicit SymbolClash(const std::string& what) : std::runtime_error(what) {}
};

struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

struct SubstitutionError : std::runtime_error {
    explicit SubstitutionError(const std::string& what) : std::runtime_error(what) {}
};

/// Formal jet variable: the derivative d^index of component `component`
/// of function symbol `symbol`. Components are 1-based.
struct JetVar {
    std::string symbol;
    int component = 1;
    MultiIndex index;

    bool operator==(const JetVar& o) const {
        return symbol == o.symbol && component == o.component && index == o.index;
    }
    std::string str() const;  // e.g. u[2].d[1,0]
};

// total order (symbol, component, graded-lex index); fixes canonical forms
bool jetvar_less(const JetVar& a, const JetVar& b);

struct JetVarLess {
    bool operator()(const JetVar& a, const JetVar& b) const { return jetvar_less(a, b); }
};

using JetAssignment = std::map<JetVar, Rational, JetVarLess>;

/// One term: rational coefficient times a multiset of jet variables.
/// Repeated factors are stored exponent-compressed.
struct DiffMonomial {
    Rational coeff;
    std::vector<std::pair<JetVar, int>> factors;  // sorted, exponents >= 1

    int degree() const;            // number of factors with multiplicity
    int derivative_order() const;  // sum of factor orders with multiplicity
    bool same_factors(const DiffMonomial& o) const { return factors == o.factors; }
};

bool factors_less(const DiffMonomial& a, const DiffMonomial& b);

struct RebalanceResult;

/// Polynomial in jet variables with exact rational coefficients, kept in a
/// canonical sorted form; equality of canonical forms is identity.
class DiffPolynomial {
  public:
    DiffPolynomial() = default;
    explicit DiffPolynomial(int dim) : dim_(dim) {}

    static DiffPolynomial zero(int dim) { return DiffPolynomial(dim); }
    static DiffPolynomial constant(int dim, const Rational& c);
    static DiffPolynomial var(int dim, const JetVar& v, const Rational& c = Rational(1));

    int dim() const { return dim_; }
    bool is_zero() const { return monomials_.empty(); }
    const std::vector<DiffMonomial>& monomials() const { return monomials_; }
    const std::map<std::string, int>& arities() const { return arities_; }

    void declare_symbol(const std::string& name, int arity);

    // ring operations; symbol tables merge, clashing arity throws
    friend DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b);
    friend DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b);
    friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b);
    DiffPolynomial operator-() const;
    DiffPolynomial scaled(const Rational& c) const;
    DiffPolynomial pow(int e) const;

    bool operator==(const DiffPolynomial& o) const;
    bool operator!=(const DiffPolynomial& o) const { return !(*this == o); }

    // total derivative D_axis (0-based axis), product rule through every factor
    DiffPolynomial total_derivative(int axis) const;
    DiffPolynomial total_derivative(const MultiIndex& alpha) const;

    // formal partial derivative with respect to one jet variable
    DiffPolynomial partial(const JetVar& v) const;

    // E_{symbol,component} = sum_alpha (-1)^{|alpha|} D^alpha d/d u_{i,alpha}
    DiffPolynomial euler_operator(const std::string& symbol, int component) const;

    // replace every jet of `symbol` by the matching total derivative of the
    // replacement expressions (one per component); replacements must be
    // linear in their own jet variables
    DiffPolynomial substitute(const std::string& symbol,
                              const std::vector<DiffPolynomial>& replacement) const;

    Rational evaluate_at_jet(const JetAssignment& a) const;

    std::map<int, DiffPolynomial> grade_by_order() const;

    struct Homogeneity {
        int degree = 0;
        bool is_homogeneous = true;
    };
    Homogeneity homogeneity() const;

    // Move one derivative on `axis` from the second factor of monomial
    // `term` onto the first, recording the divergence remainder.
    RebalanceResult rebalance(int term, int axis) const;

    Rational constant_term() const;
    std::set<JetVar, JetVarLess> jet_variables() const;
    std::set<std::pair<std::string, int>> symbol_components() const;  // occurring in body

    std::string str() const;  // canonical rendering

    void add_term(const Rational& c, std::vector<std::pair<JetVar, int>> factors);

  private:
    void merge_symbols(const DiffPolynomial& o);
    void normalize();

    int dim_ = 0;
    std::map<std::string, int> arities_;
    std::vector<DiffMonomial> monomials_;
};

struct RebalanceResult {
    DiffPolynomial replacement;
    std::vector<std::pair<int, DiffPolynomial>> divergence;  // (axis, remainder)
};

}  // namespace cclab
