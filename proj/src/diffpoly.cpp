#include "cclab/diffpoly.hpp"

#include <algorithm>

namespace cclab {

std::string JetVar::str() const {
    std::string s = symbol + "[" + std::to_string(component) + "]";
    if (index.order() > 0) s += ".d" + index.str();
    return s;
}

bool jetvar_less(const JetVar& a, const JetVar& b) {
    if (a.symbol != b.symbol) return a.symbol < b.symbol;
    if (a.component != b.component) return a.component < b.component;
    if (a.index == b.index) return false;
    return graded_lex_less(a.index, b.index);
}

int DiffMonomial::degree() const {
    int d = 0;
    for (const auto& [v, e] : factors) d += e;
    return d;
}

int DiffMonomial::derivative_order() const {
    int d = 0;
    for (const auto& [v, e] : factors) d += e * v.index.order();
    return d;
}

bool factors_less(const DiffMonomial& a, const DiffMonomial& b) {
    size_t n = std::min(a.factors.size(), b.factors.size());
    for (size_t i = 0; i < n; ++i) {
        if (!(a.factors[i].first == b.factors[i].first))
            return jetvar_less(a.factors[i].first, b.factors[i].first);
        if (a.factors[i].second != b.factors[i].second)
            return a.factors[i].second < b.factors[i].second;
    }
    return a.factors.size() < b.factors.size();
}

DiffPolynomial DiffPolynomial::constant(int dim, const Rational& c) {
    DiffPolynomial p(dim);
    p.add_term(c, {});
    p.normalize();
    return p;
}

DiffPolynomial DiffPolynomial::var(int dim, const JetVar& v, const Rational& c) {
    if (v.index.dim() != dim) throw DimensionMismatch("jet variable dimension mismatch");
    DiffPolynomial p(dim);
    p.add_term(c, {{v, 1}});
    p.normalize();
    return p;
}

void DiffPolynomial::declare_symbol(const std::string& name, int arity) {
    auto it = arities_.find(name);
    if (it != arities_.end() && it->second != arity)
        throw SymbolClash("symbol " + name + " redeclared with different arity");
    arities_[name] = arity;
}

void DiffPolynomial::merge_symbols(const DiffPolynomial& o) {
    for (const auto& [name, ar] : o.arities_) declare_symbol(name, ar);
}

void DiffPolynomial::add_term(const Rational& c, std::vector<std::pair<JetVar, int>> factors) {
    if (cclab::is_zero(c)) return;
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return jetvar_less(a.first, b.first); });
    // merge equal jet variables into one exponent
    std::vector<std::pair<JetVar, int>> merged;
    for (auto& f : factors) {
        if (!merged.empty() && merged.back().first == f.first)
            merged.back().second += f.second;
        else
            merged.push_back(f);
    }
    DiffMonomial m;
    m.coeff = c;
    m.factors = std::move(merged);
    monomials_.push_back(std::move(m));
}

void DiffPolynomial::normalize() {
    std::sort(monomials_.begin(), monomials_.end(), factors_less);
    std::vector<DiffMonomial> out;
    for (auto& m : monomials_) {
        if (!out.empty() && out.back().same_factors(m))
            out.back().coeff += m.coeff;
        else
            out.push_back(std::move(m));
    }
    std::erase_if(out, [](const DiffMonomial& m) { return cclab::is_zero(m.coeff); });
    monomials_ = std::move(out);
}

static void check_dims(const DiffPolynomial& a, const DiffPolynomial& b) {
    if (a.dim() != 0 && b.dim() != 0 && a.dim() != b.dim())
        throw DimensionMismatch("polynomial dimension mismatch");
}

DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b) {
    check_dims(a, b);
    DiffPolynomial r(a.dim() ? a.dim() : b.dim());
    r.arities_ = a.arities_;
    r.merge_symbols(b);
    r.monomials_ = a.monomials_;
    r.monomials_.insert(r.monomials_.end(), b.monomials_.begin(), b.monomials_.end());
    r.normalize();
    return r;
}

DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b) { return a + (-b); }

DiffPolynomial DiffPolynomial::operator-() const { return scaled(make_rational(-1)); }

DiffPolynomial DiffPolynomial::scaled(const Rational& c) const {
    DiffPolynomial r(*this);
    if (cclab::is_zero(c)) {
        r.monomials_.clear();
        return r;
    }
    for (auto& m : r.monomials_) m.coeff *= c;
    return r;
}

DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
    check_dims(a, b);
    DiffPolynomial r(a.dim() ? a.dim() : b.dim());
    r.arities_ = a.arities_;
    r.merge_symbols(b);
    for (const auto& ma : a.monomials_) {
        for (const auto& mb : b.monomials_) {
            auto factors = ma.factors;
            factors.insert(factors.end(), mb.factors.begin(), mb.factors.end());
            r.add_term(ma.coeff * mb.coeff, std::move(factors));
        }
    }
    r.normalize();
    return r;
}

DiffPolynomial DiffPolynomial::pow(int e) const {
    if (e < 0) throw EvaluationError("negative power of a differential polynomial");
    DiffPolynomial r = constant(dim_ ? dim_ : 1, make_rational(1));
    r.arities_ = arities_;
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

bool DiffPolynomial::operator==(const DiffPolynomial& o) const {
    if (monomials_.size() != o.monomials_.size()) return false;
    for (size_t i = 0; i < monomials_.size(); ++i) {
        if (!(monomials_[i].same_factors(o.monomials_[i]))) return false;
        if (monomials_[i].coeff != o.monomials_[i].coeff) return false;
    }
    return true;
}

DiffPolynomial DiffPolynomial::total_derivative(int axis) const {
    if (axis < 0 || axis >= dim_) throw DimensionMismatch("total_derivative: bad axis");
    DiffPolynomial r(dim_);
    r.arities_ = arities_;
    for (const auto& m : monomials_) {
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const auto& [v, e] = m.factors[i];
            JetVar dv = v;
            dv.index = add(v.index, MultiIndex::unit(dim_, axis));
            auto factors = m.factors;
            if (e == 1)
                factors.erase(factors.begin() + static_cast<long>(i));
            else
                factors[i].second = e - 1;
            factors.emplace_back(dv, 1);
            r.add_term(m.coeff * e, std::move(factors));
        }
    }
    r.normalize();
    return r;
}

DiffPolynomial DiffPolynomial::total_derivative(const MultiIndex& alpha) const {
    if (alpha.dim() != dim_) throw DimensionMismatch("total_derivative: index dimension");
    DiffPolynomial r = *this;
    for (int ax = 0; ax < dim_; ++ax)
        for (int k = 0; k < alpha[ax]; ++k) r = r.total_derivative(ax);
    return r;
}

DiffPolynomial DiffPolynomial::partial(const JetVar& v) const {
    DiffPolynomial r(dim_);
    r.arities_ = arities_;
    for (const auto& m : monomials_) {
        for (size_t i = 0; i < m.factors.size(); ++i) {
            if (!(m.factors[i].first == v)) continue;
            int e = m.factors[i].second;
            auto factors = m.factors;
            if (e == 1)
                factors.erase(factors.begin() + static_cast<long>(i));
            else
                factors[i].second = e - 1;
            r.add_term(m.coeff * e, std::move(factors));
            break;  // factors are merged, v occurs in one slot
        }
    }
    r.normalize();
    return r;
}

DiffPolynomial DiffPolynomial::euler_operator(const std::string& symbol, int component) const {
    DiffPolynomial r(dim_);
    r.arities_ = arities_;
    // collect the derivative indices of (symbol, component) present in the body
    std::set<MultiIndex, MultiIndexLess> indices;
    for (const auto& m : monomials_)
        for (const auto& [v, e] : m.factors)
            if (v.symbol == symbol && v.component == component) indices.insert(v.index);
    for (const auto& alpha : indices) {
        JetVar v{symbol, component, alpha};
        DiffPolynomial term = partial(v).total_derivative(alpha);
        if (alpha.order() % 2 == 1) term = -term;
        r = r + term;
    }
    return r;
}

DiffPolynomial DiffPolynomial::substitute(const std::string& symbol,
                                          const std::vector<DiffPolynomial>& replacement) const {
    auto it = arities_.find(symbol);
    int arity = it == arities_.end() ? static_cast<int>(replacement.size()) : it->second;
    if (static_cast<int>(replacement.size()) != arity)
        throw SubstitutionError("substitute: replacement count does not match arity of " + symbol);
    for (const auto& rp : replacement) {
        for (const auto& m : rp.monomials())
            if (m.degree() != 1)
                throw SubstitutionError("substitute: replacement for " + symbol +
                                        " is not linear in its jet variables");
        if (rp.dim() != dim_) throw DimensionMismatch("substitute: dimension mismatch");
    }
    DiffPolynomial r(dim_);
    for (const auto& [name, ar] : arities_)
        if (name != symbol) r.declare_symbol(name, ar);
    for (const auto& rp : replacement) r.merge_symbols(rp);

    for (const auto& m : monomials_) {
        DiffPolynomial term = constant(dim_, m.coeff);
        for (const auto& [v, e] : m.factors) {
            DiffPolynomial factor;
            if (v.symbol == symbol) {
                factor = replacement[static_cast<size_t>(v.component - 1)].total_derivative(v.index);
            } else {
                factor = var(dim_, v);
            }
            for (int k = 0; k < e; ++k) term = term * factor;
        }
        r = r + term;
    }
    return r;
}

Rational DiffPolynomial::evaluate_at_jet(const JetAssignment& a) const {
    Rational total = 0;
    for (const auto& m : monomials_) {
        Rational t = m.coeff;
        for (const auto& [v, e] : m.factors) {
            auto it = a.find(v);
            if (it == a.end())
                throw EvaluationError("evaluate_at_jet: missing assignment for " + v.str());
            for (int k = 0; k < e; ++k) t *= it->second;
        }
        total += t;
    }
    return total;
}

std::map<int, DiffPolynomial> DiffPolynomial::grade_by_order() const {
    std::map<int, DiffPolynomial> out;
    for (const auto& m : monomials_) {
        int l = m.derivative_order();
        auto [it, fresh] = out.try_emplace(l, dim_);
        if (fresh) it->second.arities_ = arities_;
        it->second.monomials_.push_back(m);
    }
    for (auto& [l, p] : out) p.normalize();
    return out;
}

DiffPolynomial::Homogeneity DiffPolynomial::homogeneity() const {
    Homogeneity h;
    for (const auto& m : monomials_) h.degree = std::max(h.degree, m.degree());
    for (const auto& m : monomials_)
        if (m.degree() != h.degree) h.is_homogeneous = false;
    return h;
}

RebalanceResult DiffPolynomial::rebalance(int term, int axis) const {
    if (term < 0 || term >= static_cast<int>(monomials_.size()))
        throw EvaluationError("rebalance: term selector out of range");
    if (axis < 0 || axis >= dim_) throw DimensionMismatch("rebalance: bad axis");
    const DiffMonomial& m = monomials_[static_cast<size_t>(term)];
    if (m.factors.size() != 2 || m.factors[0].second != 1 || m.factors[1].second != 1)
        throw EvaluationError("rebalance: selected term is not a product of two distinct jets");
    const JetVar& first = m.factors[0].first;
    const JetVar& second = m.factors[1].first;
    if (second.index[axis] == 0)
        throw EvaluationError("rebalance: second factor carries no derivative on that axis");

    JetVar up = first;
    up.index = add(first.index, MultiIndex::unit(dim_, axis));
    JetVar down = second;
    down.index = sub(second.index, MultiIndex::unit(dim_, axis));

    DiffPolynomial replacement = *this;
    replacement.monomials_.erase(replacement.monomials_.begin() + term);
    replacement.add_term(-m.coeff, {{up, 1}, {down, 1}});
    replacement.normalize();

    DiffPolynomial rem(dim_);
    rem.arities_ = arities_;
    rem.add_term(m.coeff, {{first, 1}, {down, 1}});
    rem.normalize();
    return {replacement, {{axis, rem}}};
}

Rational DiffPolynomial::constant_term() const {
    for (const auto& m : monomials_)
        if (m.factors.empty()) return m.coeff;
    return Rational(0);
}

std::set<JetVar, JetVarLess> DiffPolynomial::jet_variables() const {
    std::set<JetVar, JetVarLess> out;
    for (const auto& m : monomials_)
        for (const auto& [v, e] : m.factors) out.insert(v);
    return out;
}

std::set<std::pair<std::string, int>> DiffPolynomial::symbol_components() const {
    std::set<std::pair<std::string, int>> out;
    for (const auto& m : monomials_)
        for (const auto& [v, e] : m.factors) out.emplace(v.symbol, v.component);
    return out;
}

std::string DiffPolynomial::str() const {
    if (monomials_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& m : monomials_) {
        Rational c = m.coeff;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        first = false;
        bool printed = !((c == 1) && !m.factors.empty());
        if (printed) s += rat_str(c);
        for (size_t i = 0; i < m.factors.size(); ++i) {
            if (printed || i > 0) s += "*";
            printed = true;
            s += m.factors[i].first.str();
            if (m.factors[i].second > 1) s += "^" + std::to_string(m.factors[i].second);
        }
    }
    return s;
}

}  // namespace cclab
