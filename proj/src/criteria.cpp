#include "cclab/criteria.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace cclab {

std::string verdict_method_str(VerdictMethod m) {
    switch (m) {
        case VerdictMethod::euler_oracle: return "euler_oracle";
        case VerdictMethod::coefficient_criterion: return "coefficient_criterion";
        case VerdictMethod::homogeneous_criterion: return "homogeneous_criterion";
        case VerdictMethod::condition_44: return "condition_44";
        case VerdictMethod::potential_substitution_euler: return "potential_substitution+euler";
        case VerdictMethod::parity_rule: return "parity_rule";
    }
    return "?";
}

// ---------------- potentials ----------------

int pair_position(int n, int i, int j) {
    // pairs in lex order: (1,2),(1,3),...,(1,n),(2,3),...
    return (i - 1) * n - i * (i - 1) / 2 + (j - i) - 1;
}

std::vector<DiffPolynomial> gradient_potential_expr(int dim, const std::string& psi) {
    std::vector<DiffPolynomial> out;
    for (int i = 0; i < dim; ++i) {
        DiffPolynomial p(dim);
        p.declare_symbol(psi, 1);
        p.add_term(make_rational(1), {{JetVar{psi, 1, MultiIndex::unit(dim, i)}, 1}});
        out.push_back(p + DiffPolynomial::zero(dim));
    }
    return out;
}

std::vector<DiffPolynomial> divergence_potential_expr(int dim, const std::string& phi) {
    int comps = dim * (dim - 1) / 2;
    std::vector<DiffPolynomial> out;
    for (int j = 1; j <= dim; ++j) {
        DiffPolynomial p(dim);
        p.declare_symbol(phi, comps);
        for (int i = 1; i < j; ++i) {
            int sign = ((i + j) % 2 == 0) ? 1 : -1;
            p.add_term(make_rational(sign),
                       {{JetVar{phi, pair_position(dim, i, j) + 1, MultiIndex::unit(dim, i - 1)}, 1}});
        }
        for (int i = j + 1; i <= dim; ++i) {
            int sign = ((i + j + 1) % 2 == 0) ? 1 : -1;
            p.add_term(make_rational(sign),
                       {{JetVar{phi, pair_position(dim, j, i) + 1, MultiIndex::unit(dim, i - 1)}, 1}});
        }
        out.push_back(p + DiffPolynomial::zero(dim));
    }
    return out;
}

static std::string fresh_name(const OperatorSpec& spec, const std::vector<FunctionDecl>& added,
                              std::string base) {
    auto taken = [&](const std::string& s) {
        if (spec.find(s)) return true;
        for (const auto& f : added)
            if (f.name == s) return true;
        return false;
    };
    while (taken(base)) base += "_";
    return base;
}

SubstitutedSpec potential_substitute(const OperatorSpec& spec) {
    SubstitutedSpec out;
    out.spec.name = spec.name;
    out.spec.dim = spec.dim;
    out.spec.exponents = spec.exponents;
    out.spec.body = spec.body;
    for (const auto& f : spec.functions) {
        if (f.constraint == Constraint::none) {
            out.spec.functions.push_back(f);
            continue;
        }
        if (f.arity != spec.dim)
            throw UnsupportedConstraint("constraint on non-vector symbol " + f.name);
        if (f.constraint == Constraint::curl0) {
            std::string psi = fresh_name(spec, out.spec.functions, "Psi_" + f.name);
            out.spec.functions.push_back({psi, 1, Constraint::none});
            out.spec.body = out.spec.body.substitute(f.name,
                                                     gradient_potential_expr(spec.dim, psi));
            out.maps.push_back({f.name, Constraint::curl0, psi});
        } else {
            if (spec.dim < 2)
                throw UnsupportedConstraint("div0 needs dimension >= 2");
            std::string phi = fresh_name(spec, out.spec.functions, "Phi_" + f.name);
            out.spec.functions.push_back({phi, spec.dim * (spec.dim - 1) / 2, Constraint::none});
            out.spec.body = out.spec.body.substitute(f.name,
                                                     divergence_potential_expr(spec.dim, phi));
            out.maps.push_back({f.name, Constraint::div0, phi});
        }
    }
    for (const auto& f : out.spec.functions) out.spec.body.declare_symbol(f.name, f.arity);
    return out;
}

// ---------------- witnesses ----------------

Witness make_witness(const std::string& symbol, int component, const DiffPolynomial& residual) {
    Witness w;
    w.symbol = symbol;
    w.component = component;
    w.residual = residual;
    auto vars = residual.jet_variables();
    std::vector<JetVar> varv(vars.begin(), vars.end());

    auto try_assignment = [&](const JetAssignment& a) {
        Rational v = residual.evaluate_at_jet(a);
        if (!is_zero(v)) {
            w.assignment = a;
            w.value = v;
            return true;
        }
        return false;
    };

    bool found = false;
    if (varv.empty()) {
        // constant residual
        w.value = residual.constant_term();
        found = !is_zero(w.value);
    }
    // one monomial's variables set to 1, everything else 0
    if (!found) {
        for (const auto& m : residual.monomials()) {
            JetAssignment a;
            for (const auto& v : varv) a[v] = 0;
            for (const auto& [v, e] : m.factors) a[v] = 1;
            if (try_assignment(a)) {
                found = true;
                break;
            }
        }
    }
    // seeded search over small integer grids
    if (!found) {
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> dist(-3, 3);
        for (int trial = 0; trial < 2000 && !found; ++trial) {
            JetAssignment a;
            for (const auto& v : varv) a[v] = make_rational(dist(rng));
            found = try_assignment(a);
        }
    }
    if (!found)
        throw EvaluationError("witness search failed on a residual reported nonzero");

    for (const auto& [v, val] : w.assignment) {
        if (is_zero(val)) continue;
        w.realization[{v.symbol, v.component}][v.index] = val / factorial(v.index);
    }
    std::ostringstream os;
    for (const auto& [sc, terms] : w.realization) {
        os << sc.first << "[" << sc.second << "](x) = ";
        bool first = true;
        for (const auto& [alpha, c] : terms) {
            if (!first) os << " + ";
            first = false;
            os << rat_str(c) << "*x^" << alpha.str();
        }
        os << "; ";
    }
    os << "multiply by a cutoff equal to 1 near 0";
    w.realization_text = os.str();
    return w;
}

// ---------------- zero integral ----------------

std::vector<std::tuple<std::string, int, DiffPolynomial>> euler_residuals(
    const DiffPolynomial& body) {
    std::vector<std::tuple<std::string, int, DiffPolynomial>> out;
    for (const auto& [sym, comp] : body.symbol_components()) {
        DiffPolynomial r = body.euler_operator(sym, comp);
        if (!r.is_zero()) out.emplace_back(sym, comp, r);
    }
    return out;
}

Verdict zero_integral(const OperatorSpec& spec) {
    Verdict v;
    DiffPolynomial body;
    if (spec.has_constraints()) {
        v.method = VerdictMethod::potential_substitution_euler;
        body = potential_substitute(spec).spec.body;
    } else {
        v.method = VerdictMethod::euler_oracle;
        body = spec.body;
    }
    Rational c0 = body.constant_term();
    if (!is_zero(c0)) {
        v.value = false;
        DiffPolynomial cpoly = DiffPolynomial::constant(spec.dim, c0);
        Witness w;
        w.symbol = "";
        w.component = 0;
        w.residual = cpoly;
        w.value = c0;
        w.realization_text = "constant term " + rat_str(c0) + " integrates to a nonzero multiple of the volume";
        v.witness = w;
        return v;
    }
    auto residuals = euler_residuals(body);
    if (residuals.empty()) {
        v.value = true;
        return v;
    }
    v.value = false;
    const auto& [sym, comp, r] = residuals.front();
    v.witness = make_witness(sym, comp, r);
    return v;
}

Verdict null_lagrangian(const OperatorSpec& spec) {
    if (spec.has_constraints())
        throw UnsupportedConstraint("null Lagrangian verdicts need an unconstrained quantity");
    Verdict v;
    v.method = VerdictMethod::euler_oracle;
    auto residuals = euler_residuals(spec.body);
    v.value = residuals.empty();
    if (!v.value) {
        const auto& [sym, comp, r] = residuals.front();
        v.witness = make_witness(sym, comp, r);
    }
    return v;
}

// ---------------- coefficient criteria ----------------

struct CompGammaLess {
    bool operator()(const std::pair<std::vector<int>, MultiIndex>& a,
                    const std::pair<std::vector<int>, MultiIndex>& b) const {
        if (a.first != b.first) return a.first < b.first;
        if (a.second == b.second) return false;
        return graded_lex_less(a.second, b.second);
    }
};

static std::string comp_key(const std::vector<int>& comps) {
    std::string s = "(";
    for (size_t i = 0; i < comps.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(comps[i]);
    }
    return s + ")";
}

Verdict bilinear_criterion(const CoefficientTable& table) {
    if (table.rank() != 2)
        throw CriterionPrecondition("bilinear criterion needs exactly two slots");
    if (!table.unconstrained())
        throw CriterionPrecondition("bilinear criterion needs unconstrained slots");
    Verdict v;
    v.method = VerdictMethod::coefficient_criterion;
    std::map<std::pair<std::vector<int>, MultiIndex>, Rational, CompGammaLess> sums;
    for (const auto& [key, c] : table.entries) {
        MultiIndex gamma = add(key.indices[0], key.indices[1]);
        Rational term = (key.indices[0].order() % 2 == 0) ? c : -c;
        auto k = std::make_pair(key.components, gamma);
        auto it = sums.find(k);
        if (it == sums.end())
            sums.emplace(k, term);
        else
            it->second += term;
    }
    v.value = true;
    for (const auto& [k, s] : sums) {
        if (is_zero(s)) continue;
        v.value = false;
        v.details["nu=" + comp_key(k.first) + " gamma=" + k.second.str()] = s;
    }
    return v;
}

Verdict homogeneous_criterion(const CoefficientTable& table) {
    if (table.rank() != 2)
        throw CriterionPrecondition("unsigned criterion needs exactly two slots");
    if (!table.unconstrained())
        throw CriterionPrecondition("unsigned criterion needs unconstrained slots");
    if (!table.slot_homogeneous())
        throw CriterionPrecondition("unsigned criterion needs slotwise order-homogeneous entries");
    Verdict v;
    v.method = VerdictMethod::homogeneous_criterion;
    std::map<std::pair<std::vector<int>, MultiIndex>, Rational, CompGammaLess> sums;
    for (const auto& [key, c] : table.entries) {
        MultiIndex gamma = add(key.indices[0], key.indices[1]);
        auto k = std::make_pair(key.components, gamma);
        auto it = sums.find(k);
        if (it == sums.end())
            sums.emplace(k, c);
        else
            it->second += c;
    }
    v.value = true;
    for (const auto& [k, s] : sums) {
        if (is_zero(s)) continue;
        v.value = false;
        v.details["nu=" + comp_key(k.first) + " gamma=" + k.second.str()] = s;
    }
    return v;
}

// all splittings of gamma into `parts` nonnegative multi-indices
static void compositions(const MultiIndex& gamma, int parts, std::vector<MultiIndex>& cur,
                         std::vector<std::vector<MultiIndex>>& out) {
    if (parts == 1) {
        cur.push_back(gamma);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    // enumerate all theta <= gamma
    std::vector<int> e(static_cast<size_t>(gamma.dim()), 0);
    while (true) {
        cur.push_back(MultiIndex::from(e));
        compositions(sub(gamma, cur.back()), parts - 1, cur, out);
        cur.pop_back();
        int i = 0;
        while (i < gamma.dim() && e[static_cast<size_t>(i)] == gamma[i]) {
            e[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == gamma.dim()) break;
        ++e[static_cast<size_t>(i)];
    }
}

Verdict condition_44(const CoefficientTable& table) {
    int r = table.rank();
    if (r < 3) throw CriterionPrecondition("multilinear criterion needs rank >= 3");
    Verdict v;
    v.method = VerdictMethod::condition_44;
    v.value = true;

    // group entries by component tuple
    std::map<std::vector<int>, std::vector<std::pair<MultiIndexTuple, Rational>>> groups;
    for (const auto& [key, c] : table.entries) groups[key.components].emplace_back(key.indices, c);

    for (const auto& [comps, entries] : groups) {
        // gamma values realized by this group
        std::vector<MultiIndex> gammas;
        for (const auto& [idx, c] : entries) {
            MultiIndex g = idx[0];
            for (int j = 1; j < r; ++j) g = add(g, idx[j]);
            if (std::find(gammas.begin(), gammas.end(), g) == gammas.end()) gammas.push_back(g);
        }
        for (const auto& gamma : gammas) {
            std::vector<std::vector<MultiIndex>> thetas;
            std::vector<MultiIndex> cur;
            compositions(gamma, r - 1, cur, thetas);
            for (const auto& theta : thetas) {
                Rational sum = 0;
                for (const auto& [idx, c] : entries) {
                    MultiIndex g = idx[0];
                    for (int j = 1; j < r; ++j) g = add(g, idx[j]);
                    if (!(g == gamma)) continue;
                    std::int64_t weight = 1;
                    for (int j = 1; j < r && weight != 0; ++j) {
                        if (!leq(idx[j], theta[static_cast<size_t>(j - 1)])) {
                            weight = 0;
                            break;
                        }
                        weight *= binomial(idx[0], sub(theta[static_cast<size_t>(j - 1)], idx[j]));
                    }
                    if (weight == 0) continue;
                    Rational term = c * make_rational(weight);
                    if (idx[0].order() % 2 == 1) term = -term;
                    sum += term;
                }
                if (!is_zero(sum)) {
                    v.value = false;
                    std::string key = "nu=" + comp_key(comps) + " theta=(";
                    for (size_t j = 0; j < theta.size(); ++j) {
                        if (j) key += ',';
                        key += theta[j].str();
                    }
                    key += ")";
                    v.details[key] = sum;
                }
            }
        }
    }
    return v;
}

// ---------------- decomposition, h1, parity ----------------

std::vector<std::pair<int, OperatorSpec>> scaling_decompose(const OperatorSpec& spec) {
    std::vector<std::pair<int, OperatorSpec>> out;
    for (const auto& [level, piece] : spec.body.grade_by_order()) {
        OperatorSpec s;
        s.name = spec.name + "#l" + std::to_string(level);
        s.dim = spec.dim;
        s.functions = spec.functions;
        s.exponents = spec.exponents;
        s.body = piece;
        for (const auto& f : s.functions) s.body.declare_symbol(f.name, f.arity);
        out.emplace_back(level, std::move(s));
    }
    return out;
}

std::optional<int> uniform_factor_order(const DiffPolynomial& body) {
    std::optional<int> k;
    for (const auto& m : body.monomials()) {
        for (const auto& [v, e] : m.factors) {
            if (!k) k = v.index.order();
            if (*k != v.index.order()) return std::nullopt;
        }
    }
    return k;
}

H1Verdict h1_verdict(const OperatorSpec& spec) {
    std::optional<CoefficientTable> table;
    try {
        table = to_coefficient_table(spec);
    } catch (const NotMultilinear&) {
    }
    if (table && table->slot_homogeneous() && table->rank() >= 2)
        return {zero_integral(spec).value, "multilinear_slot_homogeneous"};
    if (table && table->rank() == 2)
        return {zero_integral(spec).value, "bilinear"};
    if (!spec.has_constraints()) {
        auto k = uniform_factor_order(spec.body);
        if (k && is_zero(spec.body.constant_term())) {
            bool zi = zero_integral(spec).value;
            bool hom = spec.body.homogeneity().is_homogeneous;
            return {zi && hom, "homogeneous_polynomial"};
        }
    }
    return {std::nullopt, "none"};
}

std::string parity_shape_str(ParityShape s) {
    switch (s) {
        case ParityShape::difference: return "difference";
        case ParityShape::sum: return "sum";
        case ParityShape::product: return "product";
    }
    return "?";
}

std::optional<ParityResult> parity_classify(const OperatorSpec& spec) {
    if (spec.functions.size() != 2) return std::nullopt;
    if (spec.functions[0].arity != 1 || spec.functions[1].arity != 1) return std::nullopt;
    if (spec.has_constraints()) return std::nullopt;
    CoefficientTable table;
    try {
        table = to_coefficient_table(spec);
    } catch (const NotMultilinear&) {
        return std::nullopt;
    }
    if (table.rank() != 2) return std::nullopt;

    int dim = spec.dim;
    MultiIndex zero(dim);
    std::map<MultiIndex, Rational, MultiIndexLess> on_u, on_v;  // pure terms
    Rational c00 = 0;
    bool pure = true;
    for (const auto& [key, c] : table.entries) {
        const MultiIndex& a = key.indices[0];
        const MultiIndex& b = key.indices[1];
        if (a.order() == 0 && b.order() == 0)
            c00 = c;
        else if (b.order() == 0)
            on_u[a] = c;
        else if (a.order() == 0)
            on_v[b] = c;
        else
            pure = false;
    }

    auto finish = [&](ParityShape shape, bool value,
                      std::map<std::string, Rational> details) -> ParityResult {
        Verdict v;
        v.method = VerdictMethod::parity_rule;
        v.value = value;
        v.details = std::move(details);
        return {shape, v};
    };

    if (pure) {
        // difference: c_{alpha,0} = -c_{0,alpha}, no pure uv term
        bool diff = is_zero(c00), sum = true;
        {
            std::set<MultiIndex, MultiIndexLess> keys;
            for (const auto& [a, c] : on_u) keys.insert(a);
            for (const auto& [b, c] : on_v) keys.insert(b);
            for (const auto& a : keys) {
                Rational cu = on_u.count(a) ? on_u.at(a) : Rational(0);
                Rational cv = on_v.count(a) ? on_v.at(a) : Rational(0);
                if (cu != -cv) diff = false;
                if (cu != cv) sum = false;
            }
        }
        if (diff) {
            bool ok = true;
            std::map<std::string, Rational> det;
            for (const auto& [a, c] : on_u)
                if (a.order() % 2 == 1) {
                    ok = false;
                    det["odd order " + a.str()] = c;
                }
            return finish(ParityShape::difference, ok, std::move(det));
        }
        if (sum) {
            bool ok = true;
            std::map<std::string, Rational> det;
            if (!is_zero(c00)) {
                ok = false;
                det["even order " + zero.str()] = c00 / 2;
            }
            for (const auto& [a, c] : on_u)
                if (a.order() % 2 == 0) {
                    ok = false;
                    det["even order " + a.str()] = c;
                }
            return finish(ParityShape::sum, ok, std::move(det));
        }
    }

    // product shape: c_{alpha,beta} = p_{alpha+beta} * binom(alpha+beta, alpha)
    {
        std::map<MultiIndex, Rational, MultiIndexLess> p = on_u;
        if (!is_zero(c00)) p[zero] = c00;
        bool match = true;
        for (const auto& [key, c] : table.entries) {
            MultiIndex g = add(key.indices[0], key.indices[1]);
            Rational pg = p.count(g) ? p.at(g) : Rational(0);
            if (c != pg * make_rational(binomial(g, key.indices[0]))) {
                match = false;
                break;
            }
        }
        if (match) {
            bool ok = is_zero(c00);
            std::map<std::string, Rational> det;
            if (!ok) det["constant term"] = c00;
            return finish(ParityShape::product, ok, std::move(det));
        }
    }
    return std::nullopt;
}

}  // namespace cclab
