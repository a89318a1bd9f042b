#include "cclab/coefficients.hpp"

#include <algorithm>

namespace cclab {

bool CoefficientTable::slot_homogeneous() const {
    if (entries.empty()) return true;
    const auto& first = entries.begin()->first;
    for (const auto& [key, c] : entries)
        for (int j = 0; j < rank(); ++j)
            if (key.indices[j].order() != first.indices[j].order()) return false;
    return true;
}

std::vector<int> CoefficientTable::slot_orders() const {
    std::vector<int> k(static_cast<size_t>(rank()), 0);
    for (const auto& [key, c] : entries)
        for (int j = 0; j < rank(); ++j)
            k[static_cast<size_t>(j)] = std::max(k[static_cast<size_t>(j)], key.indices[j].order());
    return k;
}

bool CoefficientTable::unconstrained() const {
    for (const auto& s : slots)
        if (s.constraint != Constraint::none) return false;
    return true;
}

DiffPolynomial CoefficientTable::to_body() const {
    DiffPolynomial body(dim);
    for (const auto& [key, c] : entries) {
        std::vector<std::pair<JetVar, int>> factors;
        for (int j = 0; j < rank(); ++j) {
            const auto& s = slots[static_cast<size_t>(j)];
            JetVar v{s.symbol, key.components[static_cast<size_t>(j)], key.indices[j]};
            factors.emplace_back(v, 1);
        }
        body.add_term(c, std::move(factors));
    }
    // canonicalize through the ring
    return body + DiffPolynomial::zero(dim);
}

CoefficientTable to_coefficient_table(const OperatorSpec& spec) {
    // per-monomial counts of (symbol) and (symbol, component)
    struct Usage {
        int total = 0;
        std::map<int, int> per_component;
    };

    const auto& monomials = spec.body.monomials();
    if (monomials.empty())
        throw NotMultilinear("empty body has no multilinear slot structure", "0");

    // decide slot mode per symbol from the whole body
    std::map<std::string, bool> whole_symbol;  // symbol -> true if one slot for the symbol
    for (const auto& f : spec.functions) {
        bool symbol_ok = true, component_ok = true;
        for (const auto& m : monomials) {
            Usage u;
            for (const auto& [v, e] : m.factors) {
                if (v.symbol != f.name) continue;
                u.total += e;
                u.per_component[v.component] += e;
            }
            if (u.total != 1) symbol_ok = false;
            if (u.total != f.arity) component_ok = false;
            for (int c = 1; c <= f.arity && component_ok; ++c)
                if (u.per_component[c] != 1) component_ok = false;
        }
        if (symbol_ok) {
            whole_symbol[f.name] = true;
        } else if (component_ok && f.arity > 1) {
            whole_symbol[f.name] = false;
        } else {
            // report the first offending monomial
            for (const auto& m : monomials) {
                int total = 0;
                for (const auto& [v, e] : m.factors)
                    if (v.symbol == f.name) total += e;
                if (total != 1) {
                    DiffPolynomial show(spec.dim);
                    show.add_term(m.coeff, m.factors);
                    throw NotMultilinear("monomial touches symbol " + f.name + " " +
                                             std::to_string(total) + " times: " +
                                             (show + DiffPolynomial::zero(spec.dim)).str(),
                                         (show + DiffPolynomial::zero(spec.dim)).str());
                }
            }
            throw NotMultilinear("symbol " + f.name + " has no multilinear slot structure",
                                 "");
        }
    }

    CoefficientTable table;
    table.dim = spec.dim;
    for (const auto& f : spec.functions) {
        if (whole_symbol[f.name]) {
            table.slots.push_back({f.name, true, 1, f.arity, f.constraint});
        } else {
            for (int c = 1; c <= f.arity; ++c)
                table.slots.push_back({f.name, false, c, 1, f.constraint});
        }
    }

    for (const auto& m : monomials) {
        std::vector<int> comps(table.slots.size(), 0);
        std::vector<MultiIndex> idx(table.slots.size(), MultiIndex(spec.dim));
        for (const auto& [v, e] : m.factors) {
            for (int rep = 0; rep < e; ++rep) {
                // locate the slot this jet belongs to
                for (size_t j = 0; j < table.slots.size(); ++j) {
                    const auto& s = table.slots[j];
                    if (s.symbol != v.symbol) continue;
                    if (!s.whole_symbol && s.component != v.component) continue;
                    comps[j] = v.component;
                    idx[j] = v.index;
                    break;
                }
            }
        }
        TableKey key{comps, MultiIndexTuple(idx)};
        table.entries[key] += m.coeff;
    }
    std::erase_if(table.entries, [](const auto& kv) { return is_zero(kv.second); });
    return table;
}

}  // namespace cclab
