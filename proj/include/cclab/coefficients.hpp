#pragma once

#include <map>
#include <string>
#include <vector>

#include "cclab/opdsl.hpp"

namespace cclab {

struct NotMultilinear : std::runtime_error {
    explicit NotMultilinear(const std::string& what, const std::string& monomial_)
        : std::runtime_error(what), monomial(monomial_) {}
    std::string monomial;
};

/// One multilinear slot. Either a whole declared symbol (component index
/// ranges over 1..arity) or a single component of a symbol whose components
/// are touched exactly once each per monomial.
struct TableSlot {
    std::string symbol;
    bool whole_symbol = true;
    int component = 1;   // meaningful when !whole_symbol
    int index_count = 1; // number of admissible component indices
    Constraint constraint = Constraint::none;

    bool operator==(const TableSlot&) const = default;
};

struct TableKey {
    std::vector<int> components;  // one per slot
    MultiIndexTuple indices;      // one multi-index per slot

    bool operator<(const TableKey& o) const {
        if (components != o.components) return components < o.components;
        return tuple_less(indices, o.indices);
    }
};

/// Lossless multilinear coefficient form of an operator body.
struct CoefficientTable {
    int dim = 0;
    std::vector<TableSlot> slots;
    std::map<TableKey, Rational> entries;

    int rank() const { return static_cast<int>(slots.size()); }

    // true when every entry has the same derivative order in slot j, for all j
    bool slot_homogeneous() const;
    std::vector<int> slot_orders() const;  // max order per slot
    bool unconstrained() const;

    DiffPolynomial to_body() const;
};

// Detects multilinear structure (per symbol: whole-symbol slot if each
// monomial touches the symbol once, component slots if each monomial touches
// every component exactly once) and extracts the table. Throws
// NotMultilinear naming the offending monomial otherwise.
CoefficientTable to_coefficient_table(const OperatorSpec& spec);

}  // namespace cclab
