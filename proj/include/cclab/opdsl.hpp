#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cclab/diffpoly.hpp"

namespace cclab {

enum class Constraint { none, div0, curl0 };

std::string constraint_str(Constraint c);

struct FunctionDecl {
    std::string name;
    int arity = 1;
    Constraint constraint = Constraint::none;

    bool operator==(const FunctionDecl&) const = default;
};

// Expected verdicts carried by a fixture file (`expect zero_integral true;`).
// Reports compare them against computed verdicts and raise a flag on mismatch.
struct Expectation {
    std::string key;  // zero_integral | null_lagrangian | h1_regular
    bool value = false;

    bool operator==(const Expectation&) const = default;
};

/// A parsed, validated quantity: declarations plus a canonical body.
struct OperatorSpec {
    std::string name;
    int dim = 0;
    std::vector<FunctionDecl> functions;
    std::optional<std::vector<Rational>> exponents;
    std::vector<Expectation> expectations;
    DiffPolynomial body;

    const FunctionDecl* find(const std::string& symbol) const;
    bool has_constraints() const;
    bool operator==(const OperatorSpec& o) const;
};

enum class ParseErrorKind {
    syntax,
    undeclared_symbol,
    bad_component,
    constraint_on_nonvector,
    derivative_dimension,
    exponent_condition,
    bad_declaration,
};

std::string parse_error_kind_str(ParseErrorKind k);

struct ParseError : std::runtime_error {
    ParseError(ParseErrorKind kind, int line, int col, const std::string& message,
               const std::string& expected = "");
    ParseErrorKind kind;
    int line;
    int col;
    std::string expected;
};

// Parses a whole file (one or more operator blocks). UTF-8, '#' comments.
std::vector<OperatorSpec> parse_operators(const std::string& text);
OperatorSpec parse_operator(const std::string& text);  // exactly one block

// Canonical text; parse(pretty_print(s)) is structurally equal to s.
std::string pretty_print(const OperatorSpec& spec);
std::string pretty_print(const std::vector<OperatorSpec>& specs);

}  // namespace cclab
