#include "cclab/opdsl.hpp"

#include <cctype>
#include <sstream>

namespace cclab {

std::string constraint_str(Constraint c) {
    switch (c) {
        case Constraint::none: return "none";
        case Constraint::div0: return "div0";
        case Constraint::curl0: return "curl0";
    }
    return "?";
}

std::string parse_error_kind_str(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::syntax: return "syntax";
        case ParseErrorKind::undeclared_symbol: return "undeclared-symbol";
        case ParseErrorKind::bad_component: return "bad-component";
        case ParseErrorKind::constraint_on_nonvector: return "constraint-on-nonvector";
        case ParseErrorKind::derivative_dimension: return "derivative-dimension";
        case ParseErrorKind::exponent_condition: return "exponent-condition";
        case ParseErrorKind::bad_declaration: return "bad-declaration";
    }
    return "?";
}

static std::string format_parse_error(ParseErrorKind kind, int line, int col,
                                      const std::string& message, const std::string& expected) {
    std::ostringstream os;
    os << line << ":" << col << ": " << parse_error_kind_str(kind) << ": " << message;
    if (!expected.empty()) os << " (expected " << expected << ")";
    return os.str();
}

ParseError::ParseError(ParseErrorKind kind_, int line_, int col_, const std::string& message,
                       const std::string& expected_)
    : std::runtime_error(format_parse_error(kind_, line_, col_, message, expected_)),
      kind(kind_),
      line(line_),
      col(col_),
      expected(expected_) {}

const FunctionDecl* OperatorSpec::find(const std::string& symbol) const {
    for (const auto& f : functions)
        if (f.name == symbol) return &f;
    return nullptr;
}

bool OperatorSpec::has_constraints() const {
    for (const auto& f : functions)
        if (f.constraint != Constraint::none) return true;
    return false;
}

bool OperatorSpec::operator==(const OperatorSpec& o) const {
    return name == o.name && dim == o.dim && functions == o.functions &&
           exponents == o.exponents && expectations == o.expectations && body == o.body;
}

// ---------------- lexer ----------------

namespace {

enum class Tok { ident, number, string, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        skip_ws();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_ = {Tok::end, "", line_, col_};
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                s += get();
            tok_.kind = Tok::ident;
            tok_.text = s;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                s += get();
            tok_.kind = Tok::number;
            tok_.text = s;
            return;
        }
        if (c == '"') {
            get();
            std::string s;
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') s += get();
            if (pos_ >= src_.size() || src_[pos_] != '"')
                throw ParseError(ParseErrorKind::syntax, line_, col_, "unterminated string");
            get();
            tok_.kind = Tok::string;
            tok_.text = s;
            return;
        }
        tok_.kind = Tok::punct;
        tok_.text = std::string(1, get());
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }

    char get() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    std::vector<OperatorSpec> parse_file() {
        std::vector<OperatorSpec> out;
        while (lex_.peek().kind != Tok::end) out.push_back(parse_operator_block());
        if (out.empty())
            throw ParseError(ParseErrorKind::syntax, 1, 1, "empty input", "operator block");
        return out;
    }

  private:
    [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg,
                           const std::string& expected = "") {
        const Token& t = lex_.peek();
        throw ParseError(kind, t.line, t.col, msg, expected);
    }

    Token expect_punct(const std::string& p) {
        const Token& t = lex_.peek();
        if (t.kind != Tok::punct || t.text != p)
            fail(ParseErrorKind::syntax, "unexpected token '" + t.text + "'", "'" + p + "'");
        return lex_.take();
    }

    Token expect_ident(const std::string& what) {
        const Token& t = lex_.peek();
        if (t.kind != Tok::ident)
            fail(ParseErrorKind::syntax, "unexpected token '" + t.text + "'", what);
        return lex_.take();
    }

    Token expect_keyword(const std::string& kw) {
        const Token& t = lex_.peek();
        if (t.kind != Tok::ident || t.text != kw)
            fail(ParseErrorKind::syntax, "unexpected token '" + t.text + "'", "'" + kw + "'");
        return lex_.take();
    }

    long expect_int() {
        const Token& t = lex_.peek();
        if (t.kind != Tok::number)
            fail(ParseErrorKind::syntax, "unexpected token '" + t.text + "'", "integer");
        return std::stol(lex_.take().text);
    }

    Rational expect_rational() {
        long num = expect_int();
        if (lex_.peek().kind == Tok::punct && lex_.peek().text == "/") {
            lex_.take();
            long den = expect_int();
            if (den == 0) fail(ParseErrorKind::syntax, "zero denominator");
            return make_rational(num, den);
        }
        return make_rational(num);
    }

    bool at_punct(const std::string& p) const {
        return lex_.peek().kind == Tok::punct && lex_.peek().text == p;
    }

    OperatorSpec parse_operator_block() {
        expect_keyword("operator");
        const Token& nt = lex_.peek();
        if (nt.kind != Tok::string)
            fail(ParseErrorKind::syntax, "operator name must be a quoted string", "string");
        spec_ = OperatorSpec{};
        spec_.name = lex_.take().text;
        expect_punct("{");
        bool have_dims = false, have_functions = false, have_expr = false;
        while (!at_punct("}")) {
            const Token& t = lex_.peek();
            if (t.kind != Tok::ident)
                fail(ParseErrorKind::syntax, "unexpected token '" + t.text + "'", "declaration");
            if (t.text == "dims") {
                lex_.take();
                long d = expect_int();
                if (d < 1 || d > kMaxDim)
                    fail(ParseErrorKind::bad_declaration,
                         "dims must lie in 1.." + std::to_string(kMaxDim));
                if (have_dims) fail(ParseErrorKind::bad_declaration, "duplicate dims declaration");
                spec_.dim = static_cast<int>(d);
                have_dims = true;
                expect_punct(";");
            } else if (t.text == "functions") {
                if (!have_dims)
                    fail(ParseErrorKind::bad_declaration, "functions must follow dims");
                if (have_functions)
                    fail(ParseErrorKind::bad_declaration, "duplicate functions declaration");
                lex_.take();
                parse_function_decls();
                have_functions = true;
                expect_punct(";");
            } else if (t.text == "exponents") {
                lex_.take();
                parse_exponents();
                expect_punct(";");
            } else if (t.text == "expect") {
                lex_.take();
                parse_expect();
                expect_punct(";");
            } else if (t.text == "expr") {
                if (!have_dims || !have_functions)
                    fail(ParseErrorKind::bad_declaration, "expr must follow dims and functions");
                lex_.take();
                expect_punct("=");
                spec_.body = parse_expr();
                have_expr = true;
                expect_punct(";");
            } else {
                fail(ParseErrorKind::syntax, "unknown declaration '" + t.text + "'",
                     "dims|functions|exponents|expect|expr");
            }
        }
        expect_punct("}");
        if (!have_dims) fail(ParseErrorKind::bad_declaration, "missing dims declaration");
        if (!have_functions) fail(ParseErrorKind::bad_declaration, "missing functions declaration");
        if (!have_expr) fail(ParseErrorKind::bad_declaration, "missing expr");
        validate();
        return spec_;
    }

    void parse_function_decls() {
        while (true) {
            Token name = expect_ident("function name");
            for (const auto& f : spec_.functions)
                if (f.name == name.text)
                    fail(ParseErrorKind::bad_declaration, "duplicate function " + name.text);
            expect_punct(":");
            Token r = expect_ident("R^<arity>");
            if (r.text != "R")
                fail(ParseErrorKind::syntax, "unexpected token '" + r.text + "'", "'R'");
            expect_punct("^");
            long arity = expect_int();
            if (arity < 1 || arity > 64)
                fail(ParseErrorKind::bad_declaration, "arity out of range");
            FunctionDecl f{name.text, static_cast<int>(arity), Constraint::none};
            if (lex_.peek().kind == Tok::ident && lex_.peek().text == "constraint") {
                lex_.take();
                Token c = expect_ident("none|div0|curl0");
                if (c.text == "none")
                    f.constraint = Constraint::none;
                else if (c.text == "div0")
                    f.constraint = Constraint::div0;
                else if (c.text == "curl0")
                    f.constraint = Constraint::curl0;
                else
                    fail(ParseErrorKind::syntax, "unknown constraint '" + c.text + "'",
                         "none|div0|curl0");
                if (f.constraint != Constraint::none && f.arity != spec_.dim)
                    throw ParseError(ParseErrorKind::constraint_on_nonvector, c.line, c.col,
                                     "constraint " + c.text + " needs a vector field of arity " +
                                         std::to_string(spec_.dim) + ", " + f.name + " has arity " +
                                         std::to_string(f.arity));
            }
            spec_.functions.push_back(f);
            if (at_punct(","))
                lex_.take();
            else
                break;
        }
    }

    void parse_exponents() {
        expect_punct("[");
        std::vector<Rational> ps;
        while (true) {
            ps.push_back(expect_rational());
            if (at_punct(","))
                lex_.take();
            else
                break;
        }
        expect_punct("]");
        spec_.exponents = ps;
    }

    void parse_expect() {
        Token key = expect_ident("verdict name");
        if (key.text != "zero_integral" && key.text != "null_lagrangian" &&
            key.text != "h1_regular")
            fail(ParseErrorKind::bad_declaration, "unknown expect key '" + key.text + "'",
                 "zero_integral|null_lagrangian|h1_regular");
        Token val = expect_ident("true|false");
        if (val.text != "true" && val.text != "false")
            fail(ParseErrorKind::syntax, "unexpected token '" + val.text + "'", "true|false");
        spec_.expectations.push_back({key.text, val.text == "true"});
    }

    // expr := term (("+"|"-") term)*
    DiffPolynomial parse_expr() {
        DiffPolynomial p = parse_term();
        while (at_punct("+") || at_punct("-")) {
            bool plus = lex_.take().text == "+";
            DiffPolynomial q = parse_term();
            p = plus ? p + q : p - q;
        }
        return p;
    }

    DiffPolynomial parse_term() {
        DiffPolynomial p = parse_factor();
        while (at_punct("*")) {
            lex_.take();
            p = p * parse_factor();
        }
        return p;
    }

    DiffPolynomial parse_factor() {
        DiffPolynomial p = parse_atom();
        while (at_punct("^")) {
            lex_.take();
            long e = expect_int();
            if (e > 8) fail(ParseErrorKind::syntax, "exponent too large");
            p = p.pow(static_cast<int>(e));
        }
        return p;
    }

    DiffPolynomial parse_atom() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::punct && t.text == "(") {
            lex_.take();
            DiffPolynomial p = parse_expr();
            expect_punct(")");
            return p;
        }
        if (t.kind == Tok::punct && t.text == "-") {
            lex_.take();
            return -parse_factor();
        }
        if (t.kind == Tok::number) {
            Rational c = expect_rational();
            return DiffPolynomial::constant(spec_.dim, c);
        }
        if (t.kind == Tok::ident) return parse_deriv_or_ref();
        fail(ParseErrorKind::syntax, "unexpected token '" + t.text + "'", "factor");
    }

    // deriv := "d" AXES "(" fref ")" | "d[" ints "](" fref ")" | fref
    DiffPolynomial parse_deriv_or_ref() {
        Token t = lex_.take();
        // declared symbol names shadow derivative sugar
        if (spec_.find(t.text)) return parse_fref_tail(t);
        if (t.text == "d" && at_punct("[")) {
            lex_.take();
            std::vector<int> exps;
            while (true) {
                exps.push_back(static_cast<int>(expect_int()));
                if (at_punct(","))
                    lex_.take();
                else
                    break;
            }
            expect_punct("]");
            if (static_cast<int>(exps.size()) != spec_.dim)
                throw ParseError(ParseErrorKind::derivative_dimension, t.line, t.col,
                                 "derivative index has " + std::to_string(exps.size()) +
                                     " entries in dims " + std::to_string(spec_.dim));
            MultiIndex alpha = MultiIndex::from(exps);
            expect_punct("(");
            JetVar v = parse_fref();
            expect_punct(")");
            v.index = alpha;
            return DiffPolynomial::var(spec_.dim, v);
        }
        if (t.text.size() >= 2 && t.text[0] == 'd' && is_axes_word(t.text.substr(1))) {
            MultiIndex alpha(spec_.dim);
            for (size_t i = 1; i < t.text.size(); ++i) {
                int axis = t.text[i] - 'x';
                if (axis >= spec_.dim)
                    throw ParseError(ParseErrorKind::derivative_dimension, t.line, t.col,
                                     std::string("axis '") + t.text[i] + "' does not exist in dims " +
                                         std::to_string(spec_.dim));
                alpha.set(axis, alpha[axis] + 1);
            }
            expect_punct("(");
            JetVar v = parse_fref();
            expect_punct(")");
            v.index = alpha;
            return DiffPolynomial::var(spec_.dim, v);
        }
        throw ParseError(ParseErrorKind::undeclared_symbol, t.line, t.col,
                         "undeclared symbol '" + t.text + "'");
    }

    static bool is_axes_word(const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c != 'x' && c != 'y' && c != 'z') return false;
        return true;
    }

    JetVar parse_fref() {
        Token t = expect_ident("function reference");
        return parse_fref_jet(t);
    }

    JetVar parse_fref_jet(const Token& t) {
        const FunctionDecl* f = spec_.find(t.text);
        if (!f)
            throw ParseError(ParseErrorKind::undeclared_symbol, t.line, t.col,
                             "undeclared symbol '" + t.text + "'");
        int comp = 1;
        if (at_punct("[")) {
            lex_.take();
            comp = static_cast<int>(expect_int());
            expect_punct("]");
        }
        if (comp < 1 || comp > f->arity)
            throw ParseError(ParseErrorKind::bad_component, t.line, t.col,
                             "component " + std::to_string(comp) + " out of range for " + f->name +
                                 ": R^" + std::to_string(f->arity));
        return JetVar{f->name, comp, MultiIndex(spec_.dim)};
    }

    DiffPolynomial parse_fref_tail(const Token& t) {
        JetVar v = parse_fref_jet(t);
        return DiffPolynomial::var(spec_.dim, v);
    }

    void validate() {
        for (const auto& f : spec_.functions) spec_.body.declare_symbol(f.name, f.arity);
        if (spec_.exponents) {
            if (spec_.exponents->size() != spec_.functions.size())
                throw ParseError(ParseErrorKind::exponent_condition, 1, 1,
                                 "exponent count differs from function count");
            Rational s = 0;
            for (const auto& p : *spec_.exponents) {
                if (sgn(p) <= 0)
                    throw ParseError(ParseErrorKind::exponent_condition, 1, 1,
                                     "exponents must be positive");
                s += 1 / p;
            }
            if (s != 1)
                throw ParseError(ParseErrorKind::exponent_condition, 1, 1,
                                 "exponent reciprocals sum to " + rat_str(s) + ", need 1");
        }
    }

    Lexer lex_;
    OperatorSpec spec_;
};

}  // namespace

std::vector<OperatorSpec> parse_operators(const std::string& text) {
    Parser p(text);
    return p.parse_file();
}

OperatorSpec parse_operator(const std::string& text) {
    auto all = parse_operators(text);
    if (all.size() != 1)
        throw ParseError(ParseErrorKind::syntax, 1, 1, "expected exactly one operator block");
    return all.front();
}

// ---------------- pretty printer ----------------

static std::string print_jet(const OperatorSpec& spec, const JetVar& v) {
    const FunctionDecl* f = spec.find(v.symbol);
    std::string ref = v.symbol;
    if (!f || f->arity > 1) ref += "[" + std::to_string(v.component) + "]";
    if (v.index.order() == 0) return ref;
    return "d" + v.index.str() + "(" + ref + ")";
}

std::string pretty_print(const OperatorSpec& spec) {
    std::ostringstream os;
    os << "operator \"" << spec.name << "\" {\n";
    os << "  dims " << spec.dim << ";\n";
    os << "  functions ";
    for (size_t i = 0; i < spec.functions.size(); ++i) {
        const auto& f = spec.functions[i];
        if (i) os << ", ";
        os << f.name << ": R^" << f.arity;
        if (f.constraint != Constraint::none) os << " constraint " << constraint_str(f.constraint);
    }
    os << ";\n";
    if (spec.exponents) {
        os << "  exponents [";
        for (size_t i = 0; i < spec.exponents->size(); ++i) {
            if (i) os << ", ";
            os << rat_str((*spec.exponents)[i]);
        }
        os << "];\n";
    }
    for (const auto& e : spec.expectations)
        os << "  expect " << e.key << " " << (e.value ? "true" : "false") << ";\n";
    os << "  expr = ";
    if (spec.body.is_zero()) {
        os << "0";
    } else {
        bool first = true;
        for (const auto& m : spec.body.monomials()) {
            Rational c = m.coeff;
            bool neg = sgn(c) < 0;
            if (neg) c = -c;
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            first = false;
            bool printed = !((c == 1) && !m.factors.empty());
            if (printed) os << rat_str(c);
            for (size_t i = 0; i < m.factors.size(); ++i) {
                if (printed || i > 0) os << "*";
                printed = true;
                os << print_jet(spec, m.factors[i].first);
                if (m.factors[i].second > 1) os << "^" << m.factors[i].second;
            }
        }
    }
    os << ";\n}\n";
    return os.str();
}

std::string pretty_print(const std::vector<OperatorSpec>& specs) {
    std::string out;
    for (size_t i = 0; i < specs.size(); ++i) {
        if (i) out += "\n";
        out += pretty_print(specs[i]);
    }
    return out;
}

}  // namespace cclab
