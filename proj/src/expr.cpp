#include "ptqes/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace ptqes {

namespace {

ExprNodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

bool is_const(const ExprNodePtr& n) { return n->kind == NodeKind::Constant; }
bool is_const_value(const ExprNodePtr& n, Complex c) {
    return n->kind == NodeKind::Constant && n->value == c;
}

// principal branch arg in (-pi, pi]: a real axis value belongs to the upper
// side, so scrub negative-zero imaginary parts before log/pow
Complex branch_input(Complex z) {
    if (z.imag() == 0.0) return Complex(z.real(), 0.0);
    return z;
}

Complex pow_by_multiplication(Complex base, int exponent) {
    bool invert = exponent < 0;
    unsigned long long e = invert ? -static_cast<long long>(exponent) : exponent;
    Complex acc(1.0, 0.0);
    Complex factor = base;
    while (e != 0) {
        if (e & 1ull) acc *= factor;
        factor *= factor;
        e >>= 1ull;
    }
    return invert ? Complex(1.0, 0.0) / acc : acc;
}

}  // namespace

Expr Expr::constant(Complex c) {
    return Expr(make_node({.kind = NodeKind::Constant, .value = c}));
}

Expr Expr::variable() { return Expr(make_node({.kind = NodeKind::Variable})); }

Expr Expr::parameter(const std::string& name) {
    return Expr(make_node({.kind = NodeKind::Parameter, .name = name}));
}

bool Expr::is_constant(Complex c) const { return node_ && is_const_value(node_, c); }

Expr operator-(const Expr& u) {
    if (is_const(u.ptr())) return Expr::constant(-u.node().value);
    if (u.node().kind == NodeKind::Negate) return Expr(u.node().a);
    return Expr(make_node({.kind = NodeKind::Negate, .a = u.ptr()}));
}

Expr operator+(const Expr& u, const Expr& v) {
    if (is_const(u.ptr()) && is_const(v.ptr()))
        return Expr::constant(u.node().value + v.node().value);
    if (u.is_constant({0.0, 0.0})) return v;
    if (v.is_constant({0.0, 0.0})) return u;
    return Expr(make_node({.kind = NodeKind::Add, .a = u.ptr(), .b = v.ptr()}));
}

Expr operator-(const Expr& u, const Expr& v) {
    if (is_const(u.ptr()) && is_const(v.ptr()))
        return Expr::constant(u.node().value - v.node().value);
    if (v.is_constant({0.0, 0.0})) return u;
    if (u.is_constant({0.0, 0.0})) return -v;
    return Expr(make_node({.kind = NodeKind::Subtract, .a = u.ptr(), .b = v.ptr()}));
}

Expr operator*(const Expr& u, const Expr& v) {
    if (is_const(u.ptr()) && is_const(v.ptr()))
        return Expr::constant(u.node().value * v.node().value);
    if (u.is_constant({0.0, 0.0}) || v.is_constant({0.0, 0.0})) return Expr::constant(0.0);
    if (u.is_constant({1.0, 0.0})) return v;
    if (v.is_constant({1.0, 0.0})) return u;
    return Expr(make_node({.kind = NodeKind::Multiply, .a = u.ptr(), .b = v.ptr()}));
}

Expr operator/(const Expr& u, const Expr& v) {
    if (is_const(u.ptr()) && is_const(v.ptr()) && v.node().value != Complex(0.0, 0.0))
        return Expr::constant(u.node().value / v.node().value);
    if (v.is_constant({1.0, 0.0})) return u;
    return Expr(make_node({.kind = NodeKind::Divide, .a = u.ptr(), .b = v.ptr()}));
}

Expr pow_int(const Expr& base, int exponent) {
    if (exponent == 0) return Expr::constant(1.0);
    if (exponent == 1) return base;
    if (is_const(base.ptr()) && (base.node().value != Complex(0.0, 0.0) || exponent > 0))
        return Expr::constant(pow_by_multiplication(base.node().value, exponent));
    return Expr(make_node({.kind = NodeKind::PowerInt, .exponent = exponent, .a = base.ptr()}));
}

Expr pow_general(const Expr& base, const Expr& exponent) {
    if (is_const(base.ptr()) && is_const(exponent.ptr()) &&
        base.node().value != Complex(0.0, 0.0))
        return Expr::constant(
            std::pow(branch_input(base.node().value), exponent.node().value));
    return Expr(make_node({.kind = NodeKind::Power, .a = base.ptr(), .b = exponent.ptr()}));
}

Expr exp(const Expr& u) {
    if (is_const(u.ptr())) return Expr::constant(std::exp(u.node().value));
    return Expr(make_node({.kind = NodeKind::Exp, .a = u.ptr()}));
}

Expr log(const Expr& u) {
    if (is_const(u.ptr()) && u.node().value != Complex(0.0, 0.0))
        return Expr::constant(std::log(branch_input(u.node().value)));
    return Expr(make_node({.kind = NodeKind::Log, .a = u.ptr()}));
}

Expr sin(const Expr& u) {
    if (is_const(u.ptr())) return Expr::constant(std::sin(u.node().value));
    return Expr(make_node({.kind = NodeKind::Sin, .a = u.ptr()}));
}

Expr cos(const Expr& u) {
    if (is_const(u.ptr())) return Expr::constant(std::cos(u.node().value));
    return Expr(make_node({.kind = NodeKind::Cos, .a = u.ptr()}));
}

void Bindings::bind_real(const std::string& name, double value) {
    map_[name] = {Complex(value, 0.0), true};
}

void Bindings::bind_complex(const std::string& name, Complex value) {
    map_[name] = {value, false};
}

bool Bindings::contains(const std::string& name) const { return map_.count(name) != 0; }

bool Bindings::is_real(const std::string& name) const {
    auto it = map_.find(name);
    return it == map_.end() ? true : it->second.second;
}

Complex Bindings::value(const std::string& name) const {
    auto it = map_.find(name);
    if (it == map_.end()) throw EvalError("unbound parameter '" + name + "'");
    return it->second.first;
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

enum class TokenKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t offset;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& current() const { return current_; }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            current_ = {TokenKind::End, "", start};
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            lex_number(start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            current_ = {TokenKind::Ident, src_.substr(start, pos_ - start), start};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': current_ = {TokenKind::Plus, "+", start}; return;
            case '-': current_ = {TokenKind::Minus, "-", start}; return;
            case '*': current_ = {TokenKind::Star, "*", start}; return;
            case '/': current_ = {TokenKind::Slash, "/", start}; return;
            case '^': current_ = {TokenKind::Caret, "^", start}; return;
            case '(': current_ = {TokenKind::LParen, "(", start}; return;
            case ')': current_ = {TokenKind::RParen, ")", start}; return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start,
                                 {"number", "identifier", "operator", "parenthesis"});
        }
    }

private:
    void lex_number(std::size_t start) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // the 'e' belongs to an identifier, not this number
            }
        }
        std::string text = src_.substr(start, pos_ - start);
        current_ = {TokenKind::Number, text, start, std::stod(text)};
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token current_{TokenKind::End, "", 0};
};

class Parser {
public:
    explicit Parser(const std::string& src) : lexer_(src) {}

    Expr parse_all() {
        Expr e = parse_expr();
        if (lexer_.current().kind != TokenKind::End)
            throw ParseError("trailing input", lexer_.current().offset,
                             {"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

private:
    Expr parse_expr() {
        Expr e = parse_term();
        while (true) {
            TokenKind k = lexer_.current().kind;
            if (k == TokenKind::Plus) {
                lexer_.advance();
                e = e + parse_term();
            } else if (k == TokenKind::Minus) {
                lexer_.advance();
                e = e - parse_term();
            } else {
                return e;
            }
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (true) {
            TokenKind k = lexer_.current().kind;
            if (k == TokenKind::Star) {
                lexer_.advance();
                e = e * parse_factor();
            } else if (k == TokenKind::Slash) {
                lexer_.advance();
                e = e / parse_factor();
            } else {
                return e;
            }
        }
    }

    Expr parse_factor() {
        if (lexer_.current().kind == TokenKind::Minus) {
            lexer_.advance();
            return -parse_factor();
        }
        Expr base = parse_atom();
        if (lexer_.current().kind == TokenKind::Caret) {
            lexer_.advance();
            Expr expo = parse_factor();  // right-associative
            // literal integer exponents become exact, branch-cut free
            // integer powers
            if (expo.node().kind == NodeKind::Constant) {
                Complex c = expo.node().value;
                if (c.imag() == 0.0 && c.real() == std::floor(c.real()) &&
                    std::abs(c.real()) < 1e9)
                    return pow_int(base, static_cast<int>(c.real()));
            }
            return pow_general(base, expo);
        }
        return base;
    }

    Expr parse_atom() {
        const Token t = lexer_.current();
        switch (t.kind) {
            case TokenKind::Number:
                lexer_.advance();
                return Expr::constant(t.number);
            case TokenKind::LParen: {
                lexer_.advance();
                Expr e = parse_expr();
                expect(TokenKind::RParen, ")");
                return e;
            }
            case TokenKind::Ident: {
                lexer_.advance();
                if (t.text == "i") return Expr::imaginary_unit();
                if (t.text == "x") return Expr::variable();
                if (lexer_.current().kind == TokenKind::LParen) {
                    lexer_.advance();
                    Expr arg = parse_expr();
                    expect(TokenKind::RParen, ")");
                    if (t.text == "exp") return exp(arg);
                    if (t.text == "log") return log(arg);
                    if (t.text == "sin") return sin(arg);
                    if (t.text == "cos") return cos(arg);
                    throw ParseError("unknown function '" + t.text + "'", t.offset,
                                     {"exp", "log", "sin", "cos"});
                }
                return Expr::parameter(t.text);
            }
            default:
                throw ParseError("expected an operand", t.offset,
                                 {"number", "i", "x", "identifier", "("});
        }
    }

    void expect(TokenKind kind, const std::string& what) {
        if (lexer_.current().kind != kind)
            throw ParseError("expected '" + what + "'", lexer_.current().offset, {what});
        lexer_.advance();
    }

    Lexer lexer_;
};

}  // namespace

Expr parse(const std::string& source) { return Parser(source).parse_all(); }

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

Expr differentiate(const Expr& e) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case NodeKind::Constant:
        case NodeKind::Parameter:
        case NodeKind::ConjParam:
            return Expr::constant(0.0);
        case NodeKind::Variable:
            return Expr::constant(1.0);
        case NodeKind::Negate:
            return -differentiate(Expr(n.a));
        case NodeKind::Add:
            return differentiate(Expr(n.a)) + differentiate(Expr(n.b));
        case NodeKind::Subtract:
            return differentiate(Expr(n.a)) - differentiate(Expr(n.b));
        case NodeKind::Multiply:
            return differentiate(Expr(n.a)) * Expr(n.b) + Expr(n.a) * differentiate(Expr(n.b));
        case NodeKind::Divide:
            return (differentiate(Expr(n.a)) * Expr(n.b) -
                    Expr(n.a) * differentiate(Expr(n.b))) /
                   pow_int(Expr(n.b), 2);
        case NodeKind::PowerInt:
            return Expr::constant(static_cast<double>(n.exponent)) *
                   pow_int(Expr(n.a), n.exponent - 1) * differentiate(Expr(n.a));
        case NodeKind::Power: {
            Expr base(n.a), expo(n.b);
            // (u^v)' = u^v (v' log u + v u' / u); the log term folds away for
            // x-independent exponents
            return pow_general(base, expo) *
                   (differentiate(expo) * log(base) + expo * differentiate(base) / base);
        }
        case NodeKind::Exp:
            return exp(Expr(n.a)) * differentiate(Expr(n.a));
        case NodeKind::Log:
            return differentiate(Expr(n.a)) / Expr(n.a);
        case NodeKind::Sin:
            return cos(Expr(n.a)) * differentiate(Expr(n.a));
        case NodeKind::Cos:
            return -(sin(Expr(n.a)) * differentiate(Expr(n.a)));
    }
    throw Error("unreachable node kind in differentiate");
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

Complex evaluate(const Expr& e, double x, const Bindings& bindings) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case NodeKind::Constant:
            return n.value;
        case NodeKind::Variable:
            return Complex(x, 0.0);
        case NodeKind::Parameter:
            return bindings.value(n.name);
        case NodeKind::ConjParam:
            return std::conj(bindings.value(n.name));
        case NodeKind::Negate:
            return -evaluate(Expr(n.a), x, bindings);
        case NodeKind::Add:
            return evaluate(Expr(n.a), x, bindings) + evaluate(Expr(n.b), x, bindings);
        case NodeKind::Subtract:
            return evaluate(Expr(n.a), x, bindings) - evaluate(Expr(n.b), x, bindings);
        case NodeKind::Multiply:
            return evaluate(Expr(n.a), x, bindings) * evaluate(Expr(n.b), x, bindings);
        case NodeKind::Divide: {
            Complex num = evaluate(Expr(n.a), x, bindings);
            Complex den = evaluate(Expr(n.b), x, bindings);
            if (den == Complex(0.0, 0.0)) throw EvalError("division by zero", x);
            return num / den;
        }
        case NodeKind::PowerInt: {
            Complex base = evaluate(Expr(n.a), x, bindings);
            if (base == Complex(0.0, 0.0) && n.exponent < 0)
                throw EvalError("zero raised to a negative power", x);
            return pow_by_multiplication(base, n.exponent);
        }
        case NodeKind::Power: {
            Complex base = evaluate(Expr(n.a), x, bindings);
            Complex expo = evaluate(Expr(n.b), x, bindings);
            if (base == Complex(0.0, 0.0)) {
                if (expo.real() > 0.0 && expo.imag() == 0.0) return Complex(0.0, 0.0);
                throw EvalError("zero base with non-positive exponent", x);
            }
            return std::pow(branch_input(base), expo);  // principal branch
        }
        case NodeKind::Exp:
            return std::exp(evaluate(Expr(n.a), x, bindings));
        case NodeKind::Log: {
            Complex arg = evaluate(Expr(n.a), x, bindings);
            if (arg == Complex(0.0, 0.0)) throw EvalError("log of zero", x);
            return std::log(branch_input(arg));  // principal branch
        }
        case NodeKind::Sin:
            return std::sin(evaluate(Expr(n.a), x, bindings));
        case NodeKind::Cos:
            return std::cos(evaluate(Expr(n.a), x, bindings));
    }
    throw Error("unreachable node kind in evaluate");
}

// ---------------------------------------------------------------------------
// PT image
// ---------------------------------------------------------------------------

Expr conjugate_reflect(const Expr& e, const Bindings& bindings) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case NodeKind::Constant:
            return Expr::constant(std::conj(n.value));
        case NodeKind::Variable:
            return -Expr::variable();
        case NodeKind::Parameter:
            if (bindings.is_real(n.name)) return Expr(e.ptr());
            return Expr(make_node({.kind = NodeKind::ConjParam, .name = n.name}));
        case NodeKind::ConjParam:
            return Expr::parameter(n.name);
        case NodeKind::Negate:
            return -conjugate_reflect(Expr(n.a), bindings);
        case NodeKind::Add:
            return conjugate_reflect(Expr(n.a), bindings) +
                   conjugate_reflect(Expr(n.b), bindings);
        case NodeKind::Subtract:
            return conjugate_reflect(Expr(n.a), bindings) -
                   conjugate_reflect(Expr(n.b), bindings);
        case NodeKind::Multiply:
            return conjugate_reflect(Expr(n.a), bindings) *
                   conjugate_reflect(Expr(n.b), bindings);
        case NodeKind::Divide:
            return conjugate_reflect(Expr(n.a), bindings) /
                   conjugate_reflect(Expr(n.b), bindings);
        case NodeKind::PowerInt:
            return pow_int(conjugate_reflect(Expr(n.a), bindings), n.exponent);
        case NodeKind::Power:
            // principal-branch identity conj(u^v) = conj(u)^conj(v) holds off
            // the negative real axis of u
            return pow_general(conjugate_reflect(Expr(n.a), bindings),
                               conjugate_reflect(Expr(n.b), bindings));
        case NodeKind::Exp:
            return exp(conjugate_reflect(Expr(n.a), bindings));
        case NodeKind::Log:
            return log(conjugate_reflect(Expr(n.a), bindings));
        case NodeKind::Sin:
            return sin(conjugate_reflect(Expr(n.a), bindings));
        case NodeKind::Cos:
            return cos(conjugate_reflect(Expr(n.a), bindings));
    }
    throw Error("unreachable node kind in conjugate_reflect");
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::Add:
        case NodeKind::Subtract: return 1;
        case NodeKind::Multiply:
        case NodeKind::Divide: return 2;
        case NodeKind::Negate: return 3;
        case NodeKind::PowerInt:
        case NodeKind::Power: return 4;
        default: return 5;
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(Complex c) {
    // emits a grammar-parseable literal
    if (c.imag() == 0.0) {
        if (c.real() < 0.0) return "(-" + format_double(-c.real()) + ")";
        return format_double(c.real());
    }
    if (c == Complex(0.0, 1.0)) return "i";
    std::string re = format_double(c.real());
    std::string im = format_double(std::abs(c.imag()));
    std::string sign = c.imag() < 0.0 ? "-" : "+";
    if (c.real() == 0.0)
        return c.imag() < 0.0 ? "(-" + im + "*i)" : im + "*i";
    return "(" + re + sign + im + "*i)";
}

std::string print_node(const ExprNode& n);

std::string print_child(const ExprNodePtr& child, int parent_prec, bool parenthesize_equal) {
    std::string s = print_node(*child);
    int child_prec = precedence(child->kind);
    if (child_prec < parent_prec || (child_prec == parent_prec && parenthesize_equal))
        return "(" + s + ")";
    return s;
}

std::string print_node(const ExprNode& n) {
    switch (n.kind) {
        case NodeKind::Constant: return format_complex(n.value);
        case NodeKind::Variable: return "x";
        case NodeKind::Parameter: return n.name;
        case NodeKind::ConjParam: return "conj(" + n.name + ")";
        case NodeKind::Negate: return "-" + print_child(n.a, 3, false);
        case NodeKind::Add:
            return print_child(n.a, 1, false) + "+" + print_child(n.b, 1, true);
        case NodeKind::Subtract:
            return print_child(n.a, 1, false) + "-" + print_child(n.b, 1, true);
        case NodeKind::Multiply:
            return print_child(n.a, 2, false) + "*" + print_child(n.b, 2, true);
        case NodeKind::Divide:
            return print_child(n.a, 2, false) + "/" + print_child(n.b, 2, true);
        case NodeKind::PowerInt: {
            std::string base = print_child(n.a, 4, true);
            if (n.exponent < 0)
                return base + "^(-" + std::to_string(-n.exponent) + ")";
            return base + "^" + std::to_string(n.exponent);
        }
        case NodeKind::Power:
            return print_child(n.a, 4, true) + "^(" + print_node(*n.b) + ")";
        case NodeKind::Exp: return "exp(" + print_node(*n.a) + ")";
        case NodeKind::Log: return "log(" + print_node(*n.a) + ")";
        case NodeKind::Sin: return "sin(" + print_node(*n.a) + ")";
        case NodeKind::Cos: return "cos(" + print_node(*n.a) + ")";
    }
    return "?";
}

}  // namespace

std::string to_string(const Expr& e) { return print_node(e.node()); }

}  // namespace ptqes
