#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>

#include "ptqes/errors.hpp"

namespace ptqes {

using Complex = std::complex<double>;

// Expression trees for complex-valued functions of one real variable x with
// named parameters. Nodes are immutable and shared; every operation below is
// a pure function, so the same Expr may be evaluated from many threads.

enum class NodeKind {
    Constant,    // complex literal
    Variable,    // x
    Parameter,   // named parameter
    ConjParam,   // conjugated parameter reference (introduced by conjugate_reflect)
    Negate,
    Add,
    Subtract,
    Multiply,
    Divide,
    PowerInt,    // integer exponent, computed by repeated multiplication
    Power,       // general exponent, principal branch
    Exp,
    Log,
    Sin,
    Cos,
};

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    Complex value{};      // Constant
    std::string name;     // Parameter / ConjParam
    int exponent = 0;     // PowerInt
    ExprNodePtr a, b;     // children
};

class Expr {
public:
    Expr() = default;
    explicit Expr(ExprNodePtr node) : node_(std::move(node)) {}

    static Expr constant(Complex c);
    static Expr constant(double re) { return constant(Complex(re, 0.0)); }
    static Expr imaginary_unit() { return constant(Complex(0.0, 1.0)); }
    static Expr variable();
    static Expr parameter(const std::string& name);

    const ExprNode& node() const { return *node_; }
    const ExprNodePtr& ptr() const { return node_; }
    bool valid() const { return node_ != nullptr; }
    bool is_constant(Complex c) const;

private:
    ExprNodePtr node_;
};

// Construction helpers; literal arithmetic is constant-folded, and identity
// operands (adding 0, multiplying by 0 or 1, unit exponents) collapse so
// derivative trees stay small.
Expr operator-(const Expr& u);
Expr operator+(const Expr& u, const Expr& v);
Expr operator-(const Expr& u, const Expr& v);
Expr operator*(const Expr& u, const Expr& v);
Expr operator/(const Expr& u, const Expr& v);
Expr pow_int(const Expr& base, int exponent);
Expr pow_general(const Expr& base, const Expr& exponent);
Expr exp(const Expr& u);
Expr log(const Expr& u);
Expr sin(const Expr& u);
Expr cos(const Expr& u);

/// Parameter values plus the declared reality of each parameter. The PT image
/// of a parameterized expression is undefined without the reality flags; the
/// default is real.
class Bindings {
public:
    void bind_real(const std::string& name, double value);
    void bind_complex(const std::string& name, Complex value);

    bool contains(const std::string& name) const;
    bool is_real(const std::string& name) const;
    Complex value(const std::string& name) const;  // throws EvalError if unbound

    const std::map<std::string, std::pair<Complex, bool>>& entries() const { return map_; }

private:
    // name -> (value, declared_real)
    std::map<std::string, std::pair<Complex, bool>> map_;
};

/// Parse source text in the expression grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' factor)?
///   atom   := number | 'i' | 'x' | ident | ident '(' expr ')' | '(' expr ')'
/// Functions: exp, log, sin, cos. `i` is the imaginary unit and cannot be a
/// parameter name; `^` binds tighter than unary minus and associates right.
/// Integer literal exponents become PowerInt nodes.
Expr parse(const std::string& source);

/// d/dx by the standard rules; no simplification beyond constant folding.
Expr differentiate(const Expr& e);

Complex evaluate(const Expr& e, double x, const Bindings& bindings);

/// The PT image g(x) = conj(e(-x)): constants are conjugated, x becomes -x,
/// and parameters follow their declared reality (complex-declared parameters
/// are conjugated at evaluation time via ConjParam nodes).
Expr conjugate_reflect(const Expr& e, const Bindings& bindings);

/// Grammar-compatible text form (ConjParam prints as conj(name), which the
/// grammar does not accept back).
std::string to_string(const Expr& e);

}  // namespace ptqes
