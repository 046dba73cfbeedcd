#ifndef DKIT_EXPR_HPP
#define DKIT_EXPR_HPP

#include "dkit/rational.hpp"

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dkit {

// Immutable symbolic expression tree. Exact rational coefficients only;
// floating point never enters the tree.
enum class Kind {
    Num,       // exact rational constant (integer when denominator == 1)
    Param,     // named parameter, derivative 0
    Var,       // named variable
    Add,       // n-ary sum, n >= 2
    Mul,       // n-ary product, n >= 2
    Pow,       // kids[0] ^ kids[1]
    Exp,
    Ln,
    Sin,
    Cos,
    Tan,
    AntiDeriv  // formal antiderivative of kids[0] w.r.t. `name`, from exact basepoint
};

struct Node;
class Expr;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    Rational num;                 // Kind::Num
    std::string name;             // Param/Var; AntiDeriv integration variable
    std::vector<Expr> kids;
    Rational base_re, base_im;    // AntiDeriv basepoint (exact complex)
};

class Expr {
public:
    Expr() : p_(nullptr) {}
    explicit Expr(NodePtr p) : p_(std::move(p)) {}

    bool valid() const { return p_ != nullptr; }
    const Node& node() const { return *p_; }
    const NodePtr& ptr() const { return p_; }
    Kind kind() const { return p_->kind; }

    bool is_num() const { return p_->kind == Kind::Num; }
    bool is_num(long long v) const { return is_num() && p_->num == v; }
    const Rational& num_value() const { return p_->num; }
    const std::string& name() const { return p_->name; }
    const std::vector<Expr>& kids() const { return p_->kids; }

    static Expr num(const Rational& q);
    static Expr integer(long long v) { return num(Rational(v)); }
    static Expr param(const std::string& n);
    static Expr var(const std::string& n);
    static Expr add(std::vector<Expr> kids);
    static Expr mul(std::vector<Expr> kids);
    static Expr pow(const Expr& base, const Expr& exponent);
    static Expr pow(const Expr& base, long long e) { return pow(base, integer(e)); }
    static Expr exp_(const Expr& a);
    static Expr ln(const Expr& a);
    static Expr sqrt_(const Expr& a) { return pow(a, num(Rational(1, 2))); }
    static Expr sin_(const Expr& a);
    static Expr cos_(const Expr& a);
    static Expr tan_(const Expr& a);
    static Expr antideriv(const std::string& var, const Expr& integrand,
                          const Rational& base_re = Rational(0),
                          const Rational& base_im = Rational(0));

    Expr operator-() const;
    Expr operator+(const Expr& o) const { return add({*this, o}); }
    Expr operator-(const Expr& o) const { return add({*this, -o}); }
    Expr operator*(const Expr& o) const { return mul({*this, o}); }
    Expr operator/(const Expr& o) const { return mul({*this, pow(o, -1)}); }

private:
    NodePtr p_;
};

inline Expr operator+(long long a, const Expr& b) { return Expr::integer(a) + b; }
inline Expr operator-(long long a, const Expr& b) { return Expr::integer(a) - b; }
inline Expr operator*(long long a, const Expr& b) { return Expr::integer(a) * b; }

// Total structural order; 0 when structurally identical.
int compare(const Expr& a, const Expr& b);
inline bool identical(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

// Deterministic text form; reparses to the same tree up to normalization.
std::string to_string(const Expr& e);

// Free variable and parameter names (the integration variable of an
// AntiDeriv counts as free: the node is a function of it).
std::set<std::string> free_names(const Expr& e);
bool mentions(const Expr& e, const std::string& name);

// All variable names occurring in e.
std::set<std::string> variables_of(const Expr& e);

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg), offset(off) {}
};

// Names listed here parse as variables; everything else is a parameter.
// "x" and "r" are interchangeable aliases for the independent variable and
// both map to `indep`. "zeta" (or the UTF-8 letter) is the dependent variable.
struct ParseContext {
    std::string indep = "x";
    std::set<std::string> extra_vars;
    bool is_variable(const std::string& n) const {
        return n == indep || n == "x" || n == "r" || n == "zeta" ||
               extra_vars.count(n) > 0;
    }
    std::string canonical(const std::string& n) const {
        if (n == "x" || n == "r" || n == indep) return indep;
        return n;
    }
};

Expr parse(const std::string& text, const ParseContext& ctx = ParseContext{});

} // namespace dkit

#endif
