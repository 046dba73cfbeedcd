#include "dkit/expr.hpp"

#include <algorithm>
#include <sstream>

namespace dkit {

static Expr make(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr Expr::num(const Rational& q) {
    Node n;
    n.kind = Kind::Num;
    n.num = q;
    return make(std::move(n));
}

Expr Expr::param(const std::string& nm) {
    Node n;
    n.kind = Kind::Param;
    n.name = nm;
    return make(std::move(n));
}

Expr Expr::var(const std::string& nm) {
    Node n;
    n.kind = Kind::Var;
    n.name = nm;
    return make(std::move(n));
}

// Flatten nested Add/Mul and fold numeric children; construction-time
// hygiene, not normalization.
static void flatten_into(Kind k, const Expr& e, std::vector<Expr>& out) {
    if (e.valid() && e.kind() == k) {
        for (const auto& kid : e.kids()) flatten_into(k, kid, out);
    } else {
        out.push_back(e);
    }
}

Expr Expr::add(std::vector<Expr> kids) {
    std::vector<Expr> flat;
    for (const auto& k : kids) flatten_into(Kind::Add, k, flat);
    std::vector<Expr> kept;
    Rational cst(0);
    bool saw_cst = false;
    for (auto& k : flat) {
        if (k.is_num()) { cst += k.num_value(); saw_cst = true; }
        else kept.push_back(k);
    }
    if (saw_cst && cst != 0) kept.push_back(Expr::num(cst));
    if (kept.empty()) return Expr::integer(0);
    if (kept.size() == 1) return kept[0];
    Node n;
    n.kind = Kind::Add;
    n.kids = std::move(kept);
    return make(std::move(n));
}

Expr Expr::mul(std::vector<Expr> kids) {
    std::vector<Expr> flat;
    for (const auto& k : kids) flatten_into(Kind::Mul, k, flat);
    std::vector<Expr> kept;
    Rational cst(1);
    for (auto& k : flat) {
        if (k.is_num()) cst *= k.num_value();
        else kept.push_back(k);
    }
    if (cst == 0) return Expr::integer(0);
    if (cst != 1) kept.insert(kept.begin(), Expr::num(cst));
    if (kept.empty()) return Expr::integer(1);
    if (kept.size() == 1) return kept[0];
    Node n;
    n.kind = Kind::Mul;
    n.kids = std::move(kept);
    return make(std::move(n));
}

Expr Expr::pow(const Expr& base, const Expr& exponent) {
    if (exponent.is_num(1)) return base;
    if (exponent.is_num(0)) return Expr::integer(1);
    if (base.is_num(1)) return Expr::integer(1);
    if (base.is_num() && exponent.is_num() && is_integer(exponent.num_value())) {
        const Rational& q = exponent.num_value();
        if (numerator(q) >= -64 && numerator(q) <= 64 && !(base.is_num(0) && q < 0))
            return Expr::num(rat_pow(base.num_value(), numerator(q).convert_to<long>()));
    }
    Node n;
    n.kind = Kind::Pow;
    n.kids = {base, exponent};
    return make(std::move(n));
}

static Expr unary(Kind k, const Expr& a) {
    Node n;
    n.kind = k;
    n.kids = {a};
    return make(std::move(n));
}

Expr Expr::exp_(const Expr& a) {
    if (a.is_num(0)) return Expr::integer(1);
    return unary(Kind::Exp, a);
}
Expr Expr::ln(const Expr& a) {
    if (a.is_num(1)) return Expr::integer(0);
    return unary(Kind::Ln, a);
}
Expr Expr::sin_(const Expr& a) {
    if (a.is_num(0)) return Expr::integer(0);
    return unary(Kind::Sin, a);
}
Expr Expr::cos_(const Expr& a) {
    if (a.is_num(0)) return Expr::integer(1);
    return unary(Kind::Cos, a);
}
Expr Expr::tan_(const Expr& a) {
    if (a.is_num(0)) return Expr::integer(0);
    return unary(Kind::Tan, a);
}

Expr Expr::antideriv(const std::string& var, const Expr& integrand,
                     const Rational& base_re, const Rational& base_im) {
    Node n;
    n.kind = Kind::AntiDeriv;
    n.name = var;
    n.kids = {integrand};
    n.base_re = base_re;
    n.base_im = base_im;
    return make(std::move(n));
}

Expr Expr::operator-() const { return Expr::mul({Expr::integer(-1), *this}); }

int compare(const Expr& a, const Expr& b) {
    if (a.ptr() == b.ptr()) return 0;
    int ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
    if (ka != kb) return ka < kb ? -1 : 1;
    const Node& na = a.node();
    const Node& nb = b.node();
    switch (a.kind()) {
        case Kind::Num:
            if (na.num == nb.num) return 0;
            return na.num < nb.num ? -1 : 1;
        case Kind::Param:
        case Kind::Var: {
            int c = na.name.compare(nb.name);
            return c < 0 ? -1 : (c == 0 ? 0 : 1);
        }
        case Kind::AntiDeriv: {
            int c = na.name.compare(nb.name);
            if (c != 0) return c < 0 ? -1 : 1;
            if (na.base_re != nb.base_re) return na.base_re < nb.base_re ? -1 : 1;
            if (na.base_im != nb.base_im) return na.base_im < nb.base_im ? -1 : 1;
            break;
        }
        default:
            break;
    }
    size_t n = std::min(na.kids.size(), nb.kids.size());
    for (size_t i = 0; i < n; ++i) {
        int c = compare(na.kids[i], nb.kids[i]);
        if (c != 0) return c;
    }
    if (na.kids.size() != nb.kids.size())
        return na.kids.size() < nb.kids.size() ? -1 : 1;
    return 0;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

enum Prec { P_ADD = 0, P_MUL = 1, P_POW = 2, P_ATOM = 3 };

bool is_negative_leading(const Expr& e) {
    if (e.is_num()) return e.num_value() < 0;
    if (e.kind() == Kind::Mul && e.kids()[0].is_num())
        return e.kids()[0].num_value() < 0;
    return false;
}

int prec_of(const Expr& e) {
    switch (e.kind()) {
        case Kind::Num:
            if (e.num_value() < 0) return P_ADD;
            if (!is_integer(e.num_value())) return P_MUL;
            return P_ATOM;
        case Kind::Add: return P_ADD;
        case Kind::Mul: return is_negative_leading(e) ? P_ADD : P_MUL;
        case Kind::Pow:
            if (e.kids()[1].is_num() && e.kids()[1].num_value() == Rational(1, 2))
                return P_ATOM;  // printed as sqrt(...)
            return P_POW;
        default: return P_ATOM;
    }
}

void print_rec(std::ostream& os, const Expr& e, int min_prec);

// Print e, parenthesizing when its precedence is below min_prec.
void print_operand(std::ostream& os, const Expr& e, int min_prec) {
    if (prec_of(e) < min_prec) {
        os << '(';
        print_rec(os, e, P_ADD);
        os << ')';
    } else {
        print_rec(os, e, min_prec);
    }
}

// Strip a leading negative numeric factor, returning |coeff| * rest.
Expr strip_negation(const Expr& e) {
    if (e.is_num()) return Expr::num(-e.num_value());
    const auto& kids = e.kids();
    std::vector<Expr> rest(kids.begin() + 1, kids.end());
    Rational c = -kids[0].num_value();
    if (c != 1) rest.insert(rest.begin(), Expr::num(c));
    return Expr::mul(std::move(rest));
}

void print_rec(std::ostream& os, const Expr& e, int min_prec) {
    switch (e.kind()) {
        case Kind::Num:
            os << rat_str(e.num_value());
            return;
        case Kind::Param:
        case Kind::Var:
            os << e.name();
            return;
        case Kind::Add: {
            bool first = true;
            for (const auto& k : e.kids()) {
                if (!first && is_negative_leading(k)) {
                    os << '-';
                    print_operand(os, strip_negation(k), P_MUL);
                } else {
                    if (!first) os << '+';
                    print_operand(os, k, first ? P_ADD : P_MUL);
                }
                first = false;
            }
            return;
        }
        case Kind::Mul: {
            std::vector<Expr> num_f, den_f;
            Rational coeff(1);
            for (const auto& k : e.kids()) {
                if (k.is_num()) { coeff *= k.num_value(); continue; }
                if (k.kind() == Kind::Pow && k.kids()[1].is_num() &&
                    is_integer(k.kids()[1].num_value()) &&
                    k.kids()[1].num_value() < 0) {
                    Rational ne = -k.kids()[1].num_value();
                    den_f.push_back(ne == 1 ? k.kids()[0]
                                            : Expr::pow(k.kids()[0], Expr::num(ne)));
                } else {
                    num_f.push_back(k);
                }
            }
            bool neg = coeff < 0;
            if (neg) coeff = -coeff;
            if (denominator(coeff) != 1)
                den_f.insert(den_f.begin(), Expr::num(Rational(denominator(coeff))));
            Rational cnum(numerator(coeff));

            if (neg) os << '-';
            bool first = true;
            if (cnum != 1 || num_f.empty()) {
                os << rat_str(cnum);
                first = false;
            }
            for (const auto& f : num_f) {
                if (!first) os << '*';
                print_operand(os, f, P_POW);
                first = false;
            }
            for (const auto& f : den_f) {
                os << '/';
                print_operand(os, f, P_POW);
            }
            return;
        }
        case Kind::Pow: {
            const Expr& b = e.kids()[0];
            const Expr& x = e.kids()[1];
            if (x.is_num() && x.num_value() == Rational(1, 2)) {
                os << "sqrt(";
                print_rec(os, b, P_ADD);
                os << ')';
                return;
            }
            if (x.is_num() && is_integer(x.num_value()) && x.num_value() < 0) {
                os << "1/";
                Rational ne = -x.num_value();
                print_operand(os, ne == 1 ? b : Expr::pow(b, Expr::num(ne)), P_POW);
                return;
            }
            print_operand(os, b, P_ATOM);
            os << '^';
            print_operand(os, x, P_ATOM);
            return;
        }
        case Kind::Exp: os << "exp("; print_rec(os, e.kids()[0], P_ADD); os << ')'; return;
        case Kind::Ln:  os << "ln(";  print_rec(os, e.kids()[0], P_ADD); os << ')'; return;
        case Kind::Sin: os << "sin("; print_rec(os, e.kids()[0], P_ADD); os << ')'; return;
        case Kind::Cos: os << "cos("; print_rec(os, e.kids()[0], P_ADD); os << ')'; return;
        case Kind::Tan: os << "tan("; print_rec(os, e.kids()[0], P_ADD); os << ')'; return;
        case Kind::AntiDeriv:
            os << "antideriv(" << e.name() << ", ";
            print_rec(os, e.kids()[0], P_ADD);
            os << ", " << rat_str(e.node().base_re);
            if (e.node().base_im != 0) os << ", " << rat_str(e.node().base_im);
            os << ')';
            return;
    }
}

void wrap_print(std::ostream& os, const Expr& e, int min_prec) {
    print_operand(os, e, min_prec);
}

} // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    wrap_print(os, e, P_ADD);
    return os.str();
}

// ---------------------------------------------------------------------------
// Name collection
// ---------------------------------------------------------------------------

static void collect_names(const Expr& e, std::set<std::string>& out, bool vars_only) {
    switch (e.kind()) {
        case Kind::Num: return;
        case Kind::Param:
            if (!vars_only) out.insert(e.name());
            return;
        case Kind::Var:
            out.insert(e.name());
            return;
        default:
            if (e.kind() == Kind::AntiDeriv) out.insert(e.name());
            for (const auto& k : e.kids()) collect_names(k, out, vars_only);
    }
}

std::set<std::string> free_names(const Expr& e) {
    std::set<std::string> out;
    collect_names(e, out, false);
    return out;
}

std::set<std::string> variables_of(const Expr& e) {
    std::set<std::string> out;
    collect_names(e, out, true);
    return out;
}

bool mentions(const Expr& e, const std::string& name) {
    switch (e.kind()) {
        case Kind::Num: return false;
        case Kind::Param:
        case Kind::Var: return e.name() == name;
        default:
            if (e.kind() == Kind::AntiDeriv && e.name() == name) return true;
            for (const auto& k : e.kids())
                if (mentions(k, name)) return true;
            return false;
    }
}

} // namespace dkit
