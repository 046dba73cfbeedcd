#include "dkit/kernel.hpp"

#include <algorithm>

namespace dkit {

namespace {

AtomTable& tab() { return AtomTable::instance(); }

// Split a nonzero canonical fraction into content * unit where the unit has
// grlex leading coefficient 1. Content is rational because den is monic.
std::pair<Rational, Fraction> content_split(const Fraction& f) {
    Rational c = f.num.leading().second;
    Fraction unit(f.num.mul_scalar(Rational(1) / c), f.den, false);
    return {c, unit};
}

bool frac_is_constant(const Fraction& f) {
    return !f.num.has_variable_atoms() && !f.den.has_variable_atoms();
}

class Builder {
public:
    Fraction build(const Expr& e) {
        auto it = memo_.find(e.ptr().get());
        if (it != memo_.end()) return it->second;
        Fraction f = build_impl(e);
        memo_.emplace(e.ptr().get(), f);
        return f;
    }

private:
    std::map<const Node*, Fraction> memo_;

    Fraction build_impl(const Expr& e) {
        switch (e.kind()) {
            case Kind::Num:
                return Fraction::from_rational(e.num_value());
            case Kind::Param:
                return Fraction::from_poly(Poly::atom(tab().name_atom(e.name(), false)));
            case Kind::Var:
                return Fraction::from_poly(Poly::atom(tab().name_atom(e.name(), true)));
            case Kind::Add: {
                Fraction acc = Fraction::zero();
                for (const auto& k : e.kids()) acc = acc + build(k);
                return acc;
            }
            case Kind::Mul: {
                Fraction acc = Fraction::one();
                for (const auto& k : e.kids()) acc = acc * build(k);
                return acc;
            }
            case Kind::Pow:
                return build_pow(e.kids()[0], e.kids()[1]);
            case Kind::Exp:
                return build_exp(build(e.kids()[0]));
            case Kind::Ln: {
                Expr u = fraction_to_expr(build(e.kids()[0]));
                if (u.is_num(1)) return Fraction::zero();
                if (u.kind() == Kind::Exp) return build(u.kids()[0]);
                if (u.is_num(0)) throw std::domain_error("ln(0)");
                return Fraction::from_poly(
                    Poly::atom(tab().kernel_atom(AtomKind::LnK, u, Expr(), 1)));
            }
            case Kind::Sin:
            case Kind::Cos:
            case Kind::Tan: {
                Expr u = fraction_to_expr(build(e.kids()[0]));
                if (u.is_num(0)) {
                    return e.kind() == Kind::Cos ? Fraction::one() : Fraction::zero();
                }
                AtomKind k = e.kind() == Kind::Sin   ? AtomKind::SinK
                             : e.kind() == Kind::Cos ? AtomKind::CosK
                                                     : AtomKind::TanK;
                return Fraction::from_poly(Poly::atom(tab().kernel_atom(k, u, Expr(), 1)));
            }
            case Kind::AntiDeriv: {
                Expr g = fraction_to_expr(build(e.kids()[0]));
                AtomId a = tab().kernel_atom(AtomKind::AntiDerivK, g, Expr(), 1, e.name(),
                                             e.node().base_re, e.node().base_im);
                return Fraction::from_poly(Poly::atom(a));
            }
        }
        throw std::logic_error("unreachable expression kind");
    }

    Fraction build_pow(const Expr& base, const Expr& exponent) {
        Fraction fe = build(exponent);
        Fraction fb = build(base);
        if (fe.is_rational()) {
            Rational q = fe.rational_value();
            if (is_integer(q)) {
                if (fb.is_zero() && q < 0) throw std::domain_error("division by zero expression");
                return fb.pow(numerator(q).convert_to<long>());
            }
            long p = numerator(q).convert_to<long>();
            int d = denominator(q).convert_to<int>();
            Expr bx = fraction_to_expr(fb);
            if (bx.is_num()) {
                // exact positive rational roots only; principal branch
                const Rational& c = bx.num_value();
                Rational root;
                if (c > 0 && exact_root(c, static_cast<unsigned>(d), root) && root > 0)
                    return Fraction::from_rational(rat_pow(root, p));
                if (c == 0) {
                    if (p <= 0) throw std::domain_error("0 to non-positive fractional power");
                    return Fraction::zero();
                }
            }
            if (bx.kind() == Kind::Exp)
                return build_exp(build(bx.kids()[0]) * Fraction::from_rational(q));
            AtomId a = tab().kernel_atom(AtomKind::PowFrac, bx, Expr(), d);
            Fraction out = atom_power(a, p);
            out.reduce();
            return out;
        }
        // symbolic exponent: base^(q0 + c*unit)
        Expr bx = fraction_to_expr(fb);
        if (bx.kind() == Kind::Exp)
            return build_exp(build(bx.kids()[0]) * fe);
        Rational q0(0);
        Fraction sym = fe;
        if (fe.den.is_constant()) {
            // peel the rational constant term
            auto it = fe.num.t.find(Monomial{});
            if (it != fe.num.t.end()) {
                q0 = it->second / fe.den.constant_value();
                Poly rest = fe.num;
                rest.t.erase(Monomial{});
                sym = Fraction(std::move(rest), fe.den, false);
            }
        }
        Fraction out = Fraction::one();
        if (q0 != 0) out = build_pow_rational(bx, q0);
        auto [c, unit] = content_split(sym);
        Expr unit_expr = fraction_to_expr(unit);
        long p = numerator(c).convert_to<long>();
        int d = denominator(c).convert_to<int>();
        AtomId a = tab().kernel_atom(AtomKind::PowSym, bx, unit_expr, d);
        Fraction res = out * atom_power(a, p);
        res.reduce();
        return res;
    }

    Fraction build_pow_rational(const Expr& bx, const Rational& q) {
        return build_pow(bx, Expr::num(q));
    }

    Fraction build_exp(Fraction fu) {
        if (fu.is_zero()) return Fraction::one();
        Fraction out = Fraction::one();
        // extract c*ln(g) summands with constant c: exp(c ln g) == g^c
        for (;;) {
            bool changed = false;
            for (AtomId a : fu.num.atoms()) {
                if (tab()[a].kind != AtomKind::LnK) continue;
                if (fu.num.degree_in(a) != 1 || fu.den.degree_in(a) != 0) continue;
                auto uni = fu.num.univariate_in(a);
                Poly a1 = uni.count(1) ? uni[1] : Poly::zero();
                Fraction coeff(a1, fu.den);
                if (!frac_is_constant(coeff)) continue;
                Poly a0 = uni.count(0) ? uni[0] : Poly::zero();
                out = out * build_pow(tab()[a].key, fraction_to_expr(coeff));
                fu = Fraction(a0, fu.den);
                changed = true;
                break;
            }
            if (!changed) break;
        }
        if (fu.is_zero()) return out;
        auto [c, unit] = content_split(fu);
        Expr unit_expr = fraction_to_expr(unit);
        long p = numerator(c).convert_to<long>();
        int d = denominator(c).convert_to<int>();
        AtomId a = tab().kernel_atom(AtomKind::ExpK, Expr(), unit_expr, d);
        Fraction res = out * atom_power(a, p);
        res.reduce();
        return res;
    }
};

Expr atom_factor_to_expr(AtomId id, int e) {
    const AtomData& d = tab()[id];
    switch (d.kind) {
        case AtomKind::Name:
            return Expr::pow(d.is_variable ? Expr::var(d.name) : Expr::param(d.name),
                             Expr::integer(e));
        case AtomKind::PowFrac:
            return Expr::pow(d.key, Expr::num(Rational(e, d.denom)));
        case AtomKind::PowSym:
            return Expr::pow(d.key,
                             Expr::mul({Expr::num(Rational(e, d.denom)), d.unit}));
        case AtomKind::ExpK:
            return Expr::exp_(Expr::mul({Expr::num(Rational(e, d.denom)), d.unit}));
        case AtomKind::LnK:
            return Expr::pow(Expr::ln(d.key), Expr::integer(e));
        case AtomKind::SinK:
            return Expr::pow(Expr::sin_(d.key), Expr::integer(e));
        case AtomKind::CosK:
            return Expr::pow(Expr::cos_(d.key), Expr::integer(e));
        case AtomKind::TanK:
            return Expr::pow(Expr::tan_(d.key), Expr::integer(e));
        case AtomKind::AntiDerivK:
            return Expr::pow(Expr::antideriv(d.name, d.key, d.base_re, d.base_im),
                             Expr::integer(e));
    }
    throw std::logic_error("unreachable atom kind");
}

} // namespace

Expr poly_to_expr(const Poly& p) {
    if (p.is_zero()) return Expr::integer(0);
    std::vector<Expr> terms;
    for (auto it = p.t.rbegin(); it != p.t.rend(); ++it) {
        const auto& [m, c] = *it;
        std::vector<Expr> factors;
        factors.push_back(Expr::num(c));
        // canonical factor order: atoms are already sorted within monomials
        for (const auto& [a, e] : m.f) factors.push_back(atom_factor_to_expr(a, e));
        terms.push_back(Expr::mul(std::move(factors)));
    }
    return Expr::add(std::move(terms));
}

Expr fraction_to_expr(const Fraction& f) {
    Expr n = poly_to_expr(f.num);
    if (f.den.is_constant() && f.den.constant_value() == 1) return n;
    Expr d = poly_to_expr(f.den);
    return Expr::mul({n, Expr::pow(d, Expr::integer(-1))});
}

Fraction expr_to_fraction(const Expr& e) {
    Builder b;
    return b.build(e);
}

Expr normalize(const Expr& e) { return fraction_to_expr(expr_to_fraction(e)); }

bool is_rational_in(const Expr& e, const std::set<std::string>& names) {
    Fraction f = expr_to_fraction(e);
    const auto& table = tab();
    for (const Poly* p : {&f.num, &f.den}) {
        for (AtomId a : p->atoms()) {
            const AtomData& d = table[a];
            if (d.kind == AtomKind::Name) continue;
            for (const auto& n : names)
                if (d.depends_on(n)) return false;
        }
    }
    return true;
}

const char* membership_name(Membership m) {
    switch (m) {
        case Membership::Rational: return "rational";
        case Membership::RationalExpLog: return "rational-plus-exp-log";
        case Membership::FormalAntiderivative: return "formal-antiderivative";
    }
    return "?";
}

static bool contains_antideriv(const Expr& e) {
    if (e.kind() == Kind::AntiDeriv) return true;
    for (const auto& k : e.kids())
        if (contains_antideriv(k)) return true;
    return false;
}

Membership field_membership(const Expr& e) {
    Fraction f = expr_to_fraction(e);
    const auto& table = tab();
    bool exp_log = false;
    for (const Poly* p : {&f.num, &f.den}) {
        for (AtomId a : p->atoms()) {
            const AtomData& d = table[a];
            if (d.kind == AtomKind::AntiDerivK) return Membership::FormalAntiderivative;
            if (d.kind == AtomKind::Name) continue;
            for (const Expr* k : {&d.key, &d.unit})
                if (k->valid() && contains_antideriv(*k))
                    return Membership::FormalAntiderivative;
            if (d.has_any_variable()) exp_log = true;
        }
    }
    return exp_log ? Membership::RationalExpLog : Membership::Rational;
}

} // namespace dkit
