#include "dkit/fraction.hpp"

namespace dkit {

// implemented in normalize.cpp
Fraction expr_to_fraction(const Expr& e);

namespace {

bool has_overflow(const Poly& p) {
    const auto& tab = AtomTable::instance();
    for (const auto& [m, c] : p.t)
        for (const auto& [a, e] : m.f) {
            const AtomData& d = tab[a];
            if (d.kind == AtomKind::PowFrac && e >= d.denom) return true;
        }
    return false;
}

// One substitution round: every monomial with atom^e, e >= denom, has the
// full powers replaced by the base fraction. Returns an unreduced poly pair.
std::pair<Poly, Poly> eliminate_once(const Poly& p) {
    const auto& tab = AtomTable::instance();
    Poly num = Poly::zero();
    Poly den = Poly::constant(Rational(1));
    for (const auto& [m, c] : p.t) {
        Poly tn = Poly::constant(c);
        Poly td = Poly::constant(Rational(1));
        for (const auto& [a, e] : m.f) {
            const AtomData& d = tab[a];
            if (d.kind == AtomKind::PowFrac && e >= d.denom) {
                int q = e / d.denom, r = e % d.denom;
                Fraction base = expr_to_fraction(d.key);
                tn = tn * base.num.pow(q);
                td = td * base.den.pow(q);
                if (r != 0) tn = tn * Poly::atom(a, r);
            } else {
                tn = tn * Poly::atom(a, e);
            }
        }
        // num/den += tn/td
        num = num * td + tn * den;
        den = den * td;
    }
    return {std::move(num), std::move(den)};
}

} // namespace

void Fraction::reduce() {
    if (den.is_zero()) throw std::domain_error("division by zero expression");
    int guard = 0;
    while (has_overflow(num) || has_overflow(den)) {
        if (++guard > 64)
            throw std::runtime_error("radical folding did not converge");
        auto [nn, nd] = eliminate_once(num);
        auto [dn, dd] = eliminate_once(den);
        num = nn * dd;
        den = dn * nd;
        if (den.is_zero()) throw std::domain_error("division by zero expression");
    }
    if (num.is_zero()) {
        den = Poly::constant(Rational(1));
        return;
    }
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    Rational lc = den.leading().second;
    if (lc != 1) {
        num = num.mul_scalar(Rational(1) / lc);
        den = den.mul_scalar(Rational(1) / lc);
    }
}

Fraction atom_power(AtomId a, long e) {
    if (e == 0) return Fraction::one();
    if (e > 0) return Fraction(Poly::atom(a, static_cast<int>(e)), Poly::constant(Rational(1)));
    return Fraction(Poly::constant(Rational(1)), Poly::atom(a, static_cast<int>(-e)));
}

Fraction Fraction::operator+(const Fraction& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Poly g = gcd(den, o.den);
    Poly da = g.is_constant() ? den : exact_div(den, g);
    Poly db = g.is_constant() ? o.den : exact_div(o.den, g);
    return Fraction(num * db + o.num * da, den * db);
}

Fraction Fraction::operator-() const {
    Fraction out = *this;
    out.num = -out.num;
    return out;
}

Fraction Fraction::operator-(const Fraction& o) const { return *this + (-o); }

Fraction Fraction::operator*(const Fraction& o) const {
    if (is_zero() || o.is_zero()) return Fraction::zero();
    return Fraction(num * o.num, den * o.den);
}

Fraction Fraction::operator/(const Fraction& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero expression");
    if (is_zero()) return Fraction::zero();
    return Fraction(num * o.den, den * o.num);
}

Fraction Fraction::pow(long e) const {
    if (e == 0) return Fraction::one();
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Fraction r = Fraction::one();
    Fraction b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    if (inv) {
        if (r.is_zero()) throw std::domain_error("zero to negative power");
        return Fraction(r.den, r.num);
    }
    return r;
}

} // namespace dkit
