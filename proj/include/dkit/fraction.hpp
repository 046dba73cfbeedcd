#ifndef DKIT_FRACTION_HPP
#define DKIT_FRACTION_HPP

#include "dkit/poly.hpp"

namespace dkit {

// Reduced fraction of polynomials over the atom ring. Invariants: den != 0,
// gcd(num, den) trivial, den has grlex leading coefficient 1, and no monomial
// carries a PowFrac atom exponent >= its denom (such powers fold back into
// the base, e.g. sqrt(u)^2 -> u).
struct Fraction {
    Poly num, den;

    Fraction() : num(Poly::zero()), den(Poly::constant(Rational(1))) {}
    Fraction(Poly n, Poly d, bool do_reduce = true)
        : num(std::move(n)), den(std::move(d)) {
        if (do_reduce) reduce();
    }

    static Fraction zero() { return Fraction(); }
    static Fraction one() { return from_rational(Rational(1)); }
    static Fraction from_rational(const Rational& q) {
        return Fraction(Poly::constant(q), Poly::constant(Rational(1)), false);
    }
    static Fraction from_poly(Poly p) {
        return Fraction(std::move(p), Poly::constant(Rational(1)), false);
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_rational() const { return num.is_constant() && den.is_constant(); }
    Rational rational_value() const { return num.constant_value() / den.constant_value(); }
    bool is_one() const { return is_rational() && !is_zero() && rational_value() == 1; }

    Fraction operator+(const Fraction& o) const;
    Fraction operator-(const Fraction& o) const;
    Fraction operator-() const;
    Fraction operator*(const Fraction& o) const;
    Fraction operator/(const Fraction& o) const;
    Fraction pow(long e) const;

    bool equals(const Fraction& o) const { return num == o.num && den == o.den; }

    void reduce();
};

// Fraction for atom^e, e any integer; reduce() folds full radical powers.
Fraction atom_power(AtomId a, long e);

} // namespace dkit

#endif
