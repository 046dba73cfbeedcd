#ifndef DKIT_KERNEL_HPP
#define DKIT_KERNEL_HPP

#include "dkit/fraction.hpp"

#include <map>

namespace dkit {

// Canonical form: coprime numerator/denominator over the atom ring, monic
// denominator (grlex), exp products merged, exp-of-log extracted, full
// radical powers folded, numeric subterms exact. Idempotent.
Expr normalize(const Expr& e);

// The canonical fraction behind normalize.
Fraction expr_to_fraction(const Expr& e);

// Fraction -> canonical expression tree.
Expr fraction_to_expr(const Fraction& f);
Expr poly_to_expr(const Poly& p);

// Structural derivative; total on well-formed expressions.
// d/dvar antideriv(var, g, .) == g exactly; parameters have derivative 0.
Expr differentiate(const Expr& e, const std::string& var);

// Simultaneous capture-free substitution, then normalize.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

// Closed-form antiderivative when the integrand decomposes into polynomial
// parts, simple-pole log-derivative combinations and exponential monomials;
// formal AntiDeriv node otherwise (term-wise; the formal node is exact under
// differentiation).
Expr antiderivative(const Expr& e, const std::string& var,
                    const Rational& base_re = Rational(0),
                    const Rational& base_im = Rational(0));

// True when normalize(e) contains no transcendental kernel involving any of
// the given names (an expression rational in those names).
bool is_rational_in(const Expr& e, const std::set<std::string>& names);

enum class Membership { Rational, RationalExpLog, FormalAntiderivative };
const char* membership_name(Membership m);

// Structural field membership of the normalized expression w.r.t. the
// variables it mentions.
Membership field_membership(const Expr& e);

} // namespace dkit

#endif
