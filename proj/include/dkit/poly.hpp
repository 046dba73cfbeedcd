#ifndef DKIT_POLY_HPP
#define DKIT_POLY_HPP

#include "dkit/expr.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace dkit {

// Normalization represents expressions as fractions of sparse multivariate
// polynomials over Q. The polynomial "variables" are atoms: plain names and
// transcendental kernels keyed by normalized subexpressions.
using AtomId = int32_t;

enum class AtomKind : uint8_t {
    Name,       // variable or parameter
    PowFrac,    // key^(1/denom); atom^denom folds back to key
    PowSym,     // key^(unit/denom), symbolic exponent unit
    ExpK,       // exp(unit/denom)
    LnK,        // ln(key)
    SinK,
    CosK,
    TanK,
    AntiDerivK  // antideriv(name, key, basepoint)
};

struct AtomData {
    AtomKind kind = AtomKind::Name;
    std::string name;            // Name; AntiDerivK integration variable
    Expr key;                    // base / argument / integrand (normalized)
    Expr unit;                   // PowSym / ExpK exponent unit (normalized, content 1)
    int denom = 1;
    Rational base_re, base_im;   // AntiDerivK basepoint
    bool is_variable = false;    // Name atom declared as variable
    std::set<std::string> var_names;    // variables occurring inside
    std::set<std::string> all_names;    // all names occurring inside
    std::string sortkey;

    bool depends_on(const std::string& n) const { return all_names.count(n) > 0; }
    bool has_any_variable() const { return !var_names.empty(); }
};

class AtomTable {
public:
    static AtomTable& instance();

    AtomId name_atom(const std::string& n, bool is_variable);
    AtomId kernel_atom(AtomKind kind, const Expr& key, const Expr& unit, int denom,
                       const std::string& name = std::string(),
                       const Rational& base_re = Rational(0),
                       const Rational& base_im = Rational(0));

    const AtomData& operator[](AtomId id) const { return atoms_[static_cast<size_t>(id)]; }
    bool atom_less(AtomId a, AtomId b) const;

private:
    AtomTable() = default;
    mutable std::mutex mu_;
    std::deque<AtomData> atoms_;
    std::map<std::string, AtomId> index_;
};

// Exponent vector, sorted by canonical atom order, exponents > 0.
struct Monomial {
    std::vector<std::pair<AtomId, int>> f;

    int total_degree() const {
        int d = 0;
        for (auto& [a, e] : f) d += e;
        return d;
    }
    int exponent(AtomId a) const {
        for (auto& [x, e] : f)
            if (x == a) return e;
        return 0;
    }
    bool empty() const { return f.empty(); }
    bool operator==(const Monomial& o) const { return f == o.f; }
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
// grlex; total order usable as map comparator.
bool mono_less(const Monomial& a, const Monomial& b);
// divisibility and quotient for exact division
bool mono_divides(const Monomial& a, const Monomial& b);   // a | b
Monomial mono_div(const Monomial& b, const Monomial& a);   // b / a

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_less(a, b); }
};

class Poly {
public:
    std::map<Monomial, Rational, MonoLess> t;

    static Poly zero() { return Poly{}; }
    static Poly constant(const Rational& q);
    static Poly atom(AtomId a, int e = 1);

    bool is_zero() const { return t.empty(); }
    bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first.empty()); }
    Rational constant_value() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly mul_scalar(const Rational& q) const;
    Poly pow(int e) const;

    bool operator==(const Poly& o) const { return t == o.t; }

    // grlex leading term
    const std::pair<const Monomial, Rational>& leading() const { return *t.rbegin(); }

    int degree_in(AtomId a) const;
    int degree_in_vars(const std::set<std::string>& names) const;
    std::vector<AtomId> atoms() const;
    bool depends_on_name(const std::string& n) const;
    bool has_variable_atoms() const;

    // formal partial derivative treating atoms as independent
    Poly formal_derivative(AtomId a) const;

    // view as univariate in atom v: exponent -> coefficient poly
    std::map<int, Poly> univariate_in(AtomId v) const;
    static Poly from_univariate(AtomId v, const std::map<int, Poly>& coeffs);

    // substitute 0 for every atom in `which` (drops monomials containing them)
    Poly drop_atoms(const std::vector<AtomId>& which) const;
    // coefficient extraction: group by the sub-monomial over atoms in `keep`
    std::map<Monomial, Poly, MonoLess> collect(const std::vector<AtomId>& keep) const;
};

Poly gcd(const Poly& a, const Poly& b);
// exact multivariate division; throws std::domain_error if not divisible
Poly exact_div(const Poly& a, const Poly& b);
// square-free decomposition w.r.t. main atom v (Yun): returns {factor, multiplicity}
std::vector<std::pair<Poly, int>> squarefree_in(const Poly& p, AtomId v);

} // namespace dkit

#endif
