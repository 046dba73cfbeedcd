#include "dkit/poly.hpp"

#include <algorithm>
#include <sstream>

namespace dkit {

AtomTable& AtomTable::instance() {
    static AtomTable t;
    return t;
}

static std::string atom_sortkey(const AtomData& d) {
    std::ostringstream os;
    switch (d.kind) {
        // parameters sort before variables before kernels so printed monomials
        // read coefficient-first
        case AtomKind::Name: os << (d.is_variable ? "1|" : "0|") << d.name; break;
        case AtomKind::PowFrac: os << "2|" << d.denom << '|' << to_string(d.key); break;
        case AtomKind::PowSym:
            os << "3|" << d.denom << '|' << to_string(d.key) << '|' << to_string(d.unit);
            break;
        case AtomKind::ExpK: os << "4|" << d.denom << '|' << to_string(d.unit); break;
        case AtomKind::LnK: os << "5|" << to_string(d.key); break;
        case AtomKind::SinK: os << "6|" << to_string(d.key); break;
        case AtomKind::CosK: os << "7|" << to_string(d.key); break;
        case AtomKind::TanK: os << "8|" << to_string(d.key); break;
        case AtomKind::AntiDerivK:
            os << "9|" << d.name << '|' << rat_str(d.base_re) << '|' << rat_str(d.base_im)
               << '|' << to_string(d.key);
            break;
    }
    return os.str();
}

AtomId AtomTable::name_atom(const std::string& n, bool is_variable) {
    AtomData d;
    d.kind = AtomKind::Name;
    d.name = n;
    d.is_variable = is_variable;
    if (is_variable) d.var_names.insert(n);
    d.all_names.insert(n);
    d.sortkey = atom_sortkey(d);
    std::lock_guard<std::mutex> lk(mu_);
    auto it = index_.find(d.sortkey);
    if (it != index_.end()) return it->second;
    AtomId id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back(std::move(d));
    index_.emplace(atoms_.back().sortkey, id);
    return id;
}

AtomId AtomTable::kernel_atom(AtomKind kind, const Expr& key, const Expr& unit, int denom,
                              const std::string& name, const Rational& base_re,
                              const Rational& base_im) {
    AtomData d;
    d.kind = kind;
    d.key = key;
    d.unit = unit;
    d.denom = denom;
    d.name = name;
    d.base_re = base_re;
    d.base_im = base_im;
    for (const Expr* e : {&d.key, &d.unit}) {
        if (!e->valid()) continue;
        auto vs = variables_of(*e);
        d.var_names.insert(vs.begin(), vs.end());
        auto ns = free_names(*e);
        d.all_names.insert(ns.begin(), ns.end());
    }
    if (kind == AtomKind::AntiDerivK) {
        d.var_names.insert(name);
        d.all_names.insert(name);
    }
    d.sortkey = atom_sortkey(d);
    std::lock_guard<std::mutex> lk(mu_);
    auto it = index_.find(d.sortkey);
    if (it != index_.end()) return it->second;
    AtomId id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back(std::move(d));
    index_.emplace(atoms_.back().sortkey, id);
    return id;
}

bool AtomTable::atom_less(AtomId a, AtomId b) const {
    if (a == b) return false;
    return atoms_[static_cast<size_t>(a)].sortkey < atoms_[static_cast<size_t>(b)].sortkey;
}

static bool atom_before(AtomId a, AtomId b) {
    return AtomTable::instance().atom_less(a, b);
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.f.reserve(a.f.size() + b.f.size());
    size_t i = 0, j = 0;
    while (i < a.f.size() && j < b.f.size()) {
        if (a.f[i].first == b.f[j].first) {
            int e = a.f[i].second + b.f[j].second;
            if (e != 0) out.f.emplace_back(a.f[i].first, e);
            ++i; ++j;
        } else if (atom_before(a.f[i].first, b.f[j].first)) {
            out.f.push_back(a.f[i++]);
        } else {
            out.f.push_back(b.f[j++]);
        }
    }
    while (i < a.f.size()) out.f.push_back(a.f[i++]);
    while (j < b.f.size()) out.f.push_back(b.f[j++]);
    return out;
}

bool mono_less(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    // lexicographic with the canonically-first atom dominant
    size_t i = 0, j = 0;
    while (i < a.f.size() && j < b.f.size()) {
        AtomId aa = a.f[i].first, bb = b.f[j].first;
        if (aa == bb) {
            if (a.f[i].second != b.f[j].second)
                return a.f[i].second < b.f[j].second;
            ++i; ++j;
        } else if (atom_before(aa, bb)) {
            return false;  // a has positive power on earlier atom -> a greater
        } else {
            return true;
        }
    }
    if (i < a.f.size()) return false;
    if (j < b.f.size()) return true;
    return false;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    size_t j = 0;
    for (const auto& [atom, e] : a.f) {
        while (j < b.f.size() && b.f[j].first != atom &&
               atom_before(b.f[j].first, atom))
            ++j;
        if (j >= b.f.size() || b.f[j].first != atom || b.f[j].second < e) return false;
    }
    return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial out;
    size_t j = 0;
    for (size_t i = 0; i < b.f.size(); ++i) {
        int e = b.f[i].second;
        if (j < a.f.size() && a.f[j].first == b.f[i].first) {
            e -= a.f[j].second;
            ++j;
        }
        if (e != 0) out.f.emplace_back(b.f[i].first, e);
    }
    return out;
}

Poly Poly::constant(const Rational& q) {
    Poly p;
    if (q != 0) p.t.emplace(Monomial{}, q);
    return p;
}

Poly Poly::atom(AtomId a, int e) {
    Poly p;
    if (e == 0) return constant(Rational(1));
    Monomial m;
    m.f.emplace_back(a, e);
    p.t.emplace(std::move(m), Rational(1));
    return p;
}

Rational Poly::constant_value() const {
    if (t.empty()) return Rational(0);
    return t.begin()->second;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    for (const auto& [m, c] : o.t) {
        auto it = out.t.find(m);
        if (it == out.t.end()) out.t.emplace(m, c);
        else {
            it->second += c;
            if (it->second == 0) out.t.erase(it);
        }
    }
    return out;
}

Poly Poly::operator-() const {
    Poly out;
    for (const auto& [m, c] : t) out.t.emplace(m, -c);
    return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    Poly out;
    for (const auto& [ma, ca] : t)
        for (const auto& [mb, cb] : o.t) {
            Monomial m = mono_mul(ma, mb);
            Rational c = ca * cb;
            auto it = out.t.find(m);
            if (it == out.t.end()) out.t.emplace(std::move(m), c);
            else {
                it->second += c;
                if (it->second == 0) out.t.erase(it);
            }
        }
    return out;
}

Poly Poly::mul_scalar(const Rational& q) const {
    Poly out;
    if (q == 0) return out;
    for (const auto& [m, c] : t) out.t.emplace(m, c * q);
    return out;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::domain_error("Poly::pow negative");
    Poly r = Poly::constant(Rational(1));
    Poly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

int Poly::degree_in(AtomId a) const {
    int d = 0;
    for (const auto& [m, c] : t) d = std::max(d, m.exponent(a));
    return d;
}

int Poly::degree_in_vars(const std::set<std::string>& names) const {
    const auto& tab = AtomTable::instance();
    int d = 0;
    for (const auto& [m, c] : t) {
        int s = 0;
        for (const auto& [a, e] : m.f)
            if (tab[a].kind == AtomKind::Name && names.count(tab[a].name)) s += e;
        d = std::max(d, s);
    }
    return d;
}

std::vector<AtomId> Poly::atoms() const {
    std::set<AtomId> s;
    for (const auto& [m, c] : t)
        for (const auto& [a, e] : m.f) s.insert(a);
    return {s.begin(), s.end()};
}

bool Poly::depends_on_name(const std::string& n) const {
    const auto& tab = AtomTable::instance();
    for (AtomId a : atoms())
        if (tab[a].depends_on(n)) return true;
    return false;
}

bool Poly::has_variable_atoms() const {
    const auto& tab = AtomTable::instance();
    for (AtomId a : atoms())
        if (tab[a].has_any_variable()) return true;
    return false;
}

Poly Poly::formal_derivative(AtomId a) const {
    Poly out;
    for (const auto& [m, c] : t) {
        int e = m.exponent(a);
        if (e == 0) continue;
        Monomial dm;
        for (const auto& [x, k] : m.f) {
            int nk = (x == a) ? k - 1 : k;
            if (nk != 0) dm.f.emplace_back(x, nk);
        }
        Rational nc = c * e;
        auto it = out.t.find(dm);
        if (it == out.t.end()) out.t.emplace(std::move(dm), nc);
        else it->second += nc;
    }
    return out;
}

std::map<int, Poly> Poly::univariate_in(AtomId v) const {
    std::map<int, Poly> out;
    for (const auto& [m, c] : t) {
        Monomial rest;
        int e = 0;
        for (const auto& [a, k] : m.f) {
            if (a == v) e = k;
            else rest.f.emplace_back(a, k);
        }
        out[e].t.emplace(std::move(rest), c);
    }
    return out;
}

Poly Poly::from_univariate(AtomId v, const std::map<int, Poly>& coeffs) {
    Poly out;
    for (const auto& [e, p] : coeffs) {
        Poly term = (e == 0) ? p : p * Poly::atom(v, e);
        out = out + term;
    }
    return out;
}

Poly Poly::drop_atoms(const std::vector<AtomId>& which) const {
    Poly out;
    for (const auto& [m, c] : t) {
        bool has = false;
        for (const auto& [a, e] : m.f)
            if (std::find(which.begin(), which.end(), a) != which.end()) { has = true; break; }
        if (!has) out.t.emplace(m, c);
    }
    return out;
}

std::map<Monomial, Poly, MonoLess> Poly::collect(const std::vector<AtomId>& keep) const {
    std::map<Monomial, Poly, MonoLess> out;
    for (const auto& [m, c] : t) {
        Monomial key, rest;
        for (const auto& [a, e] : m.f) {
            if (std::find(keep.begin(), keep.end(), a) != keep.end())
                key.f.emplace_back(a, e);
            else
                rest.f.emplace_back(a, e);
        }
        out[key].t.emplace(std::move(rest), c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// gcd (primitive PRS)
// ---------------------------------------------------------------------------

static Poly normalize_lead(const Poly& p) {
    if (p.is_zero()) return p;
    return p.mul_scalar(Rational(1) / p.leading().second);
}

static Poly lead_coeff_in(const Poly& p, AtomId v, int deg) {
    Poly out;
    for (const auto& [m, c] : p.t) {
        if (m.exponent(v) != deg) continue;
        Monomial rest;
        for (const auto& [a, k] : m.f)
            if (a != v) rest.f.emplace_back(a, k);
        out.t.emplace(std::move(rest), c);
    }
    return out;
}

static Poly content_in(const Poly& p, AtomId v) {
    auto uni = p.univariate_in(v);
    Poly g;
    for (const auto& [e, c] : uni) {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) return Poly::constant(Rational(1));
    }
    return g;
}

// pseudo-remainder of a by b w.r.t. v (up to a unit in the coefficient ring)
static Poly prem(Poly a, const Poly& b, AtomId v) {
    int db = b.degree_in(v);
    Poly lb = lead_coeff_in(b, v, db);
    int guard = 0;
    for (;;) {
        if (a.is_zero()) return a;
        int da = a.degree_in(v);
        if (da < db) return a;
        Poly la = lead_coeff_in(a, v, da);
        a = a * lb - b * la * Poly::atom(v, da - db);
        if (++guard > 10000) throw std::runtime_error("prem: no convergence");
    }
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return normalize_lead(b);
    if (b.is_zero()) return normalize_lead(a);
    if (a.is_constant() || b.is_constant()) return Poly::constant(Rational(1));

    auto aa = a.atoms();
    auto bb = b.atoms();
    std::vector<AtomId> common;
    std::set_intersection(aa.begin(), aa.end(), bb.begin(), bb.end(),
                          std::back_inserter(common));
    if (common.empty()) return Poly::constant(Rational(1));

    // main variable: common atom with the smallest max degree (cheapest PRS)
    AtomId v = common[0];
    int best = std::max(a.degree_in(v), b.degree_in(v));
    for (AtomId c : common) {
        int d = std::max(a.degree_in(c), b.degree_in(c));
        if (d < best) { best = d; v = c; }
    }

    Poly ca = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly cg = gcd(ca, cb);
    Poly p0 = exact_div(a, ca);
    Poly p1 = exact_div(b, cb);
    if (p0.degree_in(v) < p1.degree_in(v)) std::swap(p0, p1);

    while (!p1.is_zero() && p1.degree_in(v) > 0) {
        Poly r = prem(p0, p1, v);
        p0 = p1;
        if (r.is_zero()) { p1 = Poly::zero(); break; }
        Poly cr = content_in(r, v);
        p1 = exact_div(r, cr);
    }
    Poly pp = p1.is_zero() ? p0 : Poly::constant(Rational(1));
    return normalize_lead(cg * pp);
}

Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("exact_div by zero");
    if (b.is_constant()) return a.mul_scalar(Rational(1) / b.constant_value());
    Poly rem = a, q;
    const auto& [lm, lc] = b.leading();
    int guard = 0;
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        if (!mono_divides(lm, rm))
            throw std::domain_error("exact_div: not divisible");
        Monomial qm = mono_div(rm, lm);
        Rational qc = rc / lc;
        Poly term;
        term.t.emplace(qm, qc);
        q = q + term;
        rem = rem - term * b;
        if (++guard > 200000) throw std::runtime_error("exact_div: no convergence");
    }
    return q;
}

std::vector<std::pair<Poly, int>> squarefree_in(const Poly& p, AtomId v) {
    // Yun's algorithm over a characteristic-zero coefficient ring
    std::vector<std::pair<Poly, int>> out;
    Poly dp = p.formal_derivative(v);
    Poly g = gcd(p, dp);
    if (g.is_constant()) {
        out.emplace_back(p, 1);
        return out;
    }
    Poly c = exact_div(p, g);
    Poly d = exact_div(dp, g) - c.formal_derivative(v);
    int i = 1;
    while (!c.is_constant()) {
        Poly a = gcd(c, d);
        if (!a.is_constant()) out.emplace_back(a, i);
        c = exact_div(c, a);
        d = exact_div(d, a) - c.formal_derivative(v);
        ++i;
        if (i > 64) throw std::runtime_error("squarefree_in: no convergence");
    }
    return out;
}

} // namespace dkit
