#include "dkit/kernel.hpp"

namespace dkit {

Expr differentiate(const Expr& e, const std::string& var) {
    switch (e.kind()) {
        case Kind::Num:
        case Kind::Param:
            return Expr::integer(0);
        case Kind::Var:
            return Expr::integer(e.name() == var ? 1 : 0);
        case Kind::Add: {
            std::vector<Expr> kids;
            for (const auto& k : e.kids()) kids.push_back(differentiate(k, var));
            return Expr::add(std::move(kids));
        }
        case Kind::Mul: {
            std::vector<Expr> terms;
            const auto& kids = e.kids();
            for (size_t i = 0; i < kids.size(); ++i) {
                Expr d = differentiate(kids[i], var);
                if (d.is_num(0)) continue;
                std::vector<Expr> fs;
                for (size_t j = 0; j < kids.size(); ++j)
                    fs.push_back(j == i ? d : kids[j]);
                terms.push_back(Expr::mul(std::move(fs)));
            }
            return Expr::add(std::move(terms));
        }
        case Kind::Pow: {
            const Expr& b = e.kids()[0];
            const Expr& x = e.kids()[1];
            Expr db = differentiate(b, var);
            if (x.is_num()) {
                // d b^q = q b^(q-1) b'
                if (db.is_num(0)) return Expr::integer(0);
                Expr q = x;
                return Expr::mul(
                    {q, Expr::pow(b, Expr::num(x.num_value() - 1)), db});
            }
            Expr dx = differentiate(x, var);
            std::vector<Expr> terms;
            if (!dx.is_num(0)) terms.push_back(Expr::mul({dx, Expr::ln(b)}));
            if (!db.is_num(0)) terms.push_back(Expr::mul({x, db, Expr::pow(b, -1)}));
            return Expr::mul({e, Expr::add(std::move(terms))});
        }
        case Kind::Exp: {
            Expr du = differentiate(e.kids()[0], var);
            return Expr::mul({du, e});
        }
        case Kind::Ln: {
            Expr du = differentiate(e.kids()[0], var);
            return Expr::mul({du, Expr::pow(e.kids()[0], -1)});
        }
        case Kind::Sin: {
            Expr du = differentiate(e.kids()[0], var);
            return Expr::mul({du, Expr::cos_(e.kids()[0])});
        }
        case Kind::Cos: {
            Expr du = differentiate(e.kids()[0], var);
            return Expr::mul({Expr::integer(-1), du, Expr::sin_(e.kids()[0])});
        }
        case Kind::Tan: {
            Expr du = differentiate(e.kids()[0], var);
            Expr sec2 = Expr::integer(1) + Expr::pow(Expr::tan_(e.kids()[0]), 2);
            return Expr::mul({du, sec2});
        }
        case Kind::AntiDeriv: {
            if (e.name() == var) return e.kids()[0];
            if (!mentions(e.kids()[0], var)) return Expr::integer(0);
            return Expr::antideriv(e.name(), differentiate(e.kids()[0], var),
                                   e.node().base_re, e.node().base_im);
        }
    }
    throw std::logic_error("unreachable expression kind");
}

static Expr substitute_raw(const Expr& e, const std::map<std::string, Expr>& b) {
    switch (e.kind()) {
        case Kind::Num:
            return e;
        case Kind::Param:
        case Kind::Var: {
            auto it = b.find(e.name());
            return it == b.end() ? e : it->second;
        }
        case Kind::AntiDeriv: {
            auto it = b.find(e.name());
            if (it != b.end() &&
                !(it->second.kind() == Kind::Var && it->second.name() == e.name()))
                throw std::domain_error(
                    "cannot substitute the integration variable of a formal antiderivative");
            std::map<std::string, Expr> inner = b;
            inner.erase(e.name());
            if (inner.empty()) return e;
            return Expr::antideriv(e.name(), substitute_raw(e.kids()[0], inner),
                                   e.node().base_re, e.node().base_im);
        }
        case Kind::Add:
        case Kind::Mul: {
            std::vector<Expr> kids;
            for (const auto& k : e.kids()) kids.push_back(substitute_raw(k, b));
            return e.kind() == Kind::Add ? Expr::add(std::move(kids))
                                         : Expr::mul(std::move(kids));
        }
        case Kind::Pow:
            return Expr::pow(substitute_raw(e.kids()[0], b), substitute_raw(e.kids()[1], b));
        case Kind::Exp: return Expr::exp_(substitute_raw(e.kids()[0], b));
        case Kind::Ln:  return Expr::ln(substitute_raw(e.kids()[0], b));
        case Kind::Sin: return Expr::sin_(substitute_raw(e.kids()[0], b));
        case Kind::Cos: return Expr::cos_(substitute_raw(e.kids()[0], b));
        case Kind::Tan: return Expr::tan_(substitute_raw(e.kids()[0], b));
    }
    throw std::logic_error("unreachable expression kind");
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
    return normalize(substitute_raw(e, bindings));
}

} // namespace dkit
