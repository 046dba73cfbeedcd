#include "dkit/expr.hpp"

#include <cctype>

namespace dkit {

namespace {

// Grammar:
//   expr   := ('+'|'-')? term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?
//   base   := number | name | '(' expr ')' | func '(' expr ')'
//   func   := exp | ln | sqrt | sin | cos | tan
//   number := integer
//   name   := [A-Za-z][A-Za-z0-9_]*
// The UTF-8 letter for zeta is accepted as an alias of "zeta".
class Parser {
public:
    Parser(const std::string& text, const ParseContext& ctx)
        : s_(text), ctx_(ctx) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    const std::string& s_;
    const ParseContext& ctx_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Expr expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (s_[pos_++] == '-');
        Expr e = term();
        if (neg) e = -e;
        for (;;) {
            char c = peek();
            if (c == '+') { ++pos_; e = e + term(); }
            else if (c == '-') { ++pos_; e = e - term(); }
            else break;
        }
        return e;
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            char c = peek();
            if (c == '*') { ++pos_; e = e * factor(); }
            else if (c == '/') { ++pos_; e = e / factor(); }
            else break;
        }
        return e;
    }

    Expr factor() {
        Expr b = base();
        if (eat('^')) {
            Expr x = factor();  // right associative
            return Expr::pow(b, x);
        }
        return b;
    }

    Expr base() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        // UTF-8 zeta (0xCE 0xB6)
        if (static_cast<unsigned char>(c) == 0xCE && pos_ + 1 < s_.size() &&
            static_cast<unsigned char>(s_[pos_ + 1]) == 0xB6) {
            pos_ += 2;
            return Expr::var("zeta");
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return name_or_func();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Expr::num(Rational(BigInt(s_.substr(start, pos_ - start))));
    }

    Expr name_or_func() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string id = s_.substr(start, pos_ - start);
        skip_ws();
        bool call = pos_ < s_.size() && s_[pos_] == '(';
        if (call) {
            Expr (*fn)(const Expr&) = nullptr;
            if (id == "exp") fn = &Expr::exp_;
            else if (id == "ln" || id == "log") fn = &Expr::ln;
            else if (id == "sqrt") fn = &Expr::sqrt_;
            else if (id == "sin") fn = &Expr::sin_;
            else if (id == "cos") fn = &Expr::cos_;
            else if (id == "tan") fn = &Expr::tan_;
            else if (id == "antideriv") return antideriv_call(start);
            if (fn) {
                ++pos_;  // '('
                Expr a = expr();
                if (!eat(')'))
                    throw ParseError("unbalanced parentheses in call of '" + id + "'", pos_);
                return fn(a);
            }
            throw ParseError("unknown function '" + id + "'", start);
        }
        if (ctx_.is_variable(id)) return Expr::var(ctx_.canonical(id));
        return Expr::param(id);
    }

    // antideriv(var, integrand [, base_re [, base_im]])
    Expr antideriv_call(size_t start) {
        ++pos_;  // '('
        skip_ws();
        size_t vstart = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string v = s_.substr(vstart, pos_ - vstart);
        if (v.empty()) throw ParseError("antideriv: expected variable name", pos_);
        if (!eat(',')) throw ParseError("antideriv: expected ','", pos_);
        Expr g = expr();
        Rational bre(0), bim(0);
        if (eat(',')) {
            bre = rational_literal();
            if (eat(',')) bim = rational_literal();
        }
        if (!eat(')')) throw ParseError("antideriv: expected ')'", pos_);
        return Expr::antideriv(ctx_.canonical(v), g, bre, bim);
    }

    Rational rational_literal() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected number", pos_);
        BigInt n(s_.substr(start, pos_ - start));
        BigInt d(1);
        if (eat('/')) {
            skip_ws();
            size_t ds = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (ds == pos_) throw ParseError("expected denominator", pos_);
            d = BigInt(s_.substr(ds, pos_ - ds));
        }
        Rational q(n, d);
        return neg ? -q : q;
    }
};

} // namespace

Expr parse(const std::string& text, const ParseContext& ctx) {
    return Parser(text, ctx).run();
}

} // namespace dkit
