#include "dkit/kernel.hpp"
#include <iostream>

using namespace dkit;

int main() {
    ParseContext ctx;
    auto check = [&](const std::string& in, const std::string& want) {
        Expr e = parse(in, ctx);
        std::string got = to_string(normalize(e));
        std::cout << in << "  ->  " << got
                  << (got == want ? "  [ok]" : "  [WANT " + want + "]") << "\n";
    };
    check("x^2+1", "x^2+1");
    check("(x+1)^2-x^2-2*x-1", "0");
    check("(x^2-1)/(x-1)", "x+1");
    check("exp(u)*exp(-u)", "1");
    check("sqrt(-lambda)^2", "-lambda");
    check("1/2*x", "1/2*x");
    check("2/x^2", "2/x^2");
    check("exp(2*ln(x))", "x^2");
    check("exp((l+2)*ln(x))", "x^(l+2)");
    check("x^(l+2)", "x^(l+2)");
    check("exp(ln(x)*(l+2) - x^2/2)*x^2", "?");
    check("(zeta^2)", "zeta^2");
    check("x - x", "0");
    Expr d = differentiate(parse("x^2", ctx), "x");
    std::cout << "d/dx x^2 = " << to_string(normalize(d)) << "\n";
    Expr d2 = normalize(differentiate(parse("antideriv(x, 1/(x^2+1), 0)", ctx), "x"));
    std::cout << "d/dx antideriv = " << to_string(d2) << "\n";
    std::cout << "print roundtrip: "
              << to_string(normalize(parse(to_string(normalize(parse("1/2*x+sqrt(-lambda)", ctx))), ctx)))
              << "\n";
    return 0;
}
