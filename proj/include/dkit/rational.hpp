#ifndef DKIT_RATIONAL_HPP
#define DKIT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace dkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long n) { return Rational(n); }
inline Rational rat(long long n, long long d) { return Rational(n, d); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Rational rat_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    BigInt n = numerator(q), d = denominator(q);
    unsigned long a = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    BigInt np = pow(n, a), dp = pow(d, a);
    if (e < 0) {
        if (np == 0) throw std::domain_error("rat_pow: zero to negative power");
        return Rational(dp, np);
    }
    return Rational(np, dp);
}

// Exact integer n-th root: returns true and sets r if b == r^n.
inline bool exact_root(const BigInt& b, unsigned n, BigInt& r) {
    if (n == 0) return false;
    if (b == 0) { r = 0; return true; }
    bool neg = b < 0;
    if (neg && n % 2 == 0) return false;
    BigInt a = abs(b);
    BigInt lo = 0, hi = a + 1;
    while (lo + 1 < hi) {
        BigInt mid = (lo + hi) / 2;
        if (pow(mid, n) <= a) lo = mid; else hi = mid;
    }
    if (pow(lo, n) != a) return false;
    r = neg ? BigInt(-lo) : lo;
    return true;
}

// Exact rational n-th root when it exists.
inline bool exact_root(const Rational& q, unsigned n, Rational& r) {
    BigInt rn, rd;
    if (!exact_root(numerator(q), n, rn)) return false;
    if (!exact_root(denominator(q), n, rd)) return false;
    r = Rational(rn, rd);
    return true;
}

inline std::string rat_str(const Rational& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline double rat_double(const Rational& q) { return q.convert_to<double>(); }

} // namespace dkit

#endif
