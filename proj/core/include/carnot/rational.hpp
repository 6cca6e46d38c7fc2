#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace carnot {

/// Arbitrary-precision exact rational scalar. Floats appear only at
/// evaluation boundaries; every algebraic identity is checked over Q.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parse "p", "-p", "p/q" or a finite decimal like "0.5". Used by the JSON
/// loaders and the CLI.
inline Rational parse_rational(const std::string& s)
{
    try {
        if (const auto slash = s.find('/'); slash != std::string::npos) {
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator");
            return Rational(num, den);
        }
        if (const auto dot = s.find('.'); dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            const size_t frac_len = s.size() - dot - 1;
            BigInt den = 1;
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
            return Rational(BigInt(digits), den);
        }
        return Rational(BigInt(s));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

/// Canonical rendering: "p" when the denominator is 1, "p/q" otherwise.
inline std::string rational_to_string(const Rational& r)
{
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// r^e for integer e (e < 0 requires r != 0).
inline Rational rational_pow(const Rational& r, long e)
{
    if (e == 0) return Rational(1);
    if (r == 0) {
        if (e < 0) throw std::domain_error("0 raised to a negative power");
        return Rational(0);
    }
    Rational base = e > 0 ? r : Rational(1) / r;
    unsigned long n = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

inline BigInt factorial(int n)
{
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    BigInt b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

} // namespace carnot
