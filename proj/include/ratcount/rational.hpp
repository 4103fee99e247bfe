// Exact scalar arithmetic used across the library.
//
// All geometric invariants (alpha, gamma, Euler factors, heights, ...) are
// computed in Q with arbitrary precision; floats only appear once a value is
// handed to the fitting / reporting layer.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ratcount {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational abs_rat(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Integer gcd_int(const Integer& a, const Integer& b)
{
    return boost::multiprecision::gcd(a, b);
}

// n/d with sign normalization (cpp_rational rejects negative denominators).
inline Rational make_rational(Integer n, Integer d)
{
    if (d == 0) throw std::domain_error("make_rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rational(std::move(n), std::move(d));
}

inline Integer pow_int(Integer base, unsigned long e)
{
    Integer r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// q^e for e in Z; rejects 0^e with e < 0.
inline Rational pow_rat(const Rational& q, long e)
{
    if (e >= 0) {
        return make_rational(pow_int(num(q), static_cast<unsigned long>(e)),
                             pow_int(den(q), static_cast<unsigned long>(e)));
    }
    if (q == 0) throw std::domain_error("pow_rat: zero to a negative power");
    return make_rational(pow_int(den(q), static_cast<unsigned long>(-e)),
                         pow_int(num(q), static_cast<unsigned long>(-e)));
}

inline Integer factorial(unsigned n)
{
    Integer r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

// Floor of the k-th root. Newton iteration on cpp_int.
inline Integer iroot_floor(const Integer& a, unsigned k)
{
    if (a < 0) throw std::domain_error("iroot_floor: negative argument");
    if (k == 0) throw std::domain_error("iroot_floor: zeroth root");
    if (a == 0 || a == 1 || k == 1) return a;
    Integer x = Integer(1) << static_cast<unsigned>(boost::multiprecision::msb(a) / k + 1);
    while (true) {
        // x_{n+1} = ((k-1) x + a / x^{k-1}) / k
        Integer xk1 = pow_int(x, k - 1);
        Integer y = (Integer(k - 1) * x + a / xk1) / k;
        if (y >= x) break;
        x = y;
    }
    while (pow_int(x, k) > a) --x;
    return x;
}

// Exact k-th root of a positive rational; second member reports success.
inline std::pair<Rational, bool> exact_root(const Rational& q, unsigned k)
{
    if (q <= 0) return {Rational(0), false};
    Integer rn = iroot_floor(num(q), k);
    Integer rd = iroot_floor(den(q), k);
    if (pow_int(rn, k) != num(q) || pow_int(rd, k) != den(q)) return {Rational(0), false};
    return {Rational(rn, rd), true};
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Integer& n) { return n.convert_to<double>(); }

// Nearest integer to a (finite) double, without the range limits of llround.
inline Integer integer_from_double(double x)
{
    return Integer(x < 0 ? x - 0.5 : x + 0.5);
}

// Rational-string form used in JSON/CSV: "p" or "p/q".
inline std::string rational_to_string(const Rational& q)
{
    std::ostringstream os;
    os << num(q);
    if (den(q) != 1) os << '/' << den(q);
    return os.str();
}

inline Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            auto dot = s.find('.');
            if (dot != std::string::npos) {
                // decimal literal: digits.digits
                std::string intpart = s.substr(0, dot), frac = s.substr(dot + 1);
                bool neg = !intpart.empty() && intpart[0] == '-';
                if (neg) intpart = intpart.substr(1);
                Integer n = intpart.empty() ? Integer(0) : Integer(intpart);
                Integer d = 1;
                for (char c : frac) {
                    if (c < '0' || c > '9') throw std::invalid_argument("bad digit");
                    n = n * 10 + (c - '0');
                    d *= 10;
                }
                Rational r(n, d);
                return neg ? Rational(-r) : r;
            }
            return Rational(Integer(s));
        }
        Integer n(s.substr(0, slash));
        Integer d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return make_rational(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
    }
}

} // namespace ratcount
