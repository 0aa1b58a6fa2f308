#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace theta {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::rational<Integer>;

// Floor division / modulus with nonnegative remainder for any sign of a.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Integer floor_mod(const Integer& a, const Integer& b) {
    Integer r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

// Nearest integer to a/b, ties toward +infinity.  b > 0 required.
inline Integer round_div(const Integer& a, const Integer& b) {
    return floor_div(2 * a + b, 2 * b);
}

inline Integer pow_mod(Integer base, Integer exp, const Integer& mod) {
    Integer r = 1;
    base = floor_mod(base, mod);
    while (exp > 0) {
        if ((exp & 1) != 0) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

inline Integer inv_mod(const Integer& a, const Integer& m) {
    // extended Euclid
    Integer r0 = m, r1 = floor_mod(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    return floor_mod(s0, m);
}

} // namespace theta
