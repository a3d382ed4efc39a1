#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace semipos {

// Exact rational coefficient over arbitrary-precision integers.  All class
// arithmetic in the characteristic-class ring is carried out in this type;
// floating point never enters there.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical "p" / "p/q" rendering (q > 0, gcd(p,q) = 1).
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    BigInt result = 1;
    for (long i = 0; i < k; ++i) {
        result *= (n - i);
        result /= (i + 1);
    }
    return result;
}

}  // namespace semipos
