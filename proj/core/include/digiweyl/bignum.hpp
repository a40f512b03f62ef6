#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace digiweyl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned bits) {
    BigInt one = 1;
    return one << bits;
}

// floor(a / b) for b > 0; cpp_int division truncates toward zero.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && (a < 0)) {
        --q;
    }
    return q;
}

inline BigInt floor_of(const Rational& x) {
    return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

// Correctly scaled conversion that survives numerators and denominators far
// outside the double exponent range.
double to_double(const BigInt& x);
double to_double(const Rational& x);

// log2 of a positive integer, accurate for arbitrarily large values.
double log2_of(const BigInt& x);

BigInt binomial(unsigned n, unsigned k);

BigInt gcd(const BigInt& a, const BigInt& b);

} // namespace digiweyl
