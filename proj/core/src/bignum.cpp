#include "digiweyl/bignum.hpp"

#include <cmath>

namespace digiweyl {

namespace {

// Returns (mantissa, exponent) with x ~= mantissa * 2^exponent and the
// mantissa carrying the top 64 bits of |x|.
std::pair<double, long> split(const BigInt& x) {
    BigInt ax = abs(x);
    if (ax == 0) {
        return {0.0, 0};
    }
    const long bits = static_cast<long>(boost::multiprecision::msb(ax)) + 1;
    long shift = bits > 64 ? bits - 64 : 0;
    BigInt top = ax >> shift;
    double m = static_cast<double>(top.convert_to<std::uint64_t>());
    return {x < 0 ? -m : m, shift};
}

} // namespace

double to_double(const BigInt& x) {
    auto [m, e] = split(x);
    return std::ldexp(m, static_cast<int>(e));
}

double to_double(const Rational& x) {
    auto [mn, en] = split(boost::multiprecision::numerator(x));
    auto [md, ed] = split(boost::multiprecision::denominator(x));
    if (mn == 0.0) {
        return 0.0;
    }
    return std::ldexp(mn / md, static_cast<int>(en - ed));
}

double log2_of(const BigInt& x) {
    auto [m, e] = split(x);
    return std::log2(std::abs(m)) + static_cast<double>(e);
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    BigInt c = 1;
    for (unsigned i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

} // namespace digiweyl
