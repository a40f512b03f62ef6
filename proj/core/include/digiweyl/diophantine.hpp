#pragma once

#include "digiweyl/bignum.hpp"
#include "digiweyl/real.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace digiweyl {

// a/q with gcd(a, q) = 1 and q >= 1; err = |alpha - a/q| as a double.
struct Convergent {
    BigInt a;
    BigInt q;
    double err = 0.0;
    // |alpha - a/q| < 1/q^2, checked in exact arithmetic.
    bool certified = false;
};

struct ContinuedFraction {
    std::vector<BigInt> quotients;
    // Strictly increasing denominators: when a_1 = 1 the convergent a_0/1
    // is dropped because it repeats denominator 1.
    std::vector<Convergent> convergents;
    // True when alpha is rational and the expansion ended.
    bool terminated = false;
};

// First `count` partial quotients of alpha, computed from a certified
// interval of width 2^-bits. PrecisionError if the interval cannot decide
// all of them.
ContinuedFraction continued_fraction(const RealDesc& alpha, std::size_t count, unsigned bits = 512);

// As above but doubles the working precision until the terms are decided.
ContinuedFraction continued_fraction_adaptive(const RealDesc& alpha, std::size_t count);

// Convergent whose log2 q is nearest to
//   (eta1 log2 ell + zeta3 r) / (eta1 + eta2)
// with ties going to the smaller q. RangeError if no convergent lies
// within r bits of the target.
Convergent choose_q(const RealDesc& alpha, unsigned r, std::uint64_t ell, unsigned d);

// Empirical irrationality exponent from convergents with q <= Q: least
// squares slope of log(1/||q alpha||) against log q over the tail q >= sqrt(Q).
// Not a certificate.
struct TypeProbe {
    double estimate = 0.0;
    bool infinite = false;
    std::size_t samples = 0;
};

TypeProbe diophantine_type_probe(const RealDesc& alpha, double Q);

} // namespace digiweyl
