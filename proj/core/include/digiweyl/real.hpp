#pragma once

#include "digiweyl/bignum.hpp"
#include "digiweyl/fixed.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace digiweyl {

// Exact description of a real number: a rational, or the unique real root
// of an integer polynomial inside a rational isolating bracket.
//
// Text forms:
//   rat:p/q  rat:p       exact rational (p may be negative)
//   dec:-1.25e0 ...      terminating decimal, read exactly
//   root:k:p/q           the positive real k-th root of p/q > 0
//   alg:c0,c1,..,cn:lo:hi  root of c0 + c1 x + ... + cn x^n in (lo, hi)
// A bare integer, fraction or decimal is read as rat:.
class RealDesc {
public:
    enum class Kind { Rational, Algebraic };

    static RealDesc rational(Rational v);
    // Root of `poly` (ascending coefficients) with a sign change on [lo, hi].
    static RealDesc algebraic(std::vector<BigInt> poly, Rational lo, Rational hi);
    static RealDesc root(unsigned k, const Rational& radicand);
    static RealDesc parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    bool is_rational() const noexcept { return kind_ == Kind::Rational; }
    const Rational& value() const noexcept { return value_; }
    const std::vector<BigInt>& poly() const noexcept { return poly_; }
    const Rational& bracket_lo() const noexcept { return lo_; }
    const Rational& bracket_hi() const noexcept { return hi_; }

    bool is_zero() const noexcept { return kind_ == Kind::Rational && value_ == 0; }

    RealDesc negated() const;
    // k * alpha for an integer k >= 1.
    RealDesc scaled(std::uint64_t k) const;

    double approx() const;
    std::string str() const;

private:
    Kind kind_ = Kind::Rational;
    Rational value_ = 0;
    std::vector<BigInt> poly_;
    Rational lo_ = 0;
    Rational hi_ = 0;
};

// Closed rational interval certified to contain the described number.
struct RealInterval {
    Rational lo;
    Rational hi;
    bool exact = false;

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
};

// Interval of width at most 2^-bits; bisection on the defining polynomial
// for algebraic numbers.
RealInterval resolve(const RealDesc& alpha, unsigned bits);

// round({alpha} * 2^bits) with ties rounded up, reduced to [0, 2^bits).
// Throws DescriptionError if the rounding cannot be certified.
BigInt quantize_bits(const RealDesc& alpha, unsigned bits);

template <std::size_t Words>
FracFixed<Words> quantize(const RealDesc& alpha) {
    BigInt v = quantize_bits(alpha, FracFixed<Words>::kBits);
    FracFixed<Words> out;
    for (std::size_t i = 0; i < Words; ++i) {
        out.limb[i] = static_cast<std::uint64_t>(v & BigInt(std::uint64_t(-1)));
        v >>= 64;
    }
    return out;
}

template <std::size_t Words>
BigInt to_bigint(const FracFixed<Words>& x) {
    BigInt v = 0;
    for (std::size_t i = Words; i-- > 0;) {
        v <<= 64;
        v += x.limb[i];
    }
    return v;
}

// Parses "p/q", "p" or a decimal literal into an exact rational.
Rational parse_rational_literal(std::string_view text);

} // namespace digiweyl
