#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <type_traits>

namespace digiweyl {

// A residue x/2^B in [0, 1) held in Words little-endian 64-bit limbs
// (B = 64 * Words). Addition and integer multiplication wrap mod 2^B,
// which is exact arithmetic mod 1 on the represented dyadic rationals.
template <std::size_t Words>
struct FracFixed {
    static_assert(Words >= 1);
    static constexpr unsigned kBits = static_cast<unsigned>(64 * Words);

    std::array<std::uint64_t, Words> limb{};

    constexpr FracFixed& operator+=(const FracFixed& o) noexcept {
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i < Words; ++i) {
            carry += static_cast<unsigned __int128>(limb[i]) + o.limb[i];
            limb[i] = static_cast<std::uint64_t>(carry);
            carry >>= 64;
        }
        return *this;
    }

    constexpr FracFixed& operator-=(const FracFixed& o) noexcept {
        return *this += -o;
    }

    constexpr FracFixed operator-() const noexcept {
        FracFixed out;
        unsigned __int128 carry = 1;
        for (std::size_t i = 0; i < Words; ++i) {
            carry += static_cast<std::uint64_t>(~limb[i]);
            out.limb[i] = static_cast<std::uint64_t>(carry);
            carry >>= 64;
        }
        return out;
    }

    // Wrapping product with a 64-bit integer.
    constexpr FracFixed& operator*=(std::uint64_t k) noexcept {
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i < Words; ++i) {
            carry += static_cast<unsigned __int128>(limb[i]) * k;
            limb[i] = static_cast<std::uint64_t>(carry);
            carry >>= 64;
        }
        return *this;
    }

    friend constexpr FracFixed operator+(FracFixed a, const FracFixed& b) noexcept { return a += b; }
    friend constexpr FracFixed operator-(FracFixed a, const FracFixed& b) noexcept { return a -= b; }
    friend constexpr FracFixed operator*(FracFixed a, std::uint64_t k) noexcept { return a *= k; }

    friend constexpr bool operator==(const FracFixed&, const FracFixed&) = default;

    friend constexpr std::strong_ordering operator<=>(const FracFixed& a, const FracFixed& b) noexcept {
        for (std::size_t i = Words; i-- > 0;) {
            if (a.limb[i] != b.limb[i]) {
                return a.limb[i] <=> b.limb[i];
            }
        }
        return std::strong_ordering::equal;
    }

    // Top 53 bits as a double in [0, 1).
    double to_unit() const noexcept {
        return static_cast<double>(limb[Words - 1] >> 11) * 0x1p-53;
    }

    constexpr bool is_zero() const noexcept {
        for (auto w : limb) {
            if (w != 0) {
                return false;
            }
        }
        return true;
    }
};

// e(x) = exp(2 pi i x) from the top 53 bits.
struct UnitPoint {
    double re;
    double im;
};

template <std::size_t Words>
inline UnitPoint unit_point(const FracFixed<Words>& x) noexcept {
    const double angle = 2.0 * std::numbers::pi * x.to_unit();
    return {std::cos(angle), std::sin(angle)};
}

using Frac128 = FracFixed<2>;
using Frac192 = FracFixed<3>;
using Frac256 = FracFixed<4>;

// Runtime precision selector; only these three are supported.
enum class Precision : unsigned { B128 = 128, B192 = 192, B256 = 256 };

constexpr unsigned bits_of(Precision p) noexcept {
    return static_cast<unsigned>(p);
}

// Throws DomainError for anything other than 128/192/256.
Precision precision_from_bits(unsigned bits);

// Dispatch a generic lambda on the limb count for a runtime precision.
template <class Fn>
decltype(auto) with_precision(Precision p, Fn&& fn) {
    switch (p) {
    case Precision::B192:
        return fn(std::integral_constant<std::size_t, 3>{});
    case Precision::B256:
        return fn(std::integral_constant<std::size_t, 4>{});
    case Precision::B128:
    default:
        return fn(std::integral_constant<std::size_t, 2>{});
    }
}

} // namespace digiweyl
