#pragma once

#include "digiweyl/bignum.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace digiweyl {

// Bit length cap for index sets; members are 64-bit unsigned.
inline constexpr unsigned kMaxBits = 63;

constexpr unsigned digit_sum(std::uint64_t n) noexcept {
    return static_cast<unsigned>(std::popcount(n));
}

// Overlapping occurrences of the block "11" in the binary expansion.
constexpr unsigned chi11(std::uint64_t n) noexcept {
    return static_cast<unsigned>(std::popcount(n & (n >> 1)));
}

constexpr int thue_morse(std::uint64_t n) noexcept {
    return (digit_sum(n) & 1U) ? -1 : 1;
}

constexpr int rudin_shapiro(std::uint64_t n) noexcept {
    return (chi11(n) & 1U) ? -1 : 1;
}

// t_n * t_{n+1}; the parity of sigma(n) + sigma(n+1) equals the popcount
// parity of n ^ (n + 1).
constexpr int thue_morse_pair(std::uint64_t n) noexcept {
    return (std::popcount(n ^ (n + 1)) & 1) ? -1 : 1;
}

// Smallest integer greater than x with the same popcount (x != 0).
constexpr std::uint64_t next_same_popcount(std::uint64_t x) noexcept {
    const std::uint64_t lowest = x & (~x + 1);
    const std::uint64_t ripple = x + lowest;
    const std::uint64_t ones = ((x ^ ripple) >> 2) / lowest;
    return ripple | ones;
}

// C(n, k) for n <= 64, exact in 64 bits.
std::uint64_t small_binomial(unsigned n, unsigned k) noexcept;

// The member of rank `rank` (0-based, increasing order) among r-bit
// integers with popcount s. Requires rank < C(r, s).
std::uint64_t unrank_fixed_sum(unsigned r, unsigned s, std::uint64_t rank);

// Number of r-bit integers with popcount s that are strictly below n.
std::uint64_t rank_fixed_sum(unsigned r, unsigned s, std::uint64_t n);

enum class DigitClass {
    FixedSum,        // sigma(n) == s
    CongruenceSum,   // sigma(n) == k (mod m)
    Chi11Parity,     // chi11(n) == k (mod 2)
    SigmaPairParity, // sigma(n) + sigma(n+1) == 0 (mod 2)
    Full,
};

struct DigitClassSpec {
    DigitClass kind = DigitClass::Full;
    unsigned r = 0;
    unsigned s = 0;
    unsigned k = 0;
    unsigned m = 1;

    static DigitClassSpec full(unsigned r);
    static DigitClassSpec fixed_sum(unsigned r, unsigned s);
    static DigitClassSpec congruence(unsigned r, unsigned k, unsigned m);
    static DigitClassSpec chi11_parity(unsigned r, unsigned k);
    static DigitClassSpec sigma_pair(unsigned r);

    // Throws DomainError when the invariants of `kind` do not hold.
    void validate() const;

    bool contains(std::uint64_t n) const noexcept;

    // One past the largest admissible member, i.e. 2^r.
    std::uint64_t limit() const noexcept { return std::uint64_t{1} << r; }

    std::string describe() const;

    friend bool operator==(const DigitClassSpec&, const DigitClassSpec&) = default;
};

// Members of a class in strictly increasing order, optionally restricted
// to the value window [lo, hi). Independent windows may be consumed from
// separate threads.
class MemberStream {
public:
    explicit MemberStream(const DigitClassSpec& spec);
    MemberStream(const DigitClassSpec& spec, std::uint64_t lo, std::uint64_t hi);

    std::optional<std::uint64_t> next();

private:
    DigitClassSpec spec_;
    std::uint64_t cur_ = 0;
    std::uint64_t hi_ = 0;
    bool done_ = false;
};

std::vector<std::uint64_t> enumerate(const DigitClassSpec& spec);

// Exact size of the class: binomial for FixedSum, digit DP otherwise.
BigInt cardinality(const DigitClassSpec& spec);

// Calls fn(n) for every member in increasing order.
template <class Fn>
void for_each_member(const DigitClassSpec& spec, Fn&& fn) {
    MemberStream stream(spec);
    while (auto n = stream.next()) {
        fn(*n);
    }
}

} // namespace digiweyl
