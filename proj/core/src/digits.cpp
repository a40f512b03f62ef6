#include "digiweyl/digits.hpp"

#include "digiweyl/errors.hpp"

#include <array>
#include <fmt/format.h>

namespace digiweyl {

namespace {

using PascalRow = std::array<std::uint64_t, 65>;

const std::array<PascalRow, 65>& pascal() {
    static const auto table = [] {
        std::array<PascalRow, 65> t{};
        for (unsigned n = 0; n <= 64; ++n) {
            t[n][0] = 1;
            for (unsigned k = 1; k <= n; ++k) {
                // C(64, 32) is the only entry near 2^64; it still fits.
                t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
            }
        }
        return t;
    }();
    return table;
}

} // namespace

std::uint64_t small_binomial(unsigned n, unsigned k) noexcept {
    if (n > 64 || k > n) {
        return 0;
    }
    return pascal()[n][k];
}

std::uint64_t unrank_fixed_sum(unsigned r, unsigned s, std::uint64_t rank) {
    std::uint64_t n = 0;
    unsigned ones = s;
    for (unsigned j = r; j-- > 0 && ones > 0;) {
        // Members with bit j clear put all remaining ones below j.
        const std::uint64_t clear = small_binomial(j, ones);
        if (rank >= clear) {
            rank -= clear;
            n |= std::uint64_t{1} << j;
            --ones;
        }
    }
    return n;
}

std::uint64_t rank_fixed_sum(unsigned r, unsigned s, std::uint64_t n) {
    if (r < 64 && n >= (std::uint64_t{1} << r)) {
        return small_binomial(r, s);
    }
    std::uint64_t count = 0;
    unsigned seen = 0;
    for (unsigned j = r; j-- > 0;) {
        if ((n >> j) & 1U) {
            if (s >= seen) {
                count += small_binomial(j, s - seen);
            }
            ++seen;
            if (seen > s) {
                break;
            }
        }
    }
    return count;
}

DigitClassSpec DigitClassSpec::full(unsigned r) {
    return DigitClassSpec{DigitClass::Full, r, 0, 0, 1};
}

DigitClassSpec DigitClassSpec::fixed_sum(unsigned r, unsigned s) {
    return DigitClassSpec{DigitClass::FixedSum, r, s, 0, 1};
}

DigitClassSpec DigitClassSpec::congruence(unsigned r, unsigned k, unsigned m) {
    return DigitClassSpec{DigitClass::CongruenceSum, r, 0, k, m};
}

DigitClassSpec DigitClassSpec::chi11_parity(unsigned r, unsigned k) {
    return DigitClassSpec{DigitClass::Chi11Parity, r, 0, k, 2};
}

DigitClassSpec DigitClassSpec::sigma_pair(unsigned r) {
    return DigitClassSpec{DigitClass::SigmaPairParity, r, 0, 0, 2};
}

void DigitClassSpec::validate() const {
    if (r > kMaxBits) {
        throw DomainError(fmt::format("bit length r={} exceeds the cap {}", r, kMaxBits));
    }
    switch (kind) {
    case DigitClass::FixedSum:
        if (s > r) {
            throw DomainError(fmt::format("fixed digit sum needs 0 <= s <= r, got s={} r={}", s, r));
        }
        break;
    case DigitClass::CongruenceSum:
        if (m < 1 || k >= m) {
            throw DomainError(fmt::format("congruence class needs m >= 1 and 0 <= k < m, got k={} m={}", k, m));
        }
        break;
    case DigitClass::Chi11Parity:
        if (k > 1) {
            throw DomainError(fmt::format("chi11 parity class needs k in {{0,1}}, got {}", k));
        }
        break;
    case DigitClass::SigmaPairParity:
    case DigitClass::Full:
        break;
    }
}

bool DigitClassSpec::contains(std::uint64_t n) const noexcept {
    if (n >= limit()) {
        return false;
    }
    switch (kind) {
    case DigitClass::FixedSum:
        return digit_sum(n) == s;
    case DigitClass::CongruenceSum:
        return digit_sum(n) % m == k;
    case DigitClass::Chi11Parity:
        return (chi11(n) & 1U) == k;
    case DigitClass::SigmaPairParity:
        return thue_morse_pair(n) == 1;
    case DigitClass::Full:
        return true;
    }
    return false;
}

std::string DigitClassSpec::describe() const {
    switch (kind) {
    case DigitClass::FixedSum:
        return fmt::format("fixed(r={},s={})", r, s);
    case DigitClass::CongruenceSum:
        return fmt::format("cong(r={},k={},m={})", r, k, m);
    case DigitClass::Chi11Parity:
        return fmt::format("chi11(r={},k={})", r, k);
    case DigitClass::SigmaPairParity:
        return fmt::format("sigmapair(r={})", r);
    case DigitClass::Full:
        return fmt::format("full(r={})", r);
    }
    return "?";
}

MemberStream::MemberStream(const DigitClassSpec& spec) : MemberStream(spec, 0, spec.limit()) {}

MemberStream::MemberStream(const DigitClassSpec& spec, std::uint64_t lo, std::uint64_t hi)
    : spec_(spec), hi_(std::min(hi, spec.limit())) {
    spec_.validate();
    if (lo >= hi_) {
        done_ = true;
        return;
    }
    if (spec_.kind == DigitClass::FixedSum) {
        const std::uint64_t rank = rank_fixed_sum(spec_.r, spec_.s, lo);
        if (rank >= small_binomial(spec_.r, spec_.s)) {
            done_ = true;
            return;
        }
        cur_ = unrank_fixed_sum(spec_.r, spec_.s, rank);
    } else {
        cur_ = lo;
    }
}

std::optional<std::uint64_t> MemberStream::next() {
    if (done_) {
        return std::nullopt;
    }
    if (spec_.kind == DigitClass::FixedSum) {
        if (cur_ >= hi_) {
            done_ = true;
            return std::nullopt;
        }
        const std::uint64_t out = cur_;
        if (out == 0) {
            // s == 0: zero is the only member.
            done_ = true;
        } else {
            cur_ = next_same_popcount(out);
        }
        return out;
    }
    while (cur_ < hi_) {
        const std::uint64_t n = cur_++;
        if (spec_.contains(n)) {
            return n;
        }
    }
    done_ = true;
    return std::nullopt;
}

std::vector<std::uint64_t> enumerate(const DigitClassSpec& spec) {
    std::vector<std::uint64_t> out;
    for_each_member(spec, [&](std::uint64_t n) { out.push_back(n); });
    return out;
}

BigInt cardinality(const DigitClassSpec& spec) {
    spec.validate();
    const unsigned r = spec.r;
    switch (spec.kind) {
    case DigitClass::Full:
        return pow2(r);
    case DigitClass::FixedSum:
        return binomial(r, spec.s);
    case DigitClass::CongruenceSum: {
        // counts[j] = #{prefixes with digit sum == j (mod m)}
        std::vector<BigInt> counts(spec.m, 0);
        counts[0] = 1;
        for (unsigned pos = 0; pos < r; ++pos) {
            std::vector<BigInt> next(spec.m, 0);
            for (unsigned j = 0; j < spec.m; ++j) {
                next[j] += counts[j];
                next[(j + 1) % spec.m] += counts[j];
            }
            counts.swap(next);
        }
        return counts[spec.k];
    }
    case DigitClass::Chi11Parity: {
        // state = (previous digit, parity of chi11 so far), digits from the bottom.
        BigInt st[2][2] = {{1, 0}, {0, 0}};
        for (unsigned pos = 0; pos < r; ++pos) {
            BigInt nx[2][2] = {{0, 0}, {0, 0}};
            for (unsigned prev = 0; prev < 2; ++prev) {
                for (unsigned par = 0; par < 2; ++par) {
                    nx[0][par] += st[prev][par];
                    nx[1][par ^ prev] += st[prev][par];
                }
            }
            for (unsigned a = 0; a < 2; ++a) {
                for (unsigned b = 0; b < 2; ++b) {
                    st[a][b] = nx[a][b];
                }
            }
        }
        return st[0][spec.k] + st[1][spec.k];
    }
    case DigitClass::SigmaPairParity: {
        // The class is decided by the parity of the trailing-ones run t:
        // sigma(n) + sigma(n+1) = sigma(n) + sigma(n) - t + 1.
        // state: run still open with parity p, or closed with parity p.
        BigInt open[2] = {1, 0};
        BigInt closed[2] = {0, 0};
        for (unsigned pos = 0; pos < r; ++pos) {
            BigInt nopen[2] = {open[1], open[0]};
            BigInt nclosed[2] = {closed[0] * 2 + open[0], closed[1] * 2 + open[1]};
            open[0] = nopen[0];
            open[1] = nopen[1];
            closed[0] = nclosed[0];
            closed[1] = nclosed[1];
        }
        // Members need t + 1 even, i.e. an odd trailing run.
        return open[1] + closed[1];
    }
    }
    return 0;
}

} // namespace digiweyl
