#pragma once

#include "digiweyl/bignum.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace digiweyl {

inline constexpr std::uint64_t kMvtGuard = 100'000'000;

// J_{d,s}(N): 2s-tuples in [1,N] whose power sums of orders 1..d agree on
// both halves. ResourceError when N^s exceeds kMvtGuard.
BigInt vinogradov_count(unsigned d, unsigned s, std::uint64_t N, unsigned threads = 1);

// d(d+1)/2
unsigned critical_exponent(unsigned d);

struct MvtRow {
    std::uint64_t N = 0;
    BigInt J;
    // N^s + N^(2s - s(d))
    double envelope = 0.0;
    double ratio = 0.0;
    // J / N^(2s - s(d)) when s > s(d).
    std::optional<double> asymptotic_ratio;
};

struct MvtReport {
    unsigned d = 1;
    unsigned s = 1;
    unsigned critical = 1;
    std::vector<MvtRow> rows;
    double max_ratio = 0.0;
    double threshold = 4.0;

    bool bounded() const noexcept { return max_ratio <= threshold; }
};

MvtReport mvt_scaling_report(unsigned d, unsigned s, std::span<const std::uint64_t> N_list, double threshold = 4.0,
                             unsigned threads = 1);

} // namespace digiweyl
