#include "digiweyl/mvt.hpp"

#include "digiweyl/digits.hpp"
#include "digiweyl/errors.hpp"
#include "digiweyl/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace digiweyl {

namespace {

using u128 = unsigned __int128;

template <class Key>
struct Entry {
    Key key;
    std::uint64_t weight;

    bool operator<(const Entry& o) const { return key < o.key; }
};

// Visits every nondecreasing s-tuple with smallest entry `lead`, passing the
// tuple and its number of orderings.
template <class Fn>
void for_each_multiset(unsigned s, std::uint64_t N, std::uint64_t lead, Fn&& fn) {
    std::vector<std::uint64_t> t(s, lead);
    for (;;) {
        std::uint64_t w = 1;
        unsigned left = s;
        for (unsigned i = 0; i < s;) {
            unsigned j = i;
            while (j < s && t[j] == t[i]) {
                ++j;
            }
            w *= small_binomial(left, j - i);
            left -= j - i;
            i = j;
        }
        fn(t, w);
        // Next tuple: bump the rightmost entry below N and reset the tail.
        unsigned i = s;
        while (i > 1 && t[i - 1] == N) {
            --i;
        }
        if (i <= 1) {
            return;
        }
        const std::uint64_t v = t[i - 1] + 1;
        for (unsigned j = i - 1; j < s; ++j) {
            t[j] = v;
        }
    }
}

template <class Key, class MakeKey>
BigInt count_sorted(unsigned s, std::uint64_t N, unsigned threads, MakeKey&& make_key) {
    const auto parts = run_blocks<std::vector<Entry<Key>>>(static_cast<std::size_t>(N), threads, [&](std::size_t b) {
        std::vector<Entry<Key>> out;
        for_each_multiset(s, N, b + 1, [&](const std::vector<std::uint64_t>& t, std::uint64_t w) {
            out.push_back({make_key(t), w});
        });
        return out;
    });
    std::vector<Entry<Key>> all;
    for (const auto& p : parts) {
        all.insert(all.end(), p.begin(), p.end());
    }
    std::sort(all.begin(), all.end());

    BigInt total = 0;
    for (std::size_t i = 0; i < all.size();) {
        std::uint64_t group = 0;
        std::size_t j = i;
        while (j < all.size() && all[j].key == all[i].key) {
            group += all[j].weight;
            ++j;
        }
        total += BigInt(group) * group;
        i = j;
    }
    return total;
}

} // namespace

unsigned critical_exponent(unsigned d) {
    return d * (d + 1) / 2;
}

BigInt vinogradov_count(unsigned d, unsigned s, std::uint64_t N, unsigned threads) {
    if (d == 0 || s == 0 || N == 0) {
        throw DomainError(fmt::format("vinogradov_count needs d, s, N >= 1 (d={}, s={}, N={})", d, s, N));
    }
    if (N == 1) {
        return 1;
    }
    if (static_cast<double>(s) * std::log10(static_cast<double>(N)) > 8.0 + 1e-12) {
        throw ResourceError(fmt::format("N^s = {}^{} exceeds the enumeration guard 1e8", N, s));
    }

    // Power sum j is at most s N^j; the packed key needs sum log2(s N^j + 1) bits.
    double key_bits = 0.0;
    for (unsigned j = 1; j <= d; ++j) {
        key_bits += std::log2(static_cast<double>(s)) + j * std::log2(static_cast<double>(N)) + 1e-9;
    }
    if (key_bits < 126.0) {
        return count_sorted<u128>(s, N, threads, [&](const std::vector<std::uint64_t>& t) {
            u128 key = 0;
            u128 scale = 1;
            for (unsigned j = 1; j <= d; ++j) {
                u128 sum = 0;
                u128 radix = 1;
                for (unsigned e = 0; e < j; ++e) {
                    radix *= N;
                }
                for (auto n : t) {
                    u128 p = 1;
                    for (unsigned e = 0; e < j; ++e) {
                        p *= n;
                    }
                    sum += p;
                }
                key += sum * scale;
                scale *= radix * s + 1;
            }
            return key;
        });
    }
    return count_sorted<BigInt>(s, N, threads, [&](const std::vector<std::uint64_t>& t) {
        BigInt key = 0;
        BigInt scale = 1;
        for (unsigned j = 1; j <= d; ++j) {
            BigInt sum = 0;
            for (auto n : t) {
                sum += boost::multiprecision::pow(BigInt(n), j);
            }
            key += sum * scale;
            scale *= boost::multiprecision::pow(BigInt(N), j) * s + 1;
        }
        return key;
    });
}

MvtReport mvt_scaling_report(unsigned d, unsigned s, std::span<const std::uint64_t> N_list, double threshold,
                             unsigned threads) {
    MvtReport rep;
    rep.d = d;
    rep.s = s;
    rep.critical = critical_exponent(d);
    rep.threshold = threshold;
    const double sd = rep.critical;
    for (auto N : N_list) {
        MvtRow row;
        row.N = N;
        row.J = vinogradov_count(d, s, N, threads);
        const double n = static_cast<double>(N);
        row.envelope = std::pow(n, s) + std::pow(n, 2.0 * s - sd);
        row.ratio = to_double(row.J) / row.envelope;
        if (s > rep.critical) {
            row.asymptotic_ratio = to_double(row.J) / std::pow(n, 2.0 * s - sd);
        }
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace digiweyl
