#pragma once

// Reference implementations used only by the tests. They share no
// arithmetic with the library beyond resolve(), which is itself tested
// against exact rationals.

#include "digiweyl/bignum.hpp"
#include "digiweyl/digits.hpp"
#include "digiweyl/polynomial.hpp"
#include "digiweyl/real.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using digiweyl::BigInt;

// {ell f(n)} from floor(alpha_i 2^K) with plain big-integer arithmetic.
class NaivePhase {
public:
    explicit NaivePhase(const digiweyl::Polynomial& f, unsigned K = 320) : K_(K), mod_(digiweyl::pow2(K)) {
        for (const auto& c : f.coeffs()) {
            const auto iv = digiweyl::resolve(c, K + 16);
            num_.push_back(digiweyl::floor_of(iv.mid() * digiweyl::Rational(mod_)));
        }
    }

    double operator()(std::uint64_t ell, std::uint64_t n) const {
        BigInt acc = 0;
        BigInt p = 1;
        for (const auto& a : num_) {
            p *= n;
            acc += a * p;
        }
        acc *= ell;
        acc %= mod_;
        if (acc < 0) {
            acc += mod_;
        }
        return static_cast<double>(BigInt(acc >> (K_ - 60))) * 0x1p-60;
    }

private:
    unsigned K_;
    BigInt mod_;
    std::vector<BigInt> num_;
};

inline std::complex<double> unit(double x) {
    const double a = 2.0 * std::numbers::pi * x;
    return {std::cos(a), std::sin(a)};
}

// sum over n in [0, 2^r) of weight(n) e(ell f(n)).
inline std::complex<double> weighted_sum(const NaivePhase& ph, std::uint64_t ell, unsigned r,
                                         const std::function<int(std::uint64_t)>& weight) {
    std::complex<long double> acc = 0;
    const std::uint64_t lim = std::uint64_t{1} << r;
    for (std::uint64_t n = 0; n < lim; ++n) {
        const int w = weight(n);
        if (w != 0) {
            const auto u = unit(ph(ell, n));
            acc += std::complex<long double>(w * u.real(), w * u.imag());
        }
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Brute-force extreme discrepancy: every interval with endpoints in the
// sample or {0, 1}, open or closed at either end.
inline double brute_discrepancy(const std::vector<double>& pts) {
    std::vector<double> ends = pts;
    ends.push_back(0.0);
    ends.push_back(1.0);
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    const double n = static_cast<double>(pts.size());
    std::vector<double> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    auto count_le = [&](double x) {
        return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
    };
    auto count_lt = [&](double x) {
        return static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
    };
    double best = 0.0;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        for (std::size_t j = i; j < ends.size(); ++j) {
            const double a = ends[i];
            const double b = ends[j];
            const double len = b - a;
            // [a, b], [a, b), (a, b], (a, b)
            const double closed = count_le(b) - count_lt(a);
            const double half_r = count_lt(b) - count_lt(a);
            const double half_l = count_le(b) - count_le(a);
            const double open = std::max(0.0, count_lt(b) - count_le(a));
            for (double c : {closed, half_r, half_l, open}) {
                best = std::max(best, std::fabs(c / n - len));
            }
        }
    }
    return best;
}

// J_{d,s}(N) by direct enumeration of all ordered 2s-tuples; tiny inputs only.
inline std::uint64_t brute_vinogradov(unsigned d, unsigned s, std::uint64_t N) {
    std::vector<std::vector<std::uint64_t>> sums;
    std::vector<std::uint64_t> t(s, 1);
    for (;;) {
        std::vector<std::uint64_t> v(d, 0);
        for (auto n : t) {
            std::uint64_t p = 1;
            for (unsigned j = 0; j < d; ++j) {
                p *= n;
                v[j] += p;
            }
        }
        sums.push_back(std::move(v));
        unsigned i = 0;
        while (i < s && t[i] == N) {
            t[i++] = 1;
        }
        if (i == s) {
            break;
        }
        ++t[i];
    }
    std::uint64_t count = 0;
    for (const auto& a : sums) {
        for (const auto& b : sums) {
            count += a == b;
        }
    }
    return count;
}

} // namespace oracle
