#include "digiweyl/selftest.hpp"

#include "digiweyl/bounds.hpp"
#include "digiweyl/diophantine.hpp"
#include "digiweyl/discrepancy.hpp"
#include "digiweyl/exponents.hpp"
#include "digiweyl/mvt.hpp"
#include "digiweyl/weyl.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>

namespace digiweyl {

namespace {

using Outcome = std::optional<std::string>;  // failure detail, or nullopt

Polynomial random_poly(std::mt19937_64& rng, unsigned d) {
    std::vector<RealDesc> cs;
    for (unsigned i = 0; i < d; ++i) {
        cs.push_back(rng() % 2 ? RealDesc::rational(Rational(BigInt(rng() % 2000) - 1000, BigInt(1 + rng() % 997)))
                               : RealDesc::root(2 + rng() % 3, Rational(2 + rng() % 40)));
    }
    if (cs.back().is_zero()) {
        cs.back() = RealDesc::root(3, 2);
    }
    return Polynomial(cs);
}

// Per-member Horner loop, the slow path the engine must agree with.
std::complex<double> horner_sum(const QuantizedPoly<2>& q, std::uint64_t ell, unsigned r,
                                const std::function<int(std::uint64_t)>& w) {
    std::complex<long double> acc = 0;
    for (std::uint64_t n = 0; n < (std::uint64_t{1} << r); ++n) {
        if (const int k = w(n)) {
            const auto p = unit_point(frac_eval(q, ell, n));
            acc += std::complex<long double>(k * p.re, k * p.im);
        }
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double brute_discrepancy(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::vector<double> ends = xs;
    ends.push_back(0.0);
    ends.push_back(1.0);
    std::sort(ends.begin(), ends.end());
    const double n = static_cast<double>(xs.size());
    double best = 0.0;
    for (double a : ends) {
        for (double b : ends) {
            if (b < a) {
                continue;
            }
            const auto lo_lt = std::lower_bound(xs.begin(), xs.end(), a) - xs.begin();
            const auto lo_le = std::upper_bound(xs.begin(), xs.end(), a) - xs.begin();
            const auto hi_lt = std::lower_bound(xs.begin(), xs.end(), b) - xs.begin();
            const auto hi_le = std::upper_bound(xs.begin(), xs.end(), b) - xs.begin();
            for (auto c : {hi_le - lo_lt, hi_lt - lo_lt, hi_le - lo_le, std::max<long>(0, hi_lt - lo_le)}) {
                best = std::max(best, std::fabs(static_cast<double>(c) / n - (b - a)));
            }
        }
    }
    return best;
}

} // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed, unsigned threads) {
    std::vector<SelftestCheck> out;
    std::mt19937_64 rng(seed);
    auto check = [&](std::string name, const std::function<Outcome()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        SelftestCheck c;
        c.name = std::move(name);
        try {
            if (auto fail = body()) {
                c.ok = false;
                c.detail = *fail;
            }
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = fmt::format("unexpected exception: {}", e.what());
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(c));
    };

    check("gosper enumeration equals popcount filter", [&]() -> Outcome {
        for (unsigned r = 1; r <= 12; ++r) {
            for (unsigned s = 0; s <= r; ++s) {
                std::vector<std::uint64_t> want;
                for (std::uint64_t n = 0; n < (std::uint64_t{1} << r); ++n) {
                    if (digit_sum(n) == s) {
                        want.push_back(n);
                    }
                }
                if (enumerate(DigitClassSpec::fixed_sum(r, s)) != want) {
                    return fmt::format("r={} s={}", r, s);
                }
            }
        }
        return std::nullopt;
    });

    check("class cardinalities partition 2^r", [&]() -> Outcome {
        for (unsigned r : {5u, 17u, 40u, 63u}) {
            BigInt a = 0, b = 0;
            for (unsigned s = 0; s <= r; ++s) {
                a += cardinality(DigitClassSpec::fixed_sum(r, s));
            }
            for (unsigned k = 0; k < 5; ++k) {
                b += cardinality(DigitClassSpec::congruence(r, k, 5));
            }
            if (a != pow2(r) || b != pow2(r)) {
                return fmt::format("r={}", r);
            }
        }
        return std::nullopt;
    });

    check("difference stream bit-identical to Horner", [&]() -> Outcome {
        for (unsigned d = 1; d <= 8; ++d) {
            const auto q = quantize<2>(random_poly(rng, d));
            const std::uint64_t n0 = rng() % (std::uint64_t{1} << 40);
            DifferenceStream<2> st(q, 3, n0);
            for (int i = 0; i < 20000; ++i, st.advance()) {
                if (st.value() != frac_eval(q, 3, st.index())) {
                    return fmt::format("d={} n={}", d, st.index());
                }
            }
        }
        return std::nullopt;
    });

    check("engine sums equal per-member Horner loops", [&]() -> Outcome {
        for (int t = 0; t < 6; ++t) {
            const unsigned d = 3 + t % 3;
            const unsigned r = 10;
            const auto f = random_poly(rng, d);
            const auto q = quantize<2>(f);
            const WeylEngine eng(f, {.threads = threads, .partitions = 5});
            const std::uint64_t ell = 1 + rng() % 4;
            const std::pair<SumResult, std::function<int(std::uint64_t)>> cases[] = {
                {eng.sum_congruence(ell, r, 1, 3), [](std::uint64_t n) { return int(digit_sum(n) % 3 == 1); }},
                {eng.sum_fixed_digit(ell, r, 4), [](std::uint64_t n) { return int(digit_sum(n) == 4); }},
                {eng.sum_thue_morse(ell, r), [](std::uint64_t n) { return thue_morse(n); }},
                {eng.sum_rudin_shapiro(ell, r), [](std::uint64_t n) { return rudin_shapiro(n); }},
                {eng.sum_double_twist(ell, r), [](std::uint64_t n) { return thue_morse_pair(n); }},
                {eng.sum_chi11_class(ell, r, 0), [](std::uint64_t n) { return int(chi11(n) % 2 == 0); }},
                {eng.sum_sigma_pair(ell, r), [](std::uint64_t n) { return int(thue_morse_pair(n) == 1); }},
            };
            for (const auto& [got, w] : cases) {
                if (std::abs(got.value() - horner_sum(q, ell, r, w)) > 1e-9) {
                    return fmt::format("{} ell={}", f.str(), ell);
                }
            }
        }
        return std::nullopt;
    });

    check("partition identities", [&]() -> Outcome {
        const WeylEngine eng(Polynomial::monomial(RealDesc::root(3, 2), 3), {.threads = threads});
        const unsigned r = 14;
        const double tol = std::ldexp(1.0, static_cast<int>(r) - 40);
        const auto full = eng.full_range_sum(1, r).value();
        std::complex<double> s = 0;
        for (unsigned k = 0; k <= r; ++k) {
            s += eng.sum_fixed_digit(1, r, k).value();
        }
        const auto u0 = eng.sum_congruence(1, r, 0, 2).value();
        const auto u1 = eng.sum_congruence(1, r, 1, 2).value();
        const double errs[] = {
            std::abs(s - full),
            std::abs(u0 + u1 - full),
            std::abs(eng.sum_thue_morse(1, r).value() - (u0 - u1)),
            std::abs(eng.sum_rudin_shapiro(1, r).value() - (2.0 * eng.sum_chi11_class(1, r, 0).value() - full)),
            std::abs(eng.sum_double_twist(1, r).value() - (2.0 * eng.sum_sigma_pair(1, r).value() - full)),
        };
        for (double e : errs) {
            if (e > tol) {
                return fmt::format("residual {}", e);
            }
        }
        return std::nullopt;
    });

    check("sums independent of thread count", [&]() -> Outcome {
        const auto f = Polynomial::parse("root:2:3;0;root:3:2");
        const auto a = WeylEngine(f, {.threads = 1}).sum_fixed_digit(1, 20, 9);
        const auto b = WeylEngine(f, {.threads = std::max(2u, threads)}).sum_fixed_digit(1, 20, 9);
        if (a.re != b.re || a.im != b.im) {
            return std::string("results differ");
        }
        return std::nullopt;
    });

    check("exponent relations for d in [3, 1000]", [&]() -> Outcome {
        const auto rep = inequality_suite(3, 1000);
        if (!rep.ok()) {
            return fmt::format("'{}' fails at d={}", rep.first_violation->name, rep.first_violation->d);
        }
        return std::nullopt;
    });

    check("rho0 solves H(rho) = 1 - xi", [&]() -> Outcome {
        for (unsigned d = 3; d <= 10; ++d) {
            const double rho = rho_threshold(d);
            if (std::fabs(binary_entropy(rho) - (1.0 - to_double(profile(d).xi))) > 1e-10) {
                return fmt::format("d={}", d);
            }
        }
        return std::nullopt;
    });

    check("Delta never exceeds its simplification", [&]() -> Outcome {
        for (int i = 0; i < 10000; ++i) {
            const auto h = static_cast<std::int64_t>(1 + rng() % 10000);
            const std::uint64_t q = 1 + rng() % 100000;
            const std::uint64_t N = 2 + rng() % 10000;
            const auto r = delta_lemma(h, q, N, 3 + rng() % 5, std::gcd(static_cast<std::uint64_t>(h), q));
            if (r.delta > r.delta_simplified * (1 + 1e-12)) {
                return fmt::format("h={} q={} N={}", h, q, N);
            }
        }
        return std::nullopt;
    });

    check("power-sum optimizer against a grid", [&]() -> Outcome {
        std::uniform_real_distribution<double> lc(-4.0, 4.0);
        std::uniform_real_distribution<double> ex(0.2, 2.5);
        for (int t = 0; t < 100; ++t) {
            PowerSumSpec s;
            const int I = 1 + rng() % 4;
            const int J = 1 + rng() % 2;
            for (int i = 0; i < I; ++i) {
                s.rising.push_back({std::exp(lc(rng)), ex(rng)});
            }
            for (int j = 0; j < J; ++j) {
                s.falling.push_back({std::exp(lc(rng)), ex(rng)});
            }
            s.z2 = std::exp(lc(rng) + 5);
            const auto o = powsum_optimize(s);
            double g = s.evaluate(s.z2);
            for (int i = 0; i <= 4000; ++i) {
                g = std::min(g, s.evaluate(s.z2 * std::exp(-60.0 * i / 4000)));
            }
            if (o.f_at_z_star > g * (1 + 1e-6) || g > (I * J + I + J) * o.bound) {
                return fmt::format("spec {}", t);
            }
        }
        return std::nullopt;
    });

    check("discrepancy formula equals brute force", [&]() -> Outcome {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int t = 0; t < 30; ++t) {
            std::vector<double> xs(1 + rng() % 60);
            for (auto& x : xs) {
                x = u(rng);
            }
            if (std::fabs(extreme_discrepancy(xs) - brute_discrepancy(xs)) > 1e-12) {
                return fmt::format("set {}", t);
            }
        }
        return std::nullopt;
    });

    check("ETK majorant dominates the discrepancy", [&]() -> Outcome {
        const WeylEngine eng(Polynomial::monomial(RealDesc::root(3, 2), 3), {.threads = threads});
        for (unsigned s : {6u, 8u}) {
            const auto rep = equidistribution_report(eng, DigitClassSpec::fixed_sum(16, s), 64);
            if (!rep.etk_holds()) {
                return fmt::format("s={} D={} etk={}", s, rep.discrepancy, rep.etk);
            }
        }
        return std::nullopt;
    });

    check("Vinogradov counts", [&]() -> Outcome {
        for (std::uint64_t N = 1; N <= 30; ++N) {
            if (vinogradov_count(3, 1, N, threads) != N || vinogradov_count(2, 2, N, threads) != 2 * N * N - N) {
                return fmt::format("N={}", N);
            }
        }
        return std::nullopt;
    });

    check("convergents certified", [&]() -> Outcome {
        for (const char* a : {"alg:-1,1,1:0:1", "alg:-1,2,1:0:1", "root:3:2"}) {
            const auto cf = continued_fraction_adaptive(RealDesc::parse(a), 40);
            for (const auto& c : cf.convergents) {
                if (!c.certified) {
                    return fmt::format("{} q={}", a, c.q.str());
                }
            }
        }
        return std::nullopt;
    });

    return out;
}

} // namespace digiweyl
