// Acceptance suite: one PASS/FAIL line per criterion, with wall time
// against the allowed budget. Exit status is nonzero if any line fails.

#include "digiweyl/cli.hpp"
#include "digiweyl/diophantine.hpp"
#include "digiweyl/discrepancy.hpp"
#include "digiweyl/exponents.hpp"
#include "digiweyl/mvt.hpp"
#include "digiweyl/weyl.hpp"

#include "oracles.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

using namespace digiweyl;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

Verdict fail(std::string why) { return {false, std::move(why)}; }

struct Captured {
    int code = 0;
    std::string out;
    std::string err;
};

Captured run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, sep);) {
        parts.push_back(p);
    }
    return parts;
}

Polynomial random_poly(std::mt19937_64& rng, unsigned d) {
    std::vector<RealDesc> cs;
    for (unsigned i = 0; i < d; ++i) {
        if (rng() % 2) {
            cs.push_back(RealDesc::rational(Rational(BigInt(rng() % 20000) - 10000, BigInt(1 + rng() % 9973))));
        } else {
            cs.push_back(RealDesc::root(2 + rng() % 4, Rational(BigInt(2 + rng() % 500), BigInt(1 + rng() % 13))));
        }
    }
    if (cs.back().is_zero()) {
        cs.back() = RealDesc::root(3, 2);
    }
    return Polynomial(cs);
}

Verdict table1() {
    const double paper[] = {0.264414, 0.281247, 0.338192, 0.372247, 0.394662, 0.410466, 0.422184, 0.431208};
    const auto res = run_cli({"table1"});
    if (res.code != 0) {
        return fail("table1 exited " + std::to_string(res.code));
    }
    auto lines = split(res.out, '\n');
    if (lines.size() != 9) {
        return fail(fmt::format("expected 8 rows, got {}", lines.size() - 1));
    }
    std::vector<std::string> bad;
    for (unsigned i = 0; i < 8; ++i) {
        const auto cols = split(lines[i + 1], ',');
        const double got = std::stod(cols.at(3));
        if (std::fabs(got - paper[i]) > 5e-7) {
            bad.push_back(fmt::format("d={}: {} vs {}", i + 3, cols[3], paper[i]));
        }
    }
    if (!bad.empty()) {
        return fail(fmt::format("{} of 8 rows off: {}", bad.size(), fmt::join(bad, "; ")));
    }
    return {};
}

Verdict exponent_suite() {
    const auto rep = inequality_suite(3, 1000);
    if (!rep.ok()) {
        return fail(fmt::format("'{}' violated at d={}", rep.first_violation->name, rep.first_violation->d));
    }
    return {true, fmt::format("{} checks", rep.checks)};
}

Verdict brute_sums() {
    std::mt19937_64 rng(31337);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const unsigned d = 3 + rng() % 3;
        const unsigned r = 6 + rng() % 9;
        const std::uint64_t ell = 1 + rng() % 8;
        const auto f = random_poly(rng, d);
        const WeylEngine eng(f, {.threads = 2, .partitions = 1 + static_cast<unsigned>(rng() % 64)});
        const oracle::NaivePhase ph(f);
        std::vector<std::complex<double>> e(std::size_t{1} << r);
        for (std::uint64_t n = 0; n < e.size(); ++n) {
            e[n] = oracle::unit(ph(ell, n));
        }
        auto naive = [&](const std::function<int(std::uint64_t)>& w) {
            std::complex<long double> acc = 0;
            for (std::uint64_t n = 0; n < e.size(); ++n) {
                const int k = w(n);
                acc += std::complex<long double>(k * e[n].real(), k * e[n].imag());
            }
            return std::complex<double>(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
        };
        const unsigned m = 2 + rng() % 4;
        const unsigned k = rng() % m;
        const unsigned s = rng() % (r + 1);
        const unsigned parity = rng() % 2;
        const std::pair<SumResult, std::complex<double>> pairs[] = {
            {eng.sum_congruence(ell, r, k, m), naive([&](auto n) { return int(digit_sum(n) % m == k); })},
            {eng.sum_fixed_digit(ell, r, s), naive([&](auto n) { return int(digit_sum(n) == s); })},
            {eng.sum_thue_morse(ell, r), naive([](auto n) { return thue_morse(n); })},
            {eng.sum_rudin_shapiro(ell, r), naive([](auto n) { return rudin_shapiro(n); })},
            {eng.sum_double_twist(ell, r), naive([](auto n) { return thue_morse(n) * thue_morse(n + 1); })},
            {eng.sum_chi11_class(ell, r, parity), naive([&](auto n) { return int(chi11(n) % 2 == parity); })},
            {eng.sum_sigma_pair(ell, r), naive([](auto n) { return int((digit_sum(n) + digit_sum(n + 1)) % 2 == 0); })},
        };
        for (const auto& [got, want] : pairs) {
            const double err = std::max(std::fabs(got.re - want.real()), std::fabs(got.im - want.imag()));
            worst = std::max(worst, err);
            if (err > 1e-9) {
                return fail(fmt::format("config {} ({}, r={}, ell={}): error {:.3g}", t, f.str(), r, ell, err));
            }
        }
    }
    return {true, fmt::format("max error {:.2g}", worst)};
}

Verdict partitions() {
    const WeylEngine eng(Polynomial::parse("root:2:3;rat:1/7;root:3:2"), {});
    double worst = 0.0;
    for (unsigned r : {4u, 9u, 14u, 19u, 24u}) {
        const double tol = std::ldexp(1.0, static_cast<int>(r) - 40);
        const auto full = eng.full_range_sum(1, r).value();
        std::complex<double> su = 0, ss = 0;
        for (unsigned k = 0; k < 3; ++k) {
            su += eng.sum_congruence(1, r, k, 3).value();
        }
        for (unsigned s = 0; s <= r; ++s) {
            ss += eng.sum_fixed_digit(1, r, s).value();
        }
        const auto u0 = eng.sum_congruence(1, r, 0, 2).value();
        const auto u1 = eng.sum_congruence(1, r, 1, 2).value();
        const std::pair<const char*, double> res[] = {
            {"sum_k U", std::abs(su - full)},
            {"sum_s S", std::abs(ss - full)},
            {"TM", std::abs(eng.sum_thue_morse(1, r).value() - (u0 - u1))},
            {"RS", std::abs(eng.sum_rudin_shapiro(1, r).value() - (2.0 * eng.sum_chi11_class(1, r, 0).value() - full))},
            {"W", std::abs(eng.sum_double_twist(1, r).value() - (2.0 * eng.sum_sigma_pair(1, r).value() - full))},
        };
        for (const auto& [name, err] : res) {
            worst = std::max(worst, err / std::ldexp(1.0, static_cast<int>(r)));
            if (err > tol) {
                return fail(fmt::format("{} at r={}: residual {:.3g} > {:.3g}", name, r, err, tol));
            }
        }
    }
    return {true, fmt::format("max residual/2^r {:.2g}", worst)};
}

template <std::size_t W>
std::optional<std::string> stream_matches(const Polynomial& f, std::uint64_t ell, std::uint64_t n0) {
    const auto q = quantize<W>(f);
    DifferenceStream<W> st(q, ell, n0);
    for (int i = 0; i < 1'000'000; ++i, st.advance()) {
        if (st.value() != frac_eval(q, ell, st.index())) {
            return fmt::format("{} words, n={}", W, st.index());
        }
    }
    return std::nullopt;
}

Verdict difference_table() {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 20; ++t) {
        const unsigned d = 1 + t % 8;
        const auto f = random_poly(rng, d);
        const std::uint64_t ell = 1 + rng() % (1u << 20);
        const std::uint64_t n0 = rng() % (std::uint64_t{1} << 33);
        const auto bad = t % 2 ? stream_matches<4>(f, ell, n0) : stream_matches<2>(f, ell, n0);
        if (bad) {
            return fail(fmt::format("d={}: {}", d, *bad));
        }
    }
    return {true, "20 polynomials x 1e6 steps"};
}

Verdict discrepancy_exact() {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> xs(1 + rng() % 500);
        for (auto& x : xs) {
            x = u(rng);
        }
        // Some sets with ties, which the sorting formula must handle.
        if (t % 5 == 0) {
            for (auto& x : xs) {
                x = std::floor(x * 37) / 37;
            }
        }
        const double a = extreme_discrepancy(xs);
        const double b = oracle::brute_discrepancy(xs);
        if (std::fabs(a - b) > 1e-12) {
            return fail(fmt::format("set {} (N={}): {} vs {}", t, xs.size(), a, b));
        }
    }
    for (std::size_t N : {1u, 2u, 3u, 7u, 10u, 64u, 333u, 500u, 512u}) {
        std::vector<double> xs(N);
        for (std::size_t i = 0; i < N; ++i) {
            xs[i] = static_cast<double>(i) / static_cast<double>(N);
        }
        // i/N is exact in binary only for dyadic N; otherwise the stored
        // points are off by an ulp and so is their discrepancy.
        const double D = extreme_discrepancy(xs);
        const double want = 1.0 / static_cast<double>(N);
        const bool dyadic = (N & (N - 1)) == 0;
        if (dyadic ? D != want : std::fabs(D - want) > 1e-12) {
            return fail(fmt::format("equispaced N={}: {}", N, D));
        }
    }
    return {true, "200 random sets, 9 equispaced"};
}

double etk_of(const std::vector<double>& xs, std::size_t L) {
    std::vector<double> mags(L);
    for (std::size_t l = 1; l <= L; ++l) {
        std::complex<double> acc = 0;
        for (double x : xs) {
            acc += oracle::unit(std::fmod(static_cast<double>(l) * x, 1.0));
        }
        mags[l - 1] = std::abs(acc);
    }
    return etk_majorant(mags, xs.size(), L);
}

Verdict etk_sanity() {
    const std::size_t L = 64;
    double worst = 0.0;
    for (std::size_t N : {1u, 10u, 100u, 1000u}) {
        std::vector<double> xs(N);
        for (std::size_t i = 0; i < N; ++i) {
            xs[i] = static_cast<double>(i) / static_cast<double>(N);
        }
        const double D = extreme_discrepancy(xs);
        worst = std::max(worst, D / etk_of(xs, L));
        if (D > etk_of(xs, L)) {
            return fail(fmt::format("equispaced N={}", N));
        }
    }
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> xs(1 + rng() % 400);
        for (auto& x : xs) {
            x = u(rng);
        }
        const double D = extreme_discrepancy(xs);
        const double e = etk_of(xs, L);
        worst = std::max(worst, D / e);
        if (D > e) {
            return fail(fmt::format("random set {}: D={} etk={}", t, D, e));
        }
    }
    const WeylEngine eng(Polynomial::monomial(RealDesc::root(3, 2), 3), {});
    for (unsigned s : {8u, 10u}) {
        const auto rep = equidistribution_report(eng, DigitClassSpec::fixed_sum(20, s), L);
        worst = std::max(worst, rep.ratio_etk);
        if (!rep.etk_holds()) {
            return fail(fmt::format("FixedSum(20,{}): D={} etk={}", s, rep.discrepancy, rep.etk));
        }
    }
    return {true, fmt::format("max D/etk {:.3f}", worst)};
}

Verdict vinogradov() {
    for (unsigned d = 1; d <= 4; ++d) {
        for (std::uint64_t N = 1; N <= 100; ++N) {
            if (vinogradov_count(d, 1, N) != N) {
                return fail(fmt::format("J_{{{},1}}({}) = {}", d, N, vinogradov_count(d, 1, N).str()));
            }
        }
    }
    for (std::uint64_t N = 1; N <= 50; ++N) {
        if (vinogradov_count(2, 2, N) != 2 * N * N - N) {
            return fail(fmt::format("J_{{2,2}}({}) = {}", N, vinogradov_count(2, 2, N).str()));
        }
    }
    std::vector<std::uint64_t> Ns(24);
    std::iota(Ns.begin(), Ns.end(), 1);
    double worst = 0.0;
    for (unsigned s : {2u, 3u, 4u}) {
        const auto rep = mvt_scaling_report(2, s, Ns, 4.0);
        worst = std::max(worst, rep.max_ratio);
        if (!rep.bounded()) {
            return fail(fmt::format("s={}: max ratio {}", s, rep.max_ratio));
        }
    }
    return {true, fmt::format("max ratio {:.3f}", worst)};
}

bool is_fibonacci(const BigInt& q) {
    BigInt a = 1, b = 1;
    while (b < q) {
        b += a;
        a = b - a;
    }
    return b == q;
}

Verdict convergents() {
    const std::pair<const char*, const char*> numbers[] = {
        {"golden ratio", "alg:-1,-1,1:1:2"},
        {"sqrt2-1", "alg:-1,2,1:0:1"},
        {"2^(1/3)", "root:3:2"},
    };
    for (const auto& [name, desc] : numbers) {
        const auto cf = continued_fraction_adaptive(RealDesc::parse(desc), 40);
        if (cf.quotients.size() != 40) {
            return fail(fmt::format("{}: {} terms", name, cf.quotients.size()));
        }
        for (const auto& c : cf.convergents) {
            if (!c.certified) {
                return fail(fmt::format("{}: {}/{} not certified", name, c.a.str(), c.q.str()));
            }
            if (std::string_view(name) == "golden ratio" && !is_fibonacci(c.q)) {
                return fail(fmt::format("golden ratio denominator {} is not Fibonacci", c.q.str()));
            }
        }
    }
    return {true, "3 x 40 terms"};
}

std::optional<double> fitted_constant(const std::string& err) {
    const auto pos = err.find("fitted_constant=");
    if (pos == std::string::npos) {
        return std::nullopt;
    }
    return std::stod(err.substr(pos + 16));
}

Verdict desk_scale() {
    const WeylEngine eng(Polynomial::monomial(RealDesc::root(3, 2), 3), {});
    std::vector<double> u, s;
    for (unsigned r : {16u, 20u, 24u}) {
        u.push_back(eng.sum_congruence(1, r, 0, 2).magnitude / std::ldexp(1.0, static_cast<int>(r)));
        const auto spec = DigitClassSpec::fixed_sum(r, r * 45 / 100);
        s.push_back(eng.sum_over_class(1, spec).magnitude / to_double(cardinality(spec)));
    }
    std::vector<std::string> fits;
    for (const char* formula : {"cong", "sparse"}) {
        std::vector<std::string> args = {"verify-bounds", "--formula", formula, "--poly", "root:3:2",
                                         "--degree",      "3",         "--r-range", "16..24"};
        if (std::string_view(formula) == "sparse") {
            args.insert(args.end(), {"--s-frac", "0.45"});
        }
        const auto res = run_cli(args);
        const auto c = fitted_constant(res.err);
        if (res.code != 0 || split(res.out, '\n').size() != 10 || !c || !std::isfinite(*c) || *c <= 0) {
            return fail(fmt::format("verify-bounds {} exit {}: {}", formula, res.code, res.err));
        }
        fits.push_back(fmt::format("{}={:.4g}", formula, *c));
    }
    const auto summary = fmt::format("U/2^r [{:.4g}], S/C [{:.4g}], fitted {}", fmt::join(u, ", "),
                                     fmt::join(s, ", "), fmt::join(fits, " "));
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        if (u[i + 1] > 1.15 * u[i] || s[i + 1] > 1.15 * s[i]) {
            return fail("not non-increasing within 1.15 per step: " + summary);
        }
    }
    return {true, summary};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        Verdict (*run)();
    };
    const Criterion criteria[] = {
        {1, "table1 reproduction", 1.0, table1},
        {2, "exponent identity suite", 1.0, exponent_suite},
        {3, "brute-force sum equivalence", 30.0, brute_sums},
        {4, "partition identities", 120.0, partitions},
        {5, "difference-table exactness", 10.0, difference_table},
        {6, "discrepancy exactness", 30.0, discrepancy_exact},
        {7, "ETK sanity", 120.0, etk_sanity},
        {8, "Vinogradov oracle", 120.0, vinogradov},
        {9, "convergent certification", 1.0, convergents},
        {10, "desk-scale decay and fitted constants", 600.0, desk_scale},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = fail(fmt::format("exception: {}", e.what()));
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (v.ok && sec > c.budget) {
            v = fail(fmt::format("over budget; {}", v.detail));
        }
        failed += !v.ok;
        std::cout << fmt::format("{} [{:2}] {} ({:.3f}s / {:g}s): {}\n", v.ok ? "PASS" : "FAIL", c.id, c.name, sec,
                                 c.budget, v.detail.empty() ? "ok" : v.detail)
                  << std::flush;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", 10 - failed, 10);
    return failed == 0 ? 0 : 1;
}
