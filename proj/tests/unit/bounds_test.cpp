#include "digiweyl/bounds.hpp"
#include "digiweyl/diophantine.hpp"
#include "digiweyl/errors.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace digiweyl;

namespace {

// Grid minimum of F over log-spaced points in [z1, z2].
double grid_min(const PowerSumSpec& s, int points = 20000) {
    const double lo = std::log(s.z1 > 0 ? s.z1 : std::min(1e-30, s.z2));
    const double hi = std::log(s.z2);
    double best = s.evaluate(s.z2);
    for (int i = 0; i <= points; ++i) {
        best = std::min(best, s.evaluate(std::exp(lo + (hi - lo) * i / points)));
    }
    return best;
}

} // namespace

TEST(PowerSum, AmGmExamples) {
    PowerSumSpec s{{{1, 1}}, {{1, 1}}, 0.0, 10.0};
    auto o = powsum_optimize(s);
    EXPECT_NEAR(o.z_star, 1.0, 1e-8);
    EXPECT_NEAR(o.f_at_z_star, 2.0, 1e-12);
    EXPECT_NEAR(o.bound, 1.0 + 0.1, 1e-15);

    s.rising[0].coeff = 4;
    o = powsum_optimize(s);
    EXPECT_NEAR(o.z_star, 0.5, 1e-8);
    EXPECT_NEAR(o.f_at_z_star, 4.0, 1e-12);
    EXPECT_NEAR(o.bound, 2.0 + 0.1, 1e-15);
}

TEST(PowerSum, DeltaKappaWithinFactorEight) {
    const auto s = delta_kappa_spec(3, 20, std::exp2(10), 1);
    ASSERT_EQ(s.rising.size(), 4u);
    const auto o = powsum_optimize(s);
    EXPECT_LE(o.f_at_z_star, 8.0 * o.bound);
    EXPECT_NEAR(o.f_at_z_star, grid_min(s), 1e-6 * o.f_at_z_star);
}

TEST(PowerSum, RandomSpecsRespectGlobalConstant) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coef(-6.0, 6.0);
    std::uniform_real_distribution<double> expo(0.1, 3.0);
    for (int t = 0; t < 400; ++t) {
        PowerSumSpec s;
        const int I = 1 + rng() % 4;
        const int J = 1 + rng() % 2;
        for (int i = 0; i < I; ++i) {
            s.rising.push_back({std::exp(coef(rng)), expo(rng)});
        }
        for (int j = 0; j < J; ++j) {
            s.falling.push_back({std::exp(coef(rng)), expo(rng)});
        }
        s.z1 = rng() % 3 == 0 ? 0.0 : std::exp(coef(rng) - 3);
        s.z2 = s.z1 + std::exp(coef(rng) + 3);
        const auto o = powsum_optimize(s);
        const double g = grid_min(s);
        EXPECT_LE(o.f_at_z_star, g * (1 + 1e-6)) << t;
        EXPECT_LE(g, (I * J + I + J) * o.bound) << t;
        EXPECT_GE(o.z_star, s.z1);
        EXPECT_LE(o.z_star, s.z2);
    }
}

TEST(PowerSum, Errors) {
    EXPECT_THROW(powsum_optimize({{{1, 1}}, {{1, 1}}, 0.0, 0.0}), DomainError);
    EXPECT_THROW(powsum_optimize({{{-1, 1}}, {{1, 1}}, 0.0, 1.0}), DomainError);
    EXPECT_THROW(powsum_optimize({{{1, 1}}, {{1, 1}}, 2.0, 1.0}), DomainError);
}

TEST(DeltaLemma, TrivialAtSmallQ) {
    const auto r = delta_lemma(1, 1, 1000, 3, 1);
    EXPECT_TRUE(r.trivial_regime);
    EXPECT_GE(r.bound_a, 1000.0);
}

TEST(DeltaLemma, SubstitutionQEqualsN) {
    const double N = 1000;
    const auto r = delta_lemma(1, 1000, 1000, 3, 1);
    EXPECT_NEAR(r.delta, 2 / N + 2 / (N * N), 1e-18);
    EXPECT_NEAR(r.bound_a, N * std::pow(2 / N + 2 / (N * N), 1.0 / 6), 1e-9);
    EXPECT_FALSE(r.trivial_regime);
}

TEST(DeltaLemma, NeverExceedsSimplification) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100000; ++i) {
        const std::int64_t h = static_cast<std::int64_t>(1 + rng() % 100000) * (rng() % 2 ? 1 : -1);
        const std::uint64_t q = 1 + rng() % 1000000;
        const std::uint64_t N = 2 + rng() % 100000;
        const unsigned d = 3 + rng() % 6;
        const auto D = std::gcd(static_cast<std::uint64_t>(h < 0 ? -h : h), q);
        const auto r = delta_lemma(h, q, N, d, D);
        ASSERT_LE(r.delta, r.delta_simplified * (1 + 1e-12));
    }
}

TEST(DeltaLemma, WrongGcdIsInconsistent) {
    EXPECT_THROW(delta_lemma(6, 9, 100, 3, 1), ConsistencyError);
    EXPECT_THROW(delta_lemma(0, 9, 100, 3, 9), DomainError);
}

TEST(BoundRhs, CongAtQOneIsTrivial) {
    const auto e = bound_rhs(Formula::Cong, {.d = 3, .r = 20, .q = 1.0});
    EXPECT_TRUE(e.trivial_regime);
    EXPECT_GE(e.value, std::exp2(20));
}

TEST(BoundRhs, SparseSimpleClosedForm) {
    for (unsigned r : {10u, 24u, 40u}) {
        const unsigned s = r / 3;
        const auto e = bound_rhs(Formula::SparseSimple, {.d = 3, .r = r, .s = s});
        EXPECT_NEAR(e.value / (std::sqrt(to_double(binomial(r, s))) * std::exp2(5.0 * r / 12)), 1.0, 1e-13);
    }
}

TEST(BoundRhs, CongMatchesHandEvaluation) {
    // d = 3: eta1 = 1/5, theta = 1/6, zeta = 1/6, 1/3, 1/2, eta2 = 1/4.
    const double r = 20, q = 987;
    const double want = std::exp2(r) * std::sqrt(std::pow(q, -0.2) + std::exp2(-r / 6) + std::exp2(-r / 3) +
                                                 std::exp2(-r / 2) * std::pow(q, 0.25));
    const auto e = bound_rhs(Formula::Cong, {.d = 3, .r = 20, .q = q});
    EXPECT_NEAR(e.value / want, 1.0, 1e-12);
    for (auto f : {Formula::ThueMorse, Formula::RudinShapiro, Formula::DoubleTwist}) {
        EXPECT_EQ(bound_rhs(f, {.d = 3, .r = 20, .q = q}).value, e.value);
    }
}

TEST(BoundRhs, EpsilonAndConstantScale) {
    const auto base = bound_rhs(Formula::CongOpt, {.d = 4, .r = 30});
    const auto scaled = bound_rhs(Formula::CongOpt, {.d = 4, .r = 30, .eps = 0.1, .constant = 3.0});
    EXPECT_NEAR(scaled.value / base.value, 3.0 * std::exp2(3.0), 1e-12);
}

TEST(BoundRhs, UnimodalAlongConvergents) {
    const auto cf = continued_fraction_adaptive(RealDesc::root(3, 2), 60);
    std::vector<double> vals;
    for (const auto& c : cf.convergents) {
        vals.push_back(bound_rhs(Formula::Cong, {.d = 3, .r = 40, .q = to_double(c.q)}).value);
    }
    std::size_t i = 0;
    while (i + 1 < vals.size() && vals[i + 1] <= vals[i]) {
        ++i;
    }
    for (; i + 1 < vals.size(); ++i) {
        EXPECT_GE(vals[i + 1], vals[i]);
    }
}

TEST(BoundRhs, AllFormulasPositiveAndFinite) {
    for (auto f : all_formulas()) {
        for (unsigned d : {3u, 5u, 9u}) {
            BoundParams p{.d = d, .r = 24, .s = 10, .q = 1000.0};
            const auto e = bound_rhs(f, p);
            EXPECT_GT(e.value, 0.0) << formula_name(f);
            EXPECT_TRUE(std::isfinite(e.value)) << formula_name(f);
            EXPECT_EQ(parse_formula(formula_name(f)), f);
        }
    }
}

TEST(BoundRhs, MissingParameters) {
    EXPECT_THROW(bound_rhs(Formula::Cong, {.d = 3, .r = 20}), ParameterError);
    EXPECT_THROW(bound_rhs(Formula::Sparse, {.d = 3, .r = 20, .q = 5.0}), ParameterError);
    EXPECT_THROW(bound_rhs(Formula::CongOpt, {.d = 3}), ParameterError);
    EXPECT_THROW(bound_rhs(Formula::CongSimple, {.d = 3, .r = 20, .ell = 2}), ParameterError);
    EXPECT_THROW(bound_rhs(Formula::Cong, {.d = 2, .r = 20, .q = 5.0}), DomainError);
    EXPECT_THROW(parse_formula("eq2.2"), ParameterError);
}

TEST(EmpiricalRatio, Basics) {
    SumResult m;
    m.magnitude = 50;
    m.terms = 100;
    BoundEnvelope e;
    e.value = 50;
    const auto r = empirical_ratio(m, e);
    EXPECT_EQ(r.ratio, 1.0);
    EXPECT_EQ(r.trivial_ratio, 0.5);
    const double meas[] = {1, 4, 2};
    const double env[] = {2, 2, 4};
    EXPECT_EQ(fit_constant(meas, env), 2.0);
}
