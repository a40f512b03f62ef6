#include "digiweyl/exponents.hpp"

#include "digiweyl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace digiweyl {

namespace {

Rational frac(long long num, long long den) {
    return Rational(BigInt(num), BigInt(den));
}

ExponentProfile build(unsigned d_) {
    const long long d = d_;
    ExponentProfile p;
    p.d = d_;
    p.eta1 = frac(1, d * d - 2 * d + 2);
    p.eta2 = frac(1, (d - 1) * (d - 1));
    p.theta = frac(1, d * (d - 1));
    p.zeta1 = frac(d - 2, d * (d - 1));
    p.zeta2 = frac(1, d * d - 3 * d + 3);
    p.zeta3 = frac(1, d - 1);
    p.xi = std::min(p.zeta1, p.zeta2);
    p.nu1 = frac(d - 2, 2 * d * d - 2 * d + 1);
    p.nu2 = frac(1, 2 * d * d - 6 * d + 6);
    p.eta1_t = frac(1, d * d - 2 * d + 4);
    p.eta2_t = frac(1, d * d - 2 * d + 3);
    p.theta_t = frac(1, d * d - d + 2);
    p.zeta1_t = frac(d - 2, d * d - d + 2);
    p.zeta2_t = frac(1, d * d - 3 * d + 5);
    p.zeta3_t = frac(d - 1, d * d - 2 * d + 3);
    p.beta = {frac(2 * d * d - 4 * d + 3, 4 * d * d - 8 * d + 7), frac(d * (d - 1), 2 * d * d - 2 * d + 1), frac(1, 2)};
    p.gamma = {frac(2 * d * d - 5 * d + 4, 4 * d * d - 8 * d + 7), frac(d * d - 2 * d + 2, 2 * d * d - 2 * d + 1),
               frac((d - 1) * (d - 2), 2 * (d * d - 3 * d + 3))};
    p.kappa = frac(1, (d - 1) * (d - 2));
    p.lambda = frac(1, d * d - 3 * d + 4);
    return p;
}

} // namespace

std::vector<ExponentCheck> check_profile(const ExponentProfile& p) {
    std::vector<ExponentCheck> out;
    const unsigned d = p.d;
    auto add = [&](std::string name, bool ok) { out.push_back({std::move(name), d, ok}); };

    const Rational one = 1;
    const std::vector<const Rational*> all = {&p.eta1,   &p.eta2,    &p.theta,   &p.zeta1,  &p.zeta2,   &p.zeta3,
                                              &p.xi,     &p.nu1,     &p.nu2,     &p.eta1_t, &p.eta2_t,  &p.theta_t,
                                              &p.zeta1_t, &p.zeta2_t, &p.zeta3_t, &p.beta[0], &p.beta[1], &p.beta[2],
                                              &p.gamma[0], &p.gamma[1], &p.gamma[2], &p.kappa, &p.lambda};
    add("range (0,1]", std::all_of(all.begin(), all.end(), [&](const Rational* v) { return *v > 0 && *v <= one; }));

    if (d == 3) {
        add("zeta1 < zeta2", p.zeta1 < p.zeta2);
        add("tilde zeta1 < tilde zeta2", p.zeta1_t < p.zeta2_t);
        add("nu1 < nu2", p.nu1 < p.nu2);
    } else {
        add("zeta1 > zeta2", p.zeta1 > p.zeta2);
        add("tilde zeta1 > tilde zeta2", p.zeta1_t > p.zeta2_t);
        add("nu1 > nu2", p.nu1 > p.nu2);
    }
    for (int j = 0; j < 3; ++j) {
        add(fmt::format("beta{0} > gamma{0}", j + 1), p.beta[j] > p.gamma[j]);
    }
    add("eta1 zeta3 / (eta1 + eta2) > xi", p.eta1 * p.zeta3 / (p.eta1 + p.eta2) > p.xi);

    Rational worst = p.gamma[0] / p.beta[0];
    for (int j = 1; j < 3; ++j) {
        worst = std::max(worst, Rational(p.gamma[j] / p.beta[j]));
    }
    add("max gamma_j / beta_j == 1 - xi", worst == one - p.xi);

    // The closed forms are what the power-sum optimizer produces from kappa
    // (and lambda for the log-loss variant).
    auto optimizer_matches = [&](const Rational& x, const Rational& e1, const Rational& th, const Rational& z1,
                                 const Rational& z2, const Rational& z3, const Rational& e2) {
        const Rational dd = d;
        return e1 == x / (dd * x + 1) && th == x / (2 * (dd - 1) * x + 1) && z1 == (dd - 2) * x / (2 * (dd - 1) * x + 1) &&
               z2 == x / (x + 1) && z3 == (dd - 1) * x / ((dd - 1) * x + 1) && e2 == x / ((dd - 1) * x + 1);
    };
    add("optimizer exponents from kappa",
        optimizer_matches(p.kappa, p.eta1, p.theta, p.zeta1, p.zeta2, p.zeta3, p.eta2));
    add("optimizer exponents from lambda",
        optimizer_matches(p.lambda, p.eta1_t, p.theta_t, p.zeta1_t, p.zeta2_t, p.zeta3_t, p.eta2_t));
    return out;
}

ExponentProfile profile(unsigned d) {
    if (d < 3) {
        throw DomainError(fmt::format("exponent profile needs d >= 3, got {}", d));
    }
    ExponentProfile p = build(d);
    for (const auto& c : check_profile(p)) {
        if (!c.ok) {
            throw ConsistencyError(fmt::format("exponent check '{}' fails at d={}", c.name, d));
        }
    }
    return p;
}

double binary_entropy(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw DomainError(fmt::format("binary entropy needs 0 < gamma < 1, got {}", gamma));
    }
    return (-gamma * std::log(gamma) - (1.0 - gamma) * std::log1p(-gamma)) / std::log(2.0);
}

double rho_threshold(unsigned d) {
    const double target = 1.0 - to_double(profile(d).xi);
    // H is increasing on (0, 1/2).
    double lo = 0.0;
    double hi = 0.5;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

InequalityReport inequality_suite(unsigned d_min, unsigned d_max) {
    if (d_min < 3 || d_min > d_max) {
        throw DomainError(fmt::format("inequality suite needs 3 <= d_min <= d_max, got [{}, {}]", d_min, d_max));
    }
    InequalityReport rep;
    rep.d_min = d_min;
    rep.d_max = d_max;
    for (unsigned d = d_min; d <= d_max; ++d) {
        for (auto& c : check_profile(build(d))) {
            ++rep.checks;
            if (!c.ok) {
                ++rep.violations;
                if (!rep.first_violation) {
                    rep.first_violation = c;
                }
            }
        }
    }
    rep.unverifiable.push_back("nu1 = gamma2 - delta2 and nu2 = gamma3 - delta3: delta_j is never defined");
    return rep;
}

} // namespace digiweyl
