#pragma once

#include "digiweyl/bignum.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace digiweyl {

// Every exponent family attached to a degree d >= 3, as exact rationals.
struct ExponentProfile {
    unsigned d = 3;

    // Bounds for sums with a Dirichlet pair (a, q).
    Rational eta1, eta2, theta, zeta1, zeta2, zeta3;
    // xi = min(zeta1, zeta2)
    Rational xi;
    // Discrepancy over digit-sum congruence classes.
    Rational nu1, nu2;
    // Log-loss variant, valid for a wider range of q.
    Rational eta1_t, eta2_t, theta_t, zeta1_t, zeta2_t, zeta3_t;
    // Discrepancy over fixed digit sums: C(r,s)^-beta_j 2^(gamma_j r).
    std::array<Rational, 3> beta, gamma;
    // Exponents fed to the power-sum optimizer.
    Rational kappa, lambda;

    // Exponents of ell and 2^r in the q that balances the bracket.
    Rational q_ell_exponent() const { return eta1 / (eta1 + eta2); }
    Rational q_r_exponent() const { return zeta3 / (eta1 + eta2); }
};

struct ExponentCheck {
    std::string name;
    unsigned d = 0;
    bool ok = true;
};

// Evaluates every inequality and identity the profile must satisfy.
std::vector<ExponentCheck> check_profile(const ExponentProfile& p);

// Builds the profile and verifies it; DomainError for d < 3.
ExponentProfile profile(unsigned d);

// H(g) in bits; DomainError outside the open interval (0, 1).
double binary_entropy(double gamma);

// The rho in (0, 1/2) with H(rho) = 1 - xi(d).
double rho_threshold(unsigned d);

struct InequalityReport {
    unsigned d_min = 3;
    unsigned d_max = 3;
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::optional<ExponentCheck> first_violation;
    // Relations that cannot be tested because a symbol is never defined.
    std::vector<std::string> unverifiable;

    bool ok() const noexcept { return violations == 0; }
};

InequalityReport inequality_suite(unsigned d_min, unsigned d_max);

} // namespace digiweyl
