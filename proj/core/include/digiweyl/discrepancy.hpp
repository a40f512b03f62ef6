#pragma once

#include "digiweyl/bounds.hpp"
#include "digiweyl/digits.hpp"
#include "digiweyl/weyl.hpp"

#include <optional>
#include <span>
#include <string>

namespace digiweyl {

// sup over subintervals I of [0,1) of |#{x in I}/N - |I||.
// DomainError for an empty set or a value outside [0, 1).
double extreme_discrepancy(std::span<const double> points);

// sup over [0, t).
double star_discrepancy(std::span<const double> points);

// c (1/L + (1/N) sum_{l=1..L} |S_l| / l) with L = sums.size().
double etk_majorant(std::span<const double> sums, std::uint64_t N, std::size_t L, double c = 3.0);

struct EquiOptions {
    double etk_constant = 3.0;
    double eps = 0.0;
    double constant = 1.0;
};

struct EquidistributionReport {
    std::uint64_t N = 0;
    unsigned L = 0;
    double discrepancy = 0.0;
    double star = 0.0;
    double etk = 0.0;
    // Discrepancy envelope for congruence classes and fixed digit sums;
    // none for the parity classes.
    std::optional<BoundEnvelope> envelope;
    // 2^(-min(nu1, nu2) r), for comparison only.
    double scale_reference = 0.0;
    double ratio_etk = 0.0;
    std::optional<double> ratio_envelope;

    bool etk_holds() const noexcept { return discrepancy <= etk; }
};

EquidistributionReport equidistribution_report(const WeylEngine& engine, const DigitClassSpec& spec, unsigned L,
                                               const EquiOptions& options = {});

} // namespace digiweyl
