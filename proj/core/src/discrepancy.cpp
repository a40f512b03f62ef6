#include "digiweyl/discrepancy.hpp"

#include "digiweyl/errors.hpp"
#include "digiweyl/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <vector>

namespace digiweyl {

namespace {

std::vector<double> sorted_points(std::span<const double> points) {
    if (points.empty()) {
        throw DomainError("discrepancy of an empty point set");
    }
    std::vector<double> xs(points.begin(), points.end());
    for (double x : xs) {
        if (!(x >= 0.0 && x < 1.0)) {
            throw DomainError(fmt::format("point {} lies outside [0, 1)", x));
        }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

} // namespace

double extreme_discrepancy(std::span<const double> points) {
    const auto xs = sorted_points(points);
    // Scaled by N so that exactly representable equispaced points give 1/N
    // with no rounding.
    const double n = static_cast<double>(xs.size());
    double up = -n;
    double down = -n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double nx = n * xs[i];
        const double rank = static_cast<double>(i + 1);
        up = std::max(up, rank - nx);
        down = std::max(down, nx - rank);
    }
    return (1.0 + up + down) / n;
}

double star_discrepancy(std::span<const double> points) {
    const auto xs = sorted_points(points);
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        d = std::max({d, static_cast<double>(i + 1) / n - xs[i], xs[i] - static_cast<double>(i) / n});
    }
    return d;
}

double etk_majorant(std::span<const double> sums, std::uint64_t N, std::size_t L, double c) {
    if (L == 0 || sums.size() != L) {
        throw ParameterError(fmt::format("ETK majorant needs {} sums, got {}", L, sums.size()));
    }
    if (N == 0) {
        throw DomainError("ETK majorant needs N >= 1");
    }
    double acc = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
        acc += sums[l] / static_cast<double>(l + 1);
    }
    return c * (1.0 / static_cast<double>(L) + acc / static_cast<double>(N));
}

EquidistributionReport equidistribution_report(const WeylEngine& engine, const DigitClassSpec& spec, unsigned L,
                                               const EquiOptions& options) {
    if (L == 0) {
        throw DomainError("equidistribution report needs L >= 1");
    }
    EquidistributionReport rep;
    rep.L = L;
    const auto phases = engine.member_phases(spec);
    rep.N = phases.size();
    rep.discrepancy = extreme_discrepancy(phases);
    rep.star = star_discrepancy(phases);

    const auto sums = engine.sum_multiples(spec, L);
    std::vector<double> mags;
    mags.reserve(sums.size());
    for (const auto& s : sums) {
        mags.push_back(s.magnitude);
    }
    rep.etk = etk_majorant(mags, rep.N, L, options.etk_constant);
    rep.ratio_etk = rep.discrepancy / rep.etk;

    const unsigned d = engine.polynomial().degree();
    if (d >= 3) {
        const ExponentProfile ex = profile(d);
        rep.scale_reference = std::exp2(-to_double(std::min(ex.nu1, ex.nu2)) * spec.r);
        BoundParams p;
        p.d = d;
        p.r = spec.r;
        p.eps = options.eps;
        p.constant = options.constant;
        std::optional<Formula> f;
        if (spec.kind == DigitClass::Full || spec.kind == DigitClass::CongruenceSum) {
            f = Formula::CongDisc;
        } else if (spec.kind == DigitClass::FixedSum) {
            f = Formula::SparseDisc;
            p.s = spec.s;
        }
        if (f) {
            rep.envelope = bound_rhs(*f, p);
            rep.ratio_envelope = rep.discrepancy / rep.envelope->value;
        }
    }
    return rep;
}

} // namespace digiweyl
