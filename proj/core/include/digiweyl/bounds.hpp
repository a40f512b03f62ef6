#pragma once

#include "digiweyl/weyl.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace digiweyl {

// Right-hand sides of the Weyl sum and discrepancy bounds.
//   cong*    sums over digit-sum congruence classes
//   sparse*  sums over a fixed digit sum s
//   *-opt    q chosen optimally for a type-1 leading coefficient
//   *-simple the ell = 1 simplification through xi(d)
//   *-log    log-loss variant valid for smaller q
//   *-disc   discrepancy of the corresponding point set
//   tm, rs, dtwist  twisted sums, same shape as cong
enum class Formula {
    Cong,
    CongOpt,
    CongSimple,
    CongLog,
    CongDisc,
    Sparse,
    SparseOpt,
    SparseSimple,
    SparseLog,
    SparseDisc,
    ThueMorse,
    RudinShapiro,
    DoubleTwist,
};

std::string_view formula_name(Formula f);
// ParameterError for an unknown name.
Formula parse_formula(std::string_view name);
const std::vector<Formula>& all_formulas();

bool formula_needs_q(Formula f);
bool formula_is_sparse(Formula f);

struct BoundParams {
    unsigned d = 3;
    std::optional<unsigned> r;
    std::uint64_t ell = 1;
    std::optional<unsigned> s;
    unsigned k = 0;
    unsigned m = 2;
    std::optional<double> q;
    // Stands in for o(1) in 2^{o(r)}.
    double eps = 0.0;
    // Stands in for the implied constant.
    double constant = 1.0;
};

struct BoundEnvelope {
    double value = 0.0;
    double epsilon = 0.0;
    double constant = 1.0;
    Formula formula = Formula::Cong;
    // The envelope is at least the trivial bound (set size, or 1 for a
    // discrepancy).
    bool trivial_regime = false;
    double trivial_bound = 0.0;
};

BoundEnvelope bound_rhs(Formula f, const BoundParams& p);

struct RatioReport {
    double ratio = 0.0;
    double trivial_ratio = 0.0;
};

RatioReport empirical_ratio(const SumResult& measured, const BoundEnvelope& envelope);

// Smallest constant c with measured[i] <= c * envelope[i] for all i.
double fit_constant(std::span<const double> measured, std::span<const double> envelope);

// F(Z) = sum A_i Z^a_i + sum B_j Z^-b_j over [z1, z2].
struct PowerTerm {
    double coeff = 1.0;
    double exponent = 1.0;
};

struct PowerSumSpec {
    std::vector<PowerTerm> rising;
    std::vector<PowerTerm> falling;
    double z1 = 0.0;
    double z2 = 1.0;

    double evaluate(double z) const;
};

struct PowerSumOptimum {
    double z_star = 0.0;
    double f_at_z_star = 0.0;
    double bound = 0.0;
    // f_at_z_star / bound
    double ratio = 0.0;
};

PowerSumOptimum powsum_optimize(const PowerSumSpec& spec);

// The five-term Delta of the congruence-sum argument as a function of
// Z = U, with Z in [0, 2^r].
PowerSumSpec delta_kappa_spec(unsigned d, unsigned r, double q, std::uint64_t ell);

struct DeltaLemma {
    double delta = 0.0;
    // (|h| N / q + 1)(1/N + q / N^d), using D <= |h|
    double delta_simplified = 0.0;
    double bound_a = 0.0;
    double bound_b = 0.0;
    bool trivial_regime = false;
};

// ConsistencyError if D != gcd(|h|, q), or if Delta exceeds its
// simplification.
DeltaLemma delta_lemma(std::int64_t h, std::uint64_t q, std::uint64_t N, unsigned d, std::uint64_t D,
                       double eps = 0.0);

} // namespace digiweyl
