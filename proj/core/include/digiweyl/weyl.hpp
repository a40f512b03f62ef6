#pragma once

#include "digiweyl/digits.hpp"
#include "digiweyl/fixed.hpp"
#include "digiweyl/polynomial.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace digiweyl {

struct EngineOptions {
    Precision precision = Precision::B128;
    // 0 selects the hardware concurrency.
    unsigned threads = 0;
    // Index ranges are cut into this many blocks; results depend on the
    // block count but never on the thread count.
    unsigned partitions = 64;
    // Largest r (or log2 of a term count) a sum may stream over.
    unsigned max_bits = 34;
};

struct SumMeta {
    unsigned precision_bits = 128;
    unsigned partitions = 0;
    double elapsed_ms = 0.0;
};

struct SumResult {
    double re = 0.0;
    double im = 0.0;
    std::uint64_t terms = 0;
    double magnitude = 0.0;
    SumMeta meta;

    std::complex<double> value() const { return {re, im}; }
};

// Exact Weyl sums e(ell f(n)) over the quantized coefficients of f.
//
// Consecutive index ranges (full range, congruence and parity classes,
// twists) stream through difference tables; fixed-popcount classes are
// split by rank and evaluated per member by Horner. The classical sum runs
// over n = 1..N, every restricted sum over members of [0, 2^r).
class WeylEngine {
public:
    explicit WeylEngine(Polynomial f, EngineOptions options = {});
    ~WeylEngine();
    WeylEngine(WeylEngine&&) noexcept;
    WeylEngine& operator=(WeylEngine&&) noexcept;

    const Polynomial& polynomial() const noexcept { return poly_; }
    const EngineOptions& options() const noexcept { return options_; }

    // T_f(h, N); negative h conjugates.
    SumResult classical_sum(std::int64_t h, std::uint64_t N) const;
    SumResult full_range_sum(std::uint64_t ell, unsigned r) const;
    // U_f(r, ell, k, m)
    SumResult sum_congruence(std::uint64_t ell, unsigned r, unsigned k, unsigned m) const;
    // S_f(r, ell, s)
    SumResult sum_fixed_digit(std::uint64_t ell, unsigned r, unsigned s) const;
    SumResult sum_thue_morse(std::uint64_t ell, unsigned r) const;
    SumResult sum_rudin_shapiro(std::uint64_t ell, unsigned r) const;
    // W_f: weights t_n t_{n+1}
    SumResult sum_double_twist(std::uint64_t ell, unsigned r) const;
    // R_f over {chi11(n) == k mod 2}
    SumResult sum_chi11_class(std::uint64_t ell, unsigned r, unsigned k) const;
    // V_f over {sigma(n) + sigma(n+1) even}
    SumResult sum_sigma_pair(std::uint64_t ell, unsigned r) const;
    SumResult sum_over_class(std::uint64_t ell, const DigitClassSpec& spec) const;

    // Sums over the class for every multiplier ell = 1..L, sharing one pass
    // of phase evaluation.
    std::vector<SumResult> sum_multiples(const DigitClassSpec& spec, unsigned L) const;

    // {f~(n)} for every member, as doubles from the top 53 bits, in
    // increasing order of n.
    std::vector<double> member_phases(const DigitClassSpec& spec) const;

private:
    struct Impl;
    Polynomial poly_;
    EngineOptions options_;
    std::unique_ptr<Impl> impl_;
};

} // namespace digiweyl
