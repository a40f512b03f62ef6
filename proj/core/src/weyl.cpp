#include "digiweyl/weyl.hpp"

#include "digiweyl/errors.hpp"
#include "digiweyl/parallel.hpp"

#include <chrono>
#include <fmt/format.h>
#include <variant>

namespace digiweyl {

namespace {

struct BlockSum {
    ComplexSum sum;
    std::uint64_t terms = 0;
};

// [lo + b*len/P, lo + (b+1)*len/P)
std::pair<std::uint64_t, std::uint64_t> block_bounds(std::uint64_t lo, std::uint64_t len, std::size_t b, std::size_t P) {
    const auto start = static_cast<std::uint64_t>(static_cast<unsigned __int128>(len) * b / P);
    const auto stop = static_cast<std::uint64_t>(static_cast<unsigned __int128>(len) * (b + 1) / P);
    return {lo + start, lo + stop};
}

SumResult finish(const std::vector<BlockSum>& blocks, const EngineOptions& opt,
                 std::chrono::steady_clock::time_point t0, bool conjugate) {
    std::vector<ComplexSum> parts;
    parts.reserve(blocks.size());
    SumResult res;
    for (const auto& b : blocks) {
        parts.push_back(b.sum);
        res.terms += b.terms;
    }
    const ComplexSum total = combine_ordered(parts);
    res.re = total.re;
    res.im = conjugate ? -total.im : total.im;
    res.magnitude = std::hypot(res.re, res.im);
    res.meta.precision_bits = bits_of(opt.precision);
    res.meta.partitions = static_cast<unsigned>(blocks.size());
    res.meta.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

void check_ell(std::uint64_t ell) {
    if (ell == 0) {
        throw DomainError("multiplier ell must be >= 1");
    }
}

} // namespace

struct WeylEngine::Impl {
    std::variant<QuantizedPoly<2>, QuantizedPoly<3>, QuantizedPoly<4>> quantized;

    template <std::size_t W>
    const QuantizedPoly<W>& get() const {
        return std::get<QuantizedPoly<W>>(quantized);
    }

    // Sum of weight(n) e(ell f(n)) over the consecutive range [lo, lo + len);
    // weight returns -1, 0 or +1.
    template <std::size_t W, class Weight>
    std::vector<BlockSum> stream(const EngineOptions& opt, std::uint64_t ell, std::uint64_t lo, std::uint64_t len,
                                 Weight weight) const {
        const auto& f = get<W>();
        const std::size_t P = std::max(1U, opt.partitions);
        return run_blocks<BlockSum>(P, effective_threads(opt.threads), [&](std::size_t b) {
            auto [start, stop] = block_bounds(lo, len, b, P);
            BlockSum out;
            if (start == stop) {
                return out;
            }
            PairwiseAccumulator acc;
            DifferenceStream<W> ds(f, ell, start);
            for (std::uint64_t n = start;; ++n) {
                const int w = weight(n);
                if (w != 0) {
                    const UnitPoint p = unit_point(ds.value());
                    acc.add(w * p.re, w * p.im);
                    ++out.terms;
                }
                if (n + 1 == stop) {
                    break;
                }
                ds.advance();
            }
            out.sum = acc.total();
            return out;
        });
    }

    template <std::size_t W>
    std::vector<BlockSum> fixed_sum(const EngineOptions& opt, std::uint64_t ell, unsigned r, unsigned s) const {
        const auto& f = get<W>();
        const std::uint64_t total = small_binomial(r, s);
        const std::size_t P = std::max(1U, opt.partitions);
        return run_blocks<BlockSum>(P, effective_threads(opt.threads), [&](std::size_t b) {
            auto [start, stop] = block_bounds(0, total, b, P);
            BlockSum out;
            if (start == stop) {
                return out;
            }
            PairwiseAccumulator acc;
            std::uint64_t n = unrank_fixed_sum(r, s, start);
            for (std::uint64_t rank = start; rank < stop; ++rank) {
                const UnitPoint p = unit_point(frac_eval(f, ell, n));
                acc.add(p.re, p.im);
                if (n != 0) {
                    n = next_same_popcount(n);
                }
            }
            out.terms = stop - start;
            out.sum = acc.total();
            return out;
        });
    }
};

WeylEngine::WeylEngine(Polynomial f, EngineOptions options)
    : poly_(std::move(f)), options_(options), impl_(std::make_unique<Impl>()) {
    with_precision(options_.precision, [&](auto words) {
        constexpr std::size_t W = decltype(words)::value;
        impl_->quantized = quantize<W>(poly_);
    });
}

WeylEngine::~WeylEngine() = default;
WeylEngine::WeylEngine(WeylEngine&&) noexcept = default;
WeylEngine& WeylEngine::operator=(WeylEngine&&) noexcept = default;

namespace {

void check_bits(unsigned r, const EngineOptions& opt) {
    if (r > kMaxBits) {
        throw DomainError(fmt::format("r={} exceeds the 64-bit index cap {}", r, kMaxBits));
    }
    if (r > opt.max_bits) {
        throw ResourceError(fmt::format("r={} exceeds the configured cap of {} bits", r, opt.max_bits));
    }
}

} // namespace

SumResult WeylEngine::classical_sum(std::int64_t h, std::uint64_t N) const {
    if (h == 0) {
        throw DomainError("classical sum needs h != 0");
    }
    if (N == 0) {
        throw DomainError("classical sum needs N >= 1");
    }
    if (options_.max_bits < 64 && N > (std::uint64_t{1} << options_.max_bits)) {
        throw ResourceError(fmt::format("N={} exceeds the configured cap of 2^{}", N, options_.max_bits));
    }
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t ell = h < 0 ? static_cast<std::uint64_t>(-(h + 1)) + 1 : static_cast<std::uint64_t>(h);
    return with_precision(options_.precision, [&](auto words) {
        constexpr std::size_t W = decltype(words)::value;
        auto blocks = impl_->stream<W>(options_, ell, 1, N, [](std::uint64_t) { return 1; });
        return finish(blocks, options_, t0, h < 0);
    });
}

SumResult WeylEngine::full_range_sum(std::uint64_t ell, unsigned r) const {
    return sum_over_class(ell, DigitClassSpec::full(r));
}

SumResult WeylEngine::sum_congruence(std::uint64_t ell, unsigned r, unsigned k, unsigned m) const {
    return sum_over_class(ell, DigitClassSpec::congruence(r, k, m));
}

SumResult WeylEngine::sum_fixed_digit(std::uint64_t ell, unsigned r, unsigned s) const {
    return sum_over_class(ell, DigitClassSpec::fixed_sum(r, s));
}

SumResult WeylEngine::sum_chi11_class(std::uint64_t ell, unsigned r, unsigned k) const {
    return sum_over_class(ell, DigitClassSpec::chi11_parity(r, k));
}

SumResult WeylEngine::sum_sigma_pair(std::uint64_t ell, unsigned r) const {
    return sum_over_class(ell, DigitClassSpec::sigma_pair(r));
}

SumResult WeylEngine::sum_thue_morse(std::uint64_t ell, unsigned r) const {
    check_ell(ell);
    check_bits(r, options_);
    const auto t0 = std::chrono::steady_clock::now();
    return with_precision(options_.precision, [&](auto words) {
        constexpr std::size_t W = decltype(words)::value;
        auto blocks = impl_->stream<W>(options_, ell, 0, std::uint64_t{1} << r,
                                       [](std::uint64_t n) { return thue_morse(n); });
        return finish(blocks, options_, t0, false);
    });
}

SumResult WeylEngine::sum_rudin_shapiro(std::uint64_t ell, unsigned r) const {
    check_ell(ell);
    check_bits(r, options_);
    const auto t0 = std::chrono::steady_clock::now();
    return with_precision(options_.precision, [&](auto words) {
        constexpr std::size_t W = decltype(words)::value;
        auto blocks = impl_->stream<W>(options_, ell, 0, std::uint64_t{1} << r,
                                       [](std::uint64_t n) { return rudin_shapiro(n); });
        return finish(blocks, options_, t0, false);
    });
}

SumResult WeylEngine::sum_double_twist(std::uint64_t ell, unsigned r) const {
    check_ell(ell);
    check_bits(r, options_);
    const auto t0 = std::chrono::steady_clock::now();
    return with_precision(options_.precision, [&](auto words) {
        constexpr std::size_t W = decltype(words)::value;
        auto blocks = impl_->stream<W>(options_, ell, 0, std::uint64_t{1} << r,
                                       [](std::uint64_t n) { return thue_morse_pair(n); });
        return finish(blocks, options_, t0, false);
    });
}

SumResult WeylEngine::sum_over_class(std::uint64_t ell, const DigitClassSpec& spec) const {
    check_ell(ell);
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();
    if (spec.kind == DigitClass::FixedSum) {
        // Only the member count is bounded, not the bit length.
        const std::uint64_t count = small_binomial(spec.r, spec.s);
        if (options_.max_bits < 64 && count > (std::uint64_t{1} << options_.max_bits)) {
            throw ResourceError(fmt::format("C({},{}) terms exceed the configured cap of 2^{}", spec.r, spec.s,
                                            options_.max_bits));
        }
        return with_precision(options_.precision, [&](auto words) {
            constexpr std::size_t W = decltype(words)::value;
            return finish(impl_->fixed_sum<W>(options_, ell, spec.r, spec.s), options_, t0, false);
        });
    }
    check_bits(spec.r, options_);
    return with_precision(options_.precision, [&](auto words) {
        constexpr std::size_t W = decltype(words)::value;
        const std::uint64_t len = spec.limit();
        std::vector<BlockSum> blocks;
        switch (spec.kind) {
        case DigitClass::Full:
            blocks = impl_->stream<W>(options_, ell, 0, len, [](std::uint64_t) { return 1; });
            break;
        case DigitClass::CongruenceSum:
            blocks = impl_->stream<W>(options_, ell, 0, len, [k = spec.k, m = spec.m](std::uint64_t n) {
                return static_cast<int>(digit_sum(n) % m == k);
            });
            break;
        case DigitClass::Chi11Parity:
            blocks = impl_->stream<W>(options_, ell, 0, len, [k = spec.k](std::uint64_t n) {
                return static_cast<int>((chi11(n) & 1U) == k);
            });
            break;
        case DigitClass::SigmaPairParity:
            blocks = impl_->stream<W>(options_, ell, 0, len,
                                      [](std::uint64_t n) { return static_cast<int>(thue_morse_pair(n) == 1); });
            break;
        case DigitClass::FixedSum:
            break;
        }
        return finish(blocks, options_, t0, false);
    });
}

namespace {

template <std::size_t W>
std::vector<FracFixed<W>> collect_phases(const QuantizedPoly<W>& f, const DigitClassSpec& spec) {
    std::vector<FracFixed<W>> out;
    if (spec.kind == DigitClass::FixedSum) {
        out.reserve(small_binomial(spec.r, spec.s));
        for_each_member(spec, [&](std::uint64_t n) { out.push_back(frac_eval(f, 1, n)); });
        return out;
    }
    DifferenceStream<W> ds(f, 1, 0);
    const std::uint64_t len = spec.limit();
    for (std::uint64_t n = 0; n < len; ++n) {
        if (spec.contains(n)) {
            out.push_back(ds.value());
        }
        if (n + 1 < len) {
            ds.advance();
        }
    }
    return out;
}

void check_member_count(const DigitClassSpec& spec, const EngineOptions& opt) {
    spec.validate();
    const std::uint64_t count =
        spec.kind == DigitClass::FixedSum ? small_binomial(spec.r, spec.s) : spec.limit();
    if (opt.max_bits < 64 && count > (std::uint64_t{1} << opt.max_bits)) {
        throw ResourceError(fmt::format("{} has too many members for the cap of 2^{}", spec.describe(), opt.max_bits));
    }
}

} // namespace

std::vector<SumResult> WeylEngine::sum_multiples(const DigitClassSpec& spec, unsigned L) const {
    if (L == 0) {
        throw DomainError("need L >= 1");
    }
    check_member_count(spec, options_);
    return with_precision(options_.precision, [&](auto words) {
        constexpr std::size_t W = decltype(words)::value;
        const auto phases = collect_phases<W>(impl_->get<W>(), spec);
        std::vector<SumResult> results;
        results.reserve(L);
        const std::size_t P = std::max(1U, options_.partitions);
        for (unsigned ell = 1; ell <= L; ++ell) {
            const auto t0 = std::chrono::steady_clock::now();
            // ell * {f~(n)} mod 1 is bit-identical to Horner with ell folded in.
            auto blocks = run_blocks<BlockSum>(P, effective_threads(options_.threads), [&](std::size_t b) {
                auto [start, stop] = block_bounds(0, phases.size(), b, P);
                BlockSum out;
                PairwiseAccumulator acc;
                for (std::uint64_t i = start; i < stop; ++i) {
                    const UnitPoint p = unit_point(phases[i] * ell);
                    acc.add(p.re, p.im);
                }
                out.terms = stop - start;
                out.sum = acc.total();
                return out;
            });
            results.push_back(finish(blocks, options_, t0, false));
        }
        return results;
    });
}

std::vector<double> WeylEngine::member_phases(const DigitClassSpec& spec) const {
    check_member_count(spec, options_);
    return with_precision(options_.precision, [&](auto words) {
        constexpr std::size_t W = decltype(words)::value;
        const auto phases = collect_phases<W>(impl_->get<W>(), spec);
        std::vector<double> out;
        out.reserve(phases.size());
        for (const auto& p : phases) {
            out.push_back(p.to_unit());
        }
        return out;
    });
}

} // namespace digiweyl
