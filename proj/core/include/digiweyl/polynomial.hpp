#pragma once

#include "digiweyl/fixed.hpp"
#include "digiweyl/real.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace digiweyl {

// f(Z) = alpha_1 Z + ... + alpha_d Z^d with exact coefficients; no constant
// term and alpha_d != 0.
class Polynomial {
public:
    // coeffs[i] is alpha_{i+1}.
    explicit Polynomial(std::vector<RealDesc> coeffs);

    static Polynomial monomial(RealDesc alpha, unsigned degree);
    // "a1;a2;...;ad", each entry a RealDesc text form.
    static Polynomial parse(std::string_view list);

    unsigned degree() const noexcept { return static_cast<unsigned>(coeffs_.size()); }
    // 1-based: coeff(i) = alpha_i.
    const RealDesc& coeff(unsigned i) const { return coeffs_.at(i - 1); }
    const RealDesc& leading() const { return coeffs_.back(); }
    const std::vector<RealDesc>& coeffs() const noexcept { return coeffs_; }

    Polynomial negated() const;
    // True when every coefficient is an integer, so all phases vanish.
    bool has_integer_coefficients() const;

    std::string str() const;

private:
    std::vector<RealDesc> coeffs_;
};

// Coefficients rounded to multiples of 2^-B; quantized[i] images alpha_{i+1}.
template <std::size_t Words>
struct QuantizedPoly {
    std::vector<FracFixed<Words>> coeffs;

    unsigned degree() const noexcept { return static_cast<unsigned>(coeffs.size()); }

    QuantizedPoly negated() const {
        QuantizedPoly out = *this;
        for (auto& c : out.coeffs) {
            c = -c;
        }
        return out;
    }
};

template <std::size_t Words>
QuantizedPoly<Words> quantize(const Polynomial& f) {
    QuantizedPoly<Words> q;
    q.coeffs.reserve(f.degree());
    for (const auto& c : f.coeffs()) {
        q.coeffs.push_back(quantize<Words>(c));
    }
    return q;
}

// {ell * f~(n)} by Horner, wrapping mod 2^B; ell is folded into the
// quantized coefficients, so the result is exact for the quantized f~.
template <std::size_t Words>
FracFixed<Words> frac_eval(const QuantizedPoly<Words>& f, std::uint64_t ell, std::uint64_t n) noexcept {
    FracFixed<Words> acc{};
    for (std::size_t i = f.coeffs.size(); i-- > 0;) {
        acc *= n;
        acc += f.coeffs[i] * ell;
    }
    acc *= n;
    return acc;
}

// Streams {ell f~(n0)}, {ell f~(n0+1)}, ... from a d-th order forward
// difference table: d wrapping additions per step, bit-identical to
// frac_eval at every index.
template <std::size_t Words>
class DifferenceStream {
public:
    DifferenceStream(const QuantizedPoly<Words>& f, std::uint64_t ell, std::uint64_t n0)
        : table_(f.degree() + 1), index_(n0) {
        const std::size_t d = f.degree();
        for (std::size_t j = 0; j <= d; ++j) {
            table_[j] = frac_eval(f, ell, n0 + j);
        }
        for (std::size_t k = 1; k <= d; ++k) {
            for (std::size_t j = d; j >= k; --j) {
                table_[j] -= table_[j - 1];
            }
        }
    }

    const FracFixed<Words>& value() const noexcept { return table_[0]; }
    std::uint64_t index() const noexcept { return index_; }

    void advance() noexcept {
        const std::size_t d = table_.size() - 1;
        for (std::size_t k = 0; k < d; ++k) {
            table_[k] += table_[k + 1];
        }
        ++index_;
    }

private:
    std::vector<FracFixed<Words>> table_;
    std::uint64_t index_;
};

} // namespace digiweyl
