#include "digiweyl/polynomial.hpp"

#include "digiweyl/errors.hpp"

#include <fmt/format.h>

namespace digiweyl {

Polynomial::Polynomial(std::vector<RealDesc> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw DomainError("polynomial needs degree >= 1");
    }
    if (coeffs_.back().is_zero()) {
        throw DomainError("leading coefficient must be nonzero");
    }
}

Polynomial Polynomial::monomial(RealDesc alpha, unsigned degree) {
    if (degree == 0) {
        throw DomainError("polynomial needs degree >= 1");
    }
    std::vector<RealDesc> coeffs(degree, RealDesc::rational(0));
    coeffs.back() = std::move(alpha);
    return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::parse(std::string_view list) {
    std::vector<RealDesc> coeffs;
    std::size_t start = 0;
    while (start <= list.size()) {
        auto pos = list.find(';', start);
        auto item = list.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        coeffs.push_back(RealDesc::parse(item));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::negated() const {
    std::vector<RealDesc> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(c.negated());
    }
    return Polynomial(std::move(out));
}

bool Polynomial::has_integer_coefficients() const {
    for (const auto& c : coeffs_) {
        if (!c.is_rational() || boost::multiprecision::denominator(c.value()) != 1) {
            return false;
        }
    }
    return true;
}

std::string Polynomial::str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) {
            out += ';';
        }
        out += coeffs_[i].str();
    }
    return out;
}

} // namespace digiweyl
