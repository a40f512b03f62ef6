#include "digiweyl/real.hpp"

#include "digiweyl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fmt/format.h>

namespace digiweyl {

namespace mp = boost::multiprecision;

namespace {

// Sign of poly(a/b) for b > 0, via b^n * poly(a/b) = sum c_i a^i b^(n-i).
int sign_at(const std::vector<BigInt>& poly, const Rational& x) {
    const BigInt a = mp::numerator(x);
    const BigInt b = mp::denominator(x);
    const std::size_t n = poly.size() - 1;
    // Horner in homogeneous form.
    BigInt acc = poly[n];
    BigInt bpow = 1;
    for (std::size_t i = n; i-- > 0;) {
        bpow *= b;
        acc = acc * a + poly[i] * bpow;
    }
    return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

BigInt integer_root(const BigInt& n, unsigned k) {
    if (n < 2 || k == 1) {
        return n;
    }
    const unsigned bits = static_cast<unsigned>(mp::msb(n)) / k + 2;
    BigInt lo = 0;
    BigInt hi = pow2(bits);
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) >> 1;
        if (mp::pow(mid, k) <= n) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

// cpp_int reads a leading 0 as an octal prefix.
BigInt from_digits(std::string_view digits) {
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) {
        return 0;
    }
    return BigInt(std::string(digits.substr(first)));
}

BigInt parse_integer(std::string_view s) {
    s = trim(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw DescriptionError(fmt::format("not an integer: '{}'", s));
    }
    BigInt v = from_digits(s);
    return neg ? BigInt(-v) : v;
}

Rational parse_decimal(std::string_view s) {
    s = trim(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view tail = s.substr(e + 1);
        if (!tail.empty() && tail.front() == '+') {
            tail.remove_prefix(1);
        }
        auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), exponent);
        if (ec != std::errc{} || ptr != tail.data() + tail.size()) {
            throw DescriptionError(fmt::format("bad decimal exponent in '{}'", s));
        }
        s = s.substr(0, e);
    }
    std::string digits;
    bool seen_point = false;
    bool any_digit = false;
    for (char c : s) {
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) {
                --exponent;
            }
        } else {
            throw DescriptionError(fmt::format("bad decimal literal '{}'", s));
        }
    }
    if (!any_digit) {
        throw DescriptionError(fmt::format("bad decimal literal '{}'", s));
    }
    BigInt mant = from_digits(digits);
    if (neg) {
        mant = -mant;
    }
    BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
    return exponent >= 0 ? Rational(mant * scale) : Rational(mant, scale);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

std::string poly_str(const std::vector<BigInt>& poly) {
    std::string out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += poly[i].str();
    }
    return out;
}

} // namespace

Rational parse_rational_literal(std::string_view text) {
    text = trim(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt p = parse_integer(text.substr(0, slash));
        BigInt q = parse_integer(text.substr(slash + 1));
        if (q == 0) {
            throw DescriptionError(fmt::format("zero denominator in '{}'", text));
        }
        return Rational(p, q);
    }
    return parse_decimal(text);
}

RealDesc RealDesc::rational(Rational v) {
    RealDesc d;
    d.kind_ = Kind::Rational;
    d.value_ = std::move(v);
    return d;
}

RealDesc RealDesc::algebraic(std::vector<BigInt> poly, Rational lo, Rational hi) {
    while (poly.size() > 1 && poly.back() == 0) {
        poly.pop_back();
    }
    if (poly.size() < 2) {
        throw DescriptionError("algebraic description needs a polynomial of degree >= 1");
    }
    if (!(lo < hi)) {
        throw DescriptionError("algebraic description needs lo < hi");
    }
    const int slo = sign_at(poly, lo);
    const int shi = sign_at(poly, hi);
    if (slo == 0) {
        return rational(lo);
    }
    if (shi == 0) {
        return rational(hi);
    }
    if (slo == shi) {
        throw DescriptionError(fmt::format("polynomial {} has no sign change on [{}, {}]", poly_str(poly), lo.str(), hi.str()));
    }
    RealDesc d;
    d.kind_ = Kind::Algebraic;
    d.poly_ = std::move(poly);
    d.lo_ = std::move(lo);
    d.hi_ = std::move(hi);
    return d;
}

RealDesc RealDesc::root(unsigned k, const Rational& radicand) {
    if (k == 0) {
        throw DescriptionError("root order must be >= 1");
    }
    if (radicand <= 0) {
        throw DescriptionError(fmt::format("root radicand must be positive, got {}", radicand.str()));
    }
    const BigInt p = mp::numerator(radicand);
    const BigInt q = mp::denominator(radicand);
    const BigInt rp = integer_root(p, k);
    const BigInt rq = integer_root(q, k);
    if (mp::pow(rp, k) == p && mp::pow(rq, k) == q) {
        return rational(Rational(rp, rq));
    }
    std::vector<BigInt> poly(k + 1, 0);
    poly[0] = -p;
    poly[k] = q;
    const Rational hi = (radicand > 1 ? radicand : Rational(1)) + 1;
    return algebraic(std::move(poly), Rational(0), hi);
}

RealDesc RealDesc::parse(std::string_view text) {
    text = trim(text);
    if (text.rfind("rat:", 0) == 0) {
        return rational(parse_rational_literal(text.substr(4)));
    }
    if (text.rfind("dec:", 0) == 0) {
        return rational(parse_decimal(text.substr(4)));
    }
    if (text.rfind("root:", 0) == 0) {
        auto parts = split(text.substr(5), ':');
        if (parts.size() != 2) {
            throw DescriptionError(fmt::format("expected root:k:p/q, got '{}'", text));
        }
        const BigInt k = parse_integer(parts[0]);
        if (k < 1 || k > 64) {
            throw DescriptionError(fmt::format("root order out of range in '{}'", text));
        }
        return root(k.convert_to<unsigned>(), parse_rational_literal(parts[1]));
    }
    if (text.rfind("alg:", 0) == 0) {
        auto parts = split(text.substr(4), ':');
        if (parts.size() != 3) {
            throw DescriptionError(fmt::format("expected alg:c0,..,cn:lo:hi, got '{}'", text));
        }
        std::vector<BigInt> poly;
        for (auto c : split(parts[0], ',')) {
            poly.push_back(parse_integer(c));
        }
        return algebraic(std::move(poly), parse_rational_literal(parts[1]), parse_rational_literal(parts[2]));
    }
    if (!text.empty() && (std::isdigit(static_cast<unsigned char>(text.front())) || text.front() == '-' ||
                          text.front() == '+' || text.front() == '.')) {
        return rational(parse_rational_literal(text));
    }
    throw DescriptionError(fmt::format("unrecognised real description '{}'", text));
}

RealDesc RealDesc::negated() const {
    if (is_rational()) {
        return rational(-value_);
    }
    std::vector<BigInt> poly = poly_;
    for (std::size_t i = 1; i < poly.size(); i += 2) {
        poly[i] = -poly[i];
    }
    return algebraic(std::move(poly), -hi_, -lo_);
}

RealDesc RealDesc::scaled(std::uint64_t k) const {
    if (k == 0) {
        throw DomainError("scale factor must be >= 1");
    }
    if (is_rational()) {
        return rational(value_ * k);
    }
    // k^n P(x / k) has the root k * alpha.
    std::vector<BigInt> poly = poly_;
    const std::size_t n = poly.size() - 1;
    BigInt kp = 1;
    for (std::size_t i = n + 1; i-- > 0;) {
        poly[i] *= kp;
        kp *= k;
    }
    return algebraic(std::move(poly), lo_ * k, hi_ * k);
}

double RealDesc::approx() const {
    if (is_rational()) {
        return to_double(value_);
    }
    return to_double(resolve(*this, 64).mid());
}

std::string RealDesc::str() const {
    if (is_rational()) {
        return "rat:" + value_.str();
    }
    return fmt::format("alg:{}:{}:{}", poly_str(poly_), lo_.str(), hi_.str());
}

RealInterval resolve(const RealDesc& alpha, unsigned bits) {
    if (alpha.is_rational()) {
        return {alpha.value(), alpha.value(), true};
    }
    const auto& poly = alpha.poly();
    Rational lo = alpha.bracket_lo();
    Rational hi = alpha.bracket_hi();
    const int slo = sign_at(poly, lo);
    const Rational target = Rational(1, pow2(bits));
    while (hi - lo > target) {
        Rational mid = (lo + hi) / 2;
        const int s = sign_at(poly, mid);
        if (s == 0) {
            return {mid, mid, true};
        }
        if (s == slo) {
            lo = std::move(mid);
        } else {
            hi = std::move(mid);
        }
    }
    return {lo, hi, false};
}

BigInt quantize_bits(const RealDesc& alpha, unsigned bits) {
    const BigInt modulus = pow2(bits);
    const Rational half(1, 2);
    auto round_scaled = [&](const Rational& x) { return floor_of(x * modulus + half); };

    BigInt m;
    if (alpha.is_rational()) {
        m = round_scaled(alpha.value());
    } else {
        bool decided = false;
        for (unsigned guard = 8; guard <= 4096 && !decided; guard *= 2) {
            const RealInterval iv = resolve(alpha, bits + guard);
            const BigInt mlo = round_scaled(iv.lo);
            const BigInt mhi = round_scaled(iv.hi);
            if (iv.exact || mlo == mhi) {
                m = mlo;
                decided = true;
            }
        }
        if (!decided) {
            throw DescriptionError(fmt::format("cannot certify rounding of {} to {} bits", alpha.str(), bits));
        }
    }
    m %= modulus;
    if (m < 0) {
        m += modulus;
    }
    return m;
}

} // namespace digiweyl

namespace digiweyl {

Precision precision_from_bits(unsigned bits) {
    switch (bits) {
    case 128:
        return Precision::B128;
    case 192:
        return Precision::B192;
    case 256:
        return Precision::B256;
    default:
        throw DomainError("precision must be 128, 192 or 256 bits, got " + std::to_string(bits));
    }
}

} // namespace digiweyl
