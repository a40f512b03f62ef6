#include "digiweyl/diophantine.hpp"

#include "digiweyl/errors.hpp"
#include "digiweyl/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace digiweyl {

namespace {

using boost::multiprecision::abs;

bool certify(const RealInterval& iv, const Convergent& c) {
    const Rational approx(c.a, c.q);
    const Rational limit = Rational(BigInt(1), c.q * c.q);
    const Rational e = std::max(abs(iv.lo - approx), abs(iv.hi - approx));
    return e < limit;
}

} // namespace

ContinuedFraction continued_fraction(const RealDesc& alpha, std::size_t count, unsigned bits) {
    if (count == 0) {
        throw DomainError("continued fraction needs at least one term");
    }
    const RealInterval iv = resolve(alpha, bits);
    ContinuedFraction cf;

    Rational lo = iv.lo;
    Rational hi = iv.hi;
    bool exact = iv.exact || lo == hi;
    for (std::size_t i = 0; i < count; ++i) {
        const BigInt a = floor_of(lo);
        if (floor_of(hi) != a) {
            throw PrecisionError(
                fmt::format("{} bits decide only {} partial quotients of {}", bits, cf.quotients.size(), alpha.str()));
        }
        cf.quotients.push_back(a);
        Rational flo = lo - a;
        Rational fhi = hi - a;
        if (exact) {
            if (flo == 0) {
                cf.terminated = true;
                break;
            }
            lo = hi = 1 / flo;
            continue;
        }
        if (flo == 0) {
            // alpha could equal the integer a or exceed it.
            throw PrecisionError(
                fmt::format("{} bits decide only {} partial quotients of {}", bits, cf.quotients.size(), alpha.str()));
        }
        lo = 1 / fhi;
        hi = 1 / flo;
    }

    const Rational mid = iv.mid();
    BigInt p2 = 0, q2 = 1, p1 = 1, q1 = 0;
    for (const auto& a : cf.quotients) {
        BigInt p = a * p1 + p2;
        BigInt q = a * q1 + q2;
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;
        Convergent c;
        c.a = p;
        c.q = q;
        c.err = std::fabs(to_double(mid - Rational(p, q)));
        c.certified = certify(iv, c);
        if (!cf.convergents.empty() && cf.convergents.back().q == q) {
            cf.convergents.back() = std::move(c);
        } else {
            cf.convergents.push_back(std::move(c));
        }
    }
    return cf;
}

ContinuedFraction continued_fraction_adaptive(const RealDesc& alpha, std::size_t count) {
    for (unsigned bits = 256;; bits *= 2) {
        try {
            return continued_fraction(alpha, count, bits);
        } catch (const PrecisionError&) {
            if (bits >= (1u << 16)) {
                throw;
            }
        }
    }
}

namespace {

// Convergents up to denominator 2^max_log2 (or the end of a finite expansion).
std::vector<Convergent> convergents_up_to(const RealDesc& alpha, double max_log2) {
    for (std::size_t count = 16;; count *= 2) {
        ContinuedFraction cf = continued_fraction_adaptive(alpha, count);
        if (cf.terminated || log2_of(cf.convergents.back().q) > max_log2 || count > (1u << 14)) {
            return cf.convergents;
        }
    }
}

} // namespace

Convergent choose_q(const RealDesc& alpha, unsigned r, std::uint64_t ell, unsigned d) {
    if (ell == 0) {
        throw DomainError("choose_q needs ell >= 1");
    }
    const ExponentProfile p = profile(d);
    const double target = to_double(p.q_ell_exponent()) * std::log2(static_cast<double>(ell)) +
                          to_double(p.q_r_exponent()) * static_cast<double>(r);
    const auto convs = convergents_up_to(alpha, target + static_cast<double>(r) + 1.0);

    const Convergent* best = nullptr;
    double best_dist = 0.0;
    for (const auto& c : convs) {
        const double dist = std::fabs(log2_of(c.q) - target);
        if (best == nullptr || dist < best_dist) {
            best = &c;
            best_dist = dist;
        }
    }
    if (best == nullptr || best_dist > static_cast<double>(r)) {
        throw RangeError(fmt::format("no convergent of {} within {} bits of the target 2^{:.3f}", alpha.str(), r, target));
    }
    return *best;
}

TypeProbe diophantine_type_probe(const RealDesc& alpha, double Q) {
    if (!(Q >= 4.0)) {
        throw DomainError("type probe needs Q >= 4");
    }
    const double log2Q = std::log2(Q);
    const auto convs = convergents_up_to(alpha, log2Q);
    const auto bits = static_cast<unsigned>(2.0 * log2Q + 128.0);
    const Rational mid = resolve(alpha, bits).mid();

    TypeProbe out;
    std::vector<std::pair<double, double>> tail;
    std::vector<std::pair<double, double>> all;
    for (const auto& c : convs) {
        const double lq = log2_of(c.q);
        if (lq > log2Q || c.q < 2) {
            continue;
        }
        const Rational dist = abs(mid * Rational(c.q) - Rational(c.a));
        if (alpha.is_rational() && dist == 0) {
            out.infinite = true;
            continue;
        }
        const double y = -std::log2(to_double(dist));
        all.emplace_back(lq, y);
        if (lq >= 0.5 * log2Q) {
            tail.emplace_back(lq, y);
        }
    }
    if (out.infinite) {
        out.estimate = std::numeric_limits<double>::infinity();
        out.samples = all.size();
        return out;
    }
    const auto& pts = tail.size() >= 2 ? tail : all;
    if (pts.size() < 2) {
        throw RangeError(fmt::format("too few convergents below Q = {} to estimate a type", Q));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    out.estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.samples = pts.size();
    return out;
}

} // namespace digiweyl
