#include "digiweyl/bounds.hpp"

#include "digiweyl/errors.hpp"
#include "digiweyl/exponents.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace digiweyl {

namespace {

struct FormulaInfo {
    Formula id;
    std::string_view name;
};

constexpr std::array kFormulas = {
    FormulaInfo{Formula::Cong, "cong"},
    FormulaInfo{Formula::CongOpt, "cong-opt"},
    FormulaInfo{Formula::CongSimple, "cong-simple"},
    FormulaInfo{Formula::CongLog, "cong-log"},
    FormulaInfo{Formula::CongDisc, "cong-disc"},
    FormulaInfo{Formula::Sparse, "sparse"},
    FormulaInfo{Formula::SparseOpt, "sparse-opt"},
    FormulaInfo{Formula::SparseSimple, "sparse-simple"},
    FormulaInfo{Formula::SparseLog, "sparse-log"},
    FormulaInfo{Formula::SparseDisc, "sparse-disc"},
    FormulaInfo{Formula::ThueMorse, "tm"},
    FormulaInfo{Formula::RudinShapiro, "rs"},
    FormulaInfo{Formula::DoubleTwist, "dtwist"},
};

double dbl(const Rational& x) {
    return to_double(x);
}

void check_term(const PowerTerm& t) {
    if (!(t.coeff > 0.0 && std::isfinite(t.coeff) && t.exponent > 0.0 && std::isfinite(t.exponent))) {
        throw DomainError(fmt::format("power-sum term needs positive finite coefficient and exponent, got ({}, {})",
                                      t.coeff, t.exponent));
    }
}

} // namespace

std::string_view formula_name(Formula f) {
    for (const auto& info : kFormulas) {
        if (info.id == f) {
            return info.name;
        }
    }
    return "?";
}

Formula parse_formula(std::string_view name) {
    for (const auto& info : kFormulas) {
        if (info.name == name) {
            return info.id;
        }
    }
    throw ParameterError(fmt::format("unknown formula '{}'", name));
}

const std::vector<Formula>& all_formulas() {
    static const std::vector<Formula> out = [] {
        std::vector<Formula> v;
        for (const auto& info : kFormulas) {
            v.push_back(info.id);
        }
        return v;
    }();
    return out;
}

bool formula_needs_q(Formula f) {
    switch (f) {
    case Formula::Cong:
    case Formula::CongLog:
    case Formula::Sparse:
    case Formula::SparseLog:
    case Formula::ThueMorse:
    case Formula::RudinShapiro:
    case Formula::DoubleTwist:
        return true;
    default:
        return false;
    }
}

bool formula_is_sparse(Formula f) {
    switch (f) {
    case Formula::Sparse:
    case Formula::SparseOpt:
    case Formula::SparseSimple:
    case Formula::SparseLog:
    case Formula::SparseDisc:
        return true;
    default:
        return false;
    }
}

BoundEnvelope bound_rhs(Formula f, const BoundParams& p) {
    const ExponentProfile ex = profile(p.d);
    if (!p.r) {
        throw ParameterError(fmt::format("formula {} needs r", formula_name(f)));
    }
    const double r = *p.r;
    if (p.ell == 0) {
        throw DomainError("ell must be >= 1");
    }
    if (!(p.eps >= 0.0) || !(p.constant > 0.0) || !std::isfinite(p.constant)) {
        throw DomainError("eps must be >= 0 and the constant positive and finite");
    }
    if (p.m == 0 || p.k >= p.m) {
        throw DomainError(fmt::format("need 0 <= k < m, got k={} m={}", p.k, p.m));
    }
    const double ell = static_cast<double>(p.ell);
    double q = 0.0;
    if (formula_needs_q(f)) {
        if (!p.q) {
            throw ParameterError(fmt::format("formula {} needs q", formula_name(f)));
        }
        q = *p.q;
        if (!(q >= 1.0)) {
            throw DomainError("q must be >= 1");
        }
    }
    double binom = 0.0;
    if (formula_is_sparse(f)) {
        if (!p.s) {
            throw ParameterError(fmt::format("formula {} needs s", formula_name(f)));
        }
        if (*p.s > *p.r) {
            throw DomainError(fmt::format("s = {} exceeds r = {}", *p.s, *p.r));
        }
        binom = to_double(binomial(*p.r, *p.s));
    }
    if ((f == Formula::CongSimple || f == Formula::SparseSimple) && p.ell != 1) {
        throw ParameterError(fmt::format("formula {} is stated for ell = 1", formula_name(f)));
    }

    auto bracket = [&](double e1, double th, double z1, double z2, double z3, double e2) {
        return std::pow(ell / q, e1) + std::pow(ell, th) * std::exp2(-z1 * r) + std::exp2(-z2 * r) +
               std::exp2(-z3 * r) * std::pow(q, e2);
    };
    auto plain = [&] {
        return bracket(dbl(ex.eta1), dbl(ex.theta), dbl(ex.zeta1), dbl(ex.zeta2), dbl(ex.zeta3), dbl(ex.eta2));
    };
    auto tilde = [&] {
        return bracket(dbl(ex.eta1_t), dbl(ex.theta_t), dbl(ex.zeta1_t), dbl(ex.zeta2_t), dbl(ex.zeta3_t),
                       dbl(ex.eta2_t));
    };
    auto optimal = [&] {
        const double w = dbl(ex.eta1 / (ex.eta1 + ex.eta2));
        return std::pow(std::pow(ell, dbl(ex.eta2)) * std::exp2(-dbl(ex.zeta3) * r), w) +
               std::pow(ell, dbl(ex.theta)) * std::exp2(-dbl(ex.zeta1) * r) + std::exp2(-dbl(ex.zeta2) * r);
    };

    BoundEnvelope env;
    env.formula = f;
    env.constant = p.constant;
    env.epsilon = p.eps;
    const double grow = std::exp2(p.eps * r);
    const double xi = dbl(ex.xi);
    double v = 0.0;
    switch (f) {
    case Formula::Cong:
    case Formula::ThueMorse:
    case Formula::RudinShapiro:
    case Formula::DoubleTwist:
        v = std::exp2(r) * grow * std::sqrt(plain());
        break;
    case Formula::CongOpt:
        v = std::exp2(r) * grow * std::sqrt(optimal());
        break;
    case Formula::CongSimple:
        v = std::exp2((1.0 - xi / 2.0) * r) * grow;
        break;
    case Formula::CongLog:
        // No o(1) term here: the log factor is explicit.
        env.epsilon = 0.0;
        v = r * std::exp2(r) * std::sqrt(tilde());
        break;
    case Formula::CongDisc:
        v = std::exp2(-std::min(dbl(ex.nu1), dbl(ex.nu2)) * r) * grow;
        break;
    case Formula::Sparse:
        v = std::exp2(r / 2.0) * grow * std::sqrt(binom) * std::sqrt(plain());
        break;
    case Formula::SparseOpt:
        v = std::exp2(r / 2.0) * grow * std::sqrt(binom) * std::sqrt(optimal());
        break;
    case Formula::SparseSimple:
        v = std::sqrt(binom) * std::exp2((1.0 - xi) * r / 2.0) * grow;
        break;
    case Formula::SparseLog:
        env.epsilon = 0.0;
        v = r * std::exp2(r / 2.0) * std::sqrt(binom) * std::sqrt(tilde());
        break;
    case Formula::SparseDisc:
        for (int j = 0; j < 3; ++j) {
            v += std::pow(binom, -dbl(ex.beta[j])) * std::exp2(dbl(ex.gamma[j]) * r) * grow;
        }
        break;
    }
    env.value = p.constant * v;

    if (f == Formula::CongDisc || f == Formula::SparseDisc) {
        env.trivial_bound = 1.0;
    } else if (formula_is_sparse(f)) {
        env.trivial_bound = binom;
    } else {
        env.trivial_bound = std::exp2(r);
    }
    env.trivial_regime = env.value >= env.trivial_bound;
    if (!(env.value > 0.0) || !std::isfinite(env.value)) {
        throw RangeError(fmt::format("envelope {} is not a positive finite number", formula_name(f)));
    }
    return env;
}

RatioReport empirical_ratio(const SumResult& measured, const BoundEnvelope& envelope) {
    if (!(envelope.value > 0.0)) {
        throw DomainError("envelope value must be positive");
    }
    RatioReport out;
    out.ratio = measured.magnitude / envelope.value;
    out.trivial_ratio = measured.terms == 0 ? 0.0 : measured.magnitude / static_cast<double>(measured.terms);
    return out;
}

double fit_constant(std::span<const double> measured, std::span<const double> envelope) {
    if (measured.size() != envelope.size() || measured.empty()) {
        throw ParameterError("fit_constant needs equally sized, non-empty inputs");
    }
    double c = 0.0;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        if (!(envelope[i] > 0.0)) {
            throw DomainError("envelope values must be positive");
        }
        c = std::max(c, measured[i] / envelope[i]);
    }
    return c;
}

double PowerSumSpec::evaluate(double z) const {
    double v = 0.0;
    for (const auto& t : rising) {
        v += t.coeff * std::pow(z, t.exponent);
    }
    for (const auto& t : falling) {
        v += t.coeff * std::pow(z, -t.exponent);
    }
    return v;
}

PowerSumOptimum powsum_optimize(const PowerSumSpec& spec) {
    for (const auto& t : spec.rising) {
        check_term(t);
    }
    for (const auto& t : spec.falling) {
        check_term(t);
    }
    if (!(spec.z1 >= 0.0 && spec.z1 <= spec.z2 && std::isfinite(spec.z2))) {
        throw DomainError(fmt::format("power-sum range needs 0 <= z1 <= z2, got [{}, {}]", spec.z1, spec.z2));
    }
    if (spec.z2 == 0.0 && !spec.falling.empty()) {
        throw DomainError("power-sum range [0, 0] with falling terms");
    }

    PowerSumOptimum out;
    for (const auto& a : spec.rising) {
        for (const auto& b : spec.falling) {
            out.bound += std::pow(std::pow(a.coeff, b.exponent) * std::pow(b.coeff, a.exponent),
                                  1.0 / (a.exponent + b.exponent));
        }
        out.bound += a.coeff * std::pow(spec.z1, a.exponent);
    }
    for (const auto& b : spec.falling) {
        out.bound += b.coeff * std::pow(spec.z2, -b.exponent);
    }

    double z = 0.0;
    if (spec.falling.empty()) {
        z = spec.z1;
    } else if (spec.rising.empty() || spec.z1 == spec.z2) {
        z = spec.z2;
    } else {
        double lo_z = spec.z1;
        if (lo_z == 0.0) {
            // At the minimizer every falling term is at most F(z2).
            const double cap = spec.evaluate(spec.z2);
            for (const auto& b : spec.falling) {
                lo_z = std::max(lo_z, std::pow(b.coeff / cap, 1.0 / b.exponent));
            }
            lo_z = std::min(lo_z, spec.z2);
        }
        // F is convex in t = log z.
        auto g = [&](double t) { return spec.evaluate(std::exp(t)); };
        double a = std::log(lo_z);
        double b = std::log(spec.z2);
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double gc = g(c);
        double gd = g(d);
        for (int it = 0; it < 2000 && b - a > 1e-7; ++it) {
            if (gc <= gd) {
                b = d;
                d = c;
                gd = gc;
                c = b - inv_phi * (b - a);
                gc = g(c);
            } else {
                a = c;
                c = d;
                gc = gd;
                d = a + inv_phi * (b - a);
                gd = g(d);
            }
        }
        // Function values stall near sqrt(machine epsilon) in t; the slope
        // of the convex F(e^t) keeps its sign reliably, so finish on that.
        auto slope = [&](double t) {
            const double zz = std::exp(t);
            double v = 0.0;
            for (const auto& r : spec.rising) {
                v += r.exponent * r.coeff * std::pow(zz, r.exponent);
            }
            for (const auto& f : spec.falling) {
                v -= f.exponent * f.coeff * std::pow(zz, -f.exponent);
            }
            return v;
        };
        a = std::max(std::log(lo_z), a - 1e-6);
        b = std::min(std::log(spec.z2), b + 1e-6);
        for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
            const double m = 0.5 * (a + b);
            if (slope(m) > 0.0) {
                b = m;
            } else {
                a = m;
            }
        }
        z = std::exp(0.5 * (a + b));
        for (double cand : {lo_z, spec.z2}) {
            if (cand > 0.0 && spec.evaluate(cand) < spec.evaluate(z)) {
                z = cand;
            }
        }
    }
    out.z_star = z;
    out.f_at_z_star = spec.evaluate(z);
    out.ratio = out.bound > 0.0 ? out.f_at_z_star / out.bound : 0.0;
    return out;
}

PowerSumSpec delta_kappa_spec(unsigned d, unsigned r, double q, std::uint64_t ell) {
    if (d < 3) {
        throw DomainError("delta spec needs d >= 3");
    }
    const double kappa = 1.0 / static_cast<double>((d - 1) * (d - 2));
    const double R = std::exp2(static_cast<double>(r));
    const double lk = std::pow(static_cast<double>(ell), kappa);
    const double dd = d;
    PowerSumSpec s;
    s.rising = {
        {lk * std::pow(q, -kappa), dd * kappa},
        {lk * std::pow(R, -(dd - 2) * kappa), 2 * (dd - 1) * kappa},
        {std::pow(R, -kappa), kappa},
        {std::pow(R, -(dd - 1) * kappa) * std::pow(q, kappa), (dd - 1) * kappa},
    };
    s.falling = {{1.0, 1.0}};
    s.z1 = 0.0;
    s.z2 = R;
    return s;
}

DeltaLemma delta_lemma(std::int64_t h, std::uint64_t q, std::uint64_t N, unsigned d, std::uint64_t D, double eps) {
    if (h == 0 || q == 0 || N < 2 || d < 3) {
        throw DomainError(fmt::format("delta lemma needs h != 0, q >= 1, N >= 2, d >= 3 (h={}, q={}, N={}, d={})", h,
                                      q, N, d));
    }
    const std::uint64_t ah = h < 0 ? static_cast<std::uint64_t>(-(h + 1)) + 1 : static_cast<std::uint64_t>(h);
    if (std::gcd(ah, q) != D) {
        throw ConsistencyError(fmt::format("D = {} but gcd({}, {}) = {}", D, ah, q, std::gcd(ah, q)));
    }
    const double H = static_cast<double>(ah);
    const double Q = static_cast<double>(q);
    const double n = static_cast<double>(N);
    const double nd = std::pow(n, d);
    const double nd1 = std::pow(n, d - 1);

    DeltaLemma out;
    out.delta = H / Q + 1.0 / n + Q / nd + static_cast<double>(D) / nd1;
    out.delta_simplified = (H * n / Q + 1.0) * (1.0 / n + Q / nd);
    if (out.delta > out.delta_simplified * (1.0 + 1e-12)) {
        throw ConsistencyError(fmt::format("Delta = {} exceeds its simplification {}", out.delta,
                                           out.delta_simplified));
    }
    const double dd = d;
    out.bound_a = std::pow(n, 1.0 + eps) * std::pow(out.delta, 1.0 / (dd * (dd - 1)));
    out.bound_b = n * std::pow(out.delta, 1.0 / (dd * dd - dd + 2)) * std::log(n);
    out.trivial_regime = out.delta >= 1.0;
    return out;
}

} // namespace digiweyl
