#include "digiweyl/cli.hpp"

#include "digiweyl/bounds.hpp"
#include "digiweyl/diophantine.hpp"
#include "digiweyl/discrepancy.hpp"
#include "digiweyl/errors.hpp"
#include "digiweyl/exponents.hpp"
#include "digiweyl/mvt.hpp"
#include "digiweyl/selftest.hpp"
#include "digiweyl/weyl.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

namespace digiweyl::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
    unsigned precision = 128;
    std::optional<unsigned> threads;
    unsigned partitions = 64;
    unsigned max_bits = 34;
    bool timing = false;
    std::string format = "csv";
};

struct PolyArgs {
    std::string poly;
    unsigned degree = 3;
    std::string coeffs;
};

struct SetArgs {
    std::string kind = "full";
    std::optional<unsigned> r;
    std::string r_range;
    std::optional<unsigned> s;
    std::optional<double> s_frac;
    unsigned k = 0;
    unsigned m = 2;
    std::optional<std::uint64_t> N;
};

struct EnvArgs {
    std::optional<std::string> formula;
    double eps = 0.0;
    double constant = 1.0;
    std::string alpha_q = "auto";
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--precision", c.precision, "fixed-point bits: 128, 192 or 256")
        ->check(CLI::IsMember({128u, 192u, 256u}));
    sub->add_option("--threads", c.threads, "worker threads (default: DIGIWEYL_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--partitions", c.partitions, "fixed block count for deterministic reduction")
        ->check(CLI::Range(1u, 1u << 20));
    sub->add_option("--max-bits", c.max_bits, "resource guard: at most 2^max-bits terms per sum")
        ->check(CLI::Range(1u, 63u));
    sub->add_flag("--timing", c.timing, "fill elapsed_ms (breaks byte-identical output)");
}

void add_poly(CLI::App* sub, PolyArgs& p) {
    sub->add_option("--poly", p.poly, "leading coefficient alpha of the monomial alpha Z^degree");
    sub->add_option("--degree", p.degree, "degree of the monomial given by --poly")->check(CLI::Range(1u, 64u));
    sub->add_option("--coeffs", p.coeffs, "full polynomial as 'a1;a2;...;ad'");
}

void add_set(CLI::App* sub, SetArgs& s, bool need_range) {
    sub->add_option("--set", s.kind, "full|fixed|cong|tm|rs|w|chi11|sigmapair|classical")
        ->check(CLI::IsMember({"full", "fixed", "cong", "tm", "rs", "w", "chi11", "sigmapair", "classical"}));
    sub->add_option("--r", s.r, "bit length")->check(CLI::Range(0u, 63u));
    if (need_range) {
        sub->add_option("--r-range", s.r_range, "bit lengths a..b");
    }
    sub->add_option("--s", s.s, "fixed digit sum");
    sub->add_option("--s-frac", s.s_frac, "fixed digit sum as floor(frac * r)")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--k", s.k, "residue (cong) or parity (chi11)");
    sub->add_option("--m", s.m, "modulus (cong)");
    sub->add_option("--N", s.N, "upper limit of the classical sum (default 2^r)");
}

void add_env(CLI::App* sub, EnvArgs& e) {
    sub->add_option("--formula", e.formula, "bound formula id");
    sub->add_option("--eps", e.eps, "epsilon replacing o(1) in 2^{o(r)}")->check(CLI::NonNegativeNumber);
    sub->add_option("--constant", e.constant, "multiplicative constant for the envelope")->check(CLI::PositiveNumber);
    sub->add_option("--alpha-q", e.alpha_q, "q of the Dirichlet pair: auto or an integer");
}

unsigned resolve_threads(const std::optional<unsigned>& flag) {
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("DIGIWEYL_THREADS"); env && *env) {
        unsigned v = 0;
        const auto* end = env + std::char_traits<char>::length(env);
        auto [ptr, ec] = std::from_chars(env, end, v);
        if (ec != std::errc{} || ptr != end || v == 0) {
            throw ParameterError(fmt::format("DIGIWEYL_THREADS must be a positive integer, got '{}'", env));
        }
        return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

EngineOptions engine_options(const Common& c) {
    EngineOptions o;
    o.precision = precision_from_bits(c.precision);
    o.threads = resolve_threads(c.threads);
    o.partitions = c.partitions;
    o.max_bits = c.max_bits;
    return o;
}

Polynomial make_poly(const PolyArgs& p) {
    if (!p.coeffs.empty()) {
        return Polynomial::parse(p.coeffs);
    }
    if (p.poly.empty()) {
        throw ParameterError("one of --poly or --coeffs is required");
    }
    return Polynomial::monomial(RealDesc::parse(p.poly), p.degree);
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const char* what) {
    auto num = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw ParameterError(fmt::format("bad {} '{}'", what, text));
        }
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const auto v = num(text);
        return {v, v};
    }
    const auto a = num(std::string_view(text).substr(0, dots));
    const auto b = num(std::string_view(text).substr(dots + 2));
    if (a > b) {
        throw ParameterError(fmt::format("empty {} '{}'", what, text));
    }
    return {a, b};
}

std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        const auto [a, b] = parse_range(text.substr(pos, comma - pos), what);
        for (auto v = a; v <= b; ++v) {
            out.push_back(v);
        }
        pos = comma + 1;
    }
    return out;
}

std::vector<unsigned> r_values(const SetArgs& s) {
    if (!s.r_range.empty()) {
        const auto [a, b] = parse_range(s.r_range, "--r-range");
        if (b > kMaxBits) {
            throw DomainError(fmt::format("r up to {} exceeds the cap {}", b, kMaxBits));
        }
        std::vector<unsigned> out;
        for (auto r = a; r <= b; ++r) {
            out.push_back(static_cast<unsigned>(r));
        }
        return out;
    }
    if (!s.r) {
        throw ParameterError("--r (or --r-range) is required");
    }
    return {*s.r};
}

unsigned digit_sum_for(const SetArgs& s, unsigned r) {
    if (s.s) {
        return *s.s;
    }
    if (s.s_frac) {
        return static_cast<unsigned>(std::floor(*s.s_frac * r + 1e-9));
    }
    throw ParameterError("--set fixed needs --s or --s-frac");
}

std::optional<Formula> default_formula(const std::string& kind) {
    if (kind == "full" || kind == "cong") {
        return Formula::Cong;
    }
    if (kind == "fixed") {
        return Formula::Sparse;
    }
    if (kind == "tm") {
        return Formula::ThueMorse;
    }
    if (kind == "rs") {
        return Formula::RudinShapiro;
    }
    if (kind == "w") {
        return Formula::DoubleTwist;
    }
    return std::nullopt;
}

DigitClassSpec class_spec(const SetArgs& s, unsigned r) {
    if (s.kind == "full") {
        return DigitClassSpec::full(r);
    }
    if (s.kind == "fixed") {
        return DigitClassSpec::fixed_sum(r, digit_sum_for(s, r));
    }
    if (s.kind == "cong") {
        return DigitClassSpec::congruence(r, s.k, s.m);
    }
    if (s.kind == "chi11") {
        return DigitClassSpec::chi11_parity(r, s.k);
    }
    if (s.kind == "sigmapair") {
        return DigitClassSpec::sigma_pair(r);
    }
    throw ParameterError(fmt::format("--set {} does not describe a point set", s.kind));
}

SumResult measure(const WeylEngine& eng, const SetArgs& s, unsigned r, std::int64_t ell) {
    if (s.kind == "classical") {
        const std::uint64_t N = s.N ? *s.N : (std::uint64_t{1} << r);
        return eng.classical_sum(ell, N);
    }
    if (ell <= 0) {
        throw DomainError("--ell must be >= 1 for restricted sums");
    }
    const auto l = static_cast<std::uint64_t>(ell);
    if (s.kind == "tm") {
        return eng.sum_thue_morse(l, r);
    }
    if (s.kind == "rs") {
        return eng.sum_rudin_shapiro(l, r);
    }
    if (s.kind == "w") {
        return eng.sum_double_twist(l, r);
    }
    return eng.sum_over_class(l, class_spec(s, r));
}

struct Envelope {
    std::optional<Formula> formula;
    std::optional<Convergent> pair;
    std::optional<BoundEnvelope> env;
};

Convergent explicit_pair(const RealDesc& alpha, const std::string& text) {
    std::uint64_t q = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
    if (ec != std::errc{} || ptr != text.data() + text.size() || q == 0) {
        throw ParameterError(fmt::format("--alpha-q must be 'auto' or a positive integer, got '{}'", text));
    }
    const Rational mid = resolve(alpha, 128).mid();
    Convergent c;
    c.q = q;
    c.a = floor_of(mid * Rational(c.q) + Rational(1, 2));
    c.err = std::fabs(to_double(mid - Rational(c.a, c.q)));
    c.certified = false;
    return c;
}

Envelope envelope_for(const Polynomial& f, std::optional<Formula> formula, unsigned r, std::uint64_t ell,
                      std::optional<unsigned> s, const SetArgs& set, const EnvArgs& e, std::ostream& err) {
    Envelope out;
    out.formula = formula;
    if (!formula) {
        return out;
    }
    if (f.degree() < 3) {
        err << fmt::format("note: no envelope for degree {} < 3\n", f.degree());
        return out;
    }
    BoundParams p;
    p.d = f.degree();
    p.r = r;
    p.ell = ell;
    p.s = s;
    p.k = set.k;
    p.m = std::max(1u, set.m);
    p.eps = e.eps;
    p.constant = e.constant;
    if (set.kind != "cong") {
        p.k = 0;
    }
    if (formula_needs_q(*formula)) {
        try {
            out.pair = e.alpha_q == "auto" ? choose_q(f.leading(), r, ell, f.degree())
                                           : explicit_pair(f.leading(), e.alpha_q);
        } catch (const RangeError& ex) {
            err << fmt::format("note: no envelope at r={}: {}\n", r, ex.what());
            return out;
        }
        p.q = to_double(out.pair->q);
    }
    out.env = bound_rhs(*formula, p);
    return out;
}

std::string num(double v) {
    return fmt::format("{:.17g}", v);
}

std::string elapsed(const Common& c, double ms) {
    return c.timing ? fmt::format("{:.3f}", ms) : "0";
}

constexpr const char* kSumHeader =
    "formula_id,d,r,s,k,m,ell,q,a,sum_re,sum_im,magnitude,terms,envelope,ratio,elapsed_ms\n";

void sum_row(std::ostream& out, const Common& c, const Polynomial& f, const SetArgs& set, unsigned r,
             std::optional<unsigned> s, std::int64_t ell, const SumResult& res, const Envelope& env) {
    const bool cong = set.kind == "cong";
    const bool chi = set.kind == "chi11";
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
               env.formula ? formula_name(*env.formula) : std::string_view("none"), f.degree(), r,
               s ? std::to_string(*s) : "", (cong || chi) ? std::to_string(set.k) : "", cong ? std::to_string(set.m) : "",
               ell, env.pair ? env.pair->q.str() : "", env.pair ? env.pair->a.str() : "", num(res.re), num(res.im),
               num(res.magnitude), res.terms, env.env ? num(env.env->value) : "",
               env.env ? num(res.magnitude / env.env->value) : "", elapsed(c, res.meta.elapsed_ms));
}

std::optional<Formula> chosen_formula(const EnvArgs& e, const std::string& kind) {
    if (!e.formula) {
        return default_formula(kind);
    }
    if (*e.formula == "none") {
        return std::nullopt;
    }
    const Formula f = parse_formula(*e.formula);
    if (f == Formula::CongDisc || f == Formula::SparseDisc) {
        throw ParameterError("discrepancy formulas apply to verify-bounds and discrepancy, not to sums");
    }
    return f;
}

int cmd_sum(const Common& c, const PolyArgs& pa, const SetArgs& set, const EnvArgs& e, std::int64_t ell,
            std::ostream& out, std::ostream& err) {
    const Polynomial f = make_poly(pa);
    const WeylEngine eng(f, engine_options(c));
    const auto formula = chosen_formula(e, set.kind);
    out << kSumHeader;
    for (unsigned r : r_values(set)) {
        std::optional<unsigned> s;
        if (set.kind == "fixed") {
            s = digit_sum_for(set, r);
        }
        const SumResult res = measure(eng, set, r, ell);
        const Envelope env =
            set.kind == "classical"
                ? Envelope{}
                : envelope_for(f, formula, r, static_cast<std::uint64_t>(std::max<std::int64_t>(ell, 1)), s, set, e, err);
        sum_row(out, c, f, set, r, s, ell, res, env);
    }
    return kOk;
}

int cmd_table1(unsigned d_min, unsigned d_max, std::ostream& out) {
    if (d_min < 3 || d_min > d_max) {
        throw ParameterError("table1 needs 3 <= d-min <= d-max");
    }
    out << "d,xi,one_minus_xi,rho0\n";
    for (unsigned d = d_min; d <= d_max; ++d) {
        const auto p = profile(d);
        const double xi = to_double(p.xi);
        // Six decimals, rounded up so the printed value never undershoots
        // the threshold.
        const double rho = std::ceil(rho_threshold(d) * 1e6) / 1e6;
        fmt::print(out, "{},{:.6f},{:.6f},{:.6f}\n", d, xi, 1.0 - xi, rho);
    }
    return kOk;
}

int cmd_verify(const Common& c, const PolyArgs& pa, SetArgs set, const EnvArgs& e, std::uint64_t ell, bool explicit_set,
               std::ostream& out, std::ostream& err) {
    if (!e.formula) {
        throw ParameterError("verify-bounds needs --formula");
    }
    const Formula formula = parse_formula(*e.formula);
    const Polynomial f = make_poly(pa);
    const WeylEngine eng(f, engine_options(c));
    if (!explicit_set) {
        switch (formula) {
        case Formula::Sparse:
        case Formula::SparseOpt:
        case Formula::SparseSimple:
        case Formula::SparseLog:
        case Formula::SparseDisc:
            set.kind = "fixed";
            break;
        case Formula::ThueMorse:
            set.kind = "tm";
            break;
        case Formula::RudinShapiro:
            set.kind = "rs";
            break;
        case Formula::DoubleTwist:
            set.kind = "w";
            break;
        default:
            set.kind = "cong";
            break;
        }
    }
    const bool disc = formula == Formula::CongDisc || formula == Formula::SparseDisc;

    struct Row {
        unsigned r;
        std::string q;
        double measured;
        double envelope;
        double trivial_ratio;
    };
    std::vector<Row> rows;
    std::vector<double> meas;
    std::vector<double> unit;
    for (unsigned r : r_values(set)) {
        std::optional<unsigned> s;
        if (set.kind == "fixed") {
            s = digit_sum_for(set, r);
        }
        const Envelope env = envelope_for(f, formula, r, ell, s, set, e, err);
        if (!env.env) {
            continue;
        }
        Row row{r, env.pair ? env.pair->q.str() : "", 0.0, env.env->value, 0.0};
        if (disc) {
            const auto phases = eng.member_phases(class_spec(set, r));
            row.measured = extreme_discrepancy(phases);
            row.trivial_ratio = row.measured;
        } else {
            const SumResult res = measure(eng, set, r, static_cast<std::int64_t>(ell));
            row.measured = res.magnitude;
            row.trivial_ratio = res.terms ? res.magnitude / static_cast<double>(res.terms) : 0.0;
        }
        meas.push_back(row.measured);
        unit.push_back(row.envelope / e.constant);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw RangeError("no r in range admits an envelope");
    }
    const double fitted = fit_constant(meas, unit);

    if (c.format == "json") {
        Json j;
        j["formula"] = std::string(formula_name(formula));
        j["d"] = f.degree();
        j["constant"] = e.constant;
        j["eps"] = e.eps;
        j["fitted_constant"] = fitted;
        j["rows"] = Json::array();
        for (const auto& row : rows) {
            j["rows"].push_back({{"r", row.r},
                                 {"q", row.q},
                                 {"measured", row.measured},
                                 {"envelope", row.envelope},
                                 {"ratio", row.measured / row.envelope},
                                 {"trivial_ratio", row.trivial_ratio}});
        }
        out << j.dump(2) << "\n";
    } else {
        out << "r,q,measured,envelope,ratio,trivial_ratio\n";
        for (const auto& row : rows) {
            fmt::print(out, "{},{},{},{},{},{}\n", row.r, row.q, num(row.measured), num(row.envelope),
                       num(row.measured / row.envelope), num(row.trivial_ratio));
        }
    }
    err << fmt::format("fitted_constant={} formula={} eps={}\n", num(fitted), formula_name(formula), num(e.eps));
    return kOk;
}

std::string svg_plot(const std::vector<Json>& points) {
    // log10 scale on y; D, ETK and (when present) the envelope against r.
    const double W = 640, H = 400, L = 60, R = 20, T = 20, B = 40;
    double rmin = points.front()["r"].get<double>();
    double rmax = points.back()["r"].get<double>();
    if (rmax == rmin) {
        rmax = rmin + 1;
    }
    double ymin = 1e300;
    double ymax = -1e300;
    auto consider = [&](const Json& v) {
        if (v.is_number() && v.get<double>() > 0) {
            const double y = std::log10(v.get<double>());
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    };
    for (const auto& p : points) {
        consider(p["D"]);
        consider(p["etk"]);
        consider(p["envelope"]);
    }
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
    if (ymax <= ymin) {
        ymax = ymin + 1;
    }
    auto px = [&](double r) { return L + (r - rmin) / (rmax - rmin) * (W - L - R); };
    auto py = [&](double v) { return T + (ymax - std::log10(v)) / (ymax - ymin) * (H - T - B); };

    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" font-size=\"12\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n"
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        W, H, L, H - B, W - R, H - B, L, T, L, H - B);
    for (double y = ymin; y <= ymax; y += 1) {
        const double yy = py(std::pow(10.0, y));
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">1e{}</text>\n", L - 6, yy + 4, y);
    }
    for (const auto& p : points) {
        const double r = p["r"].get<double>();
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(r), H - B + 16, r);
    }
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">r</text>\n", (L + W - R) / 2, H - 6);
    const std::pair<const char*, const char*> series[] = {{"D", "#1f77b4"}, {"etk", "#d62728"}, {"envelope", "#2ca02c"}};
    double legend = T + 10;
    for (const auto& [key, colour] : series) {
        std::string path;
        for (const auto& p : points) {
            const auto& v = p[key];
            if (v.is_number() && v.get<double>() > 0) {
                path += fmt::format("{}{:.2f},{:.2f}", path.empty() ? "" : " ", px(p["r"].get<double>()),
                                    py(v.get<double>()));
            }
        }
        if (path.empty()) {
            continue;
        }
        s += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", colour, path);
        s += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>\n", W - R - 80, legend, colour, key);
        legend += 16;
    }
    s += "</svg>\n";
    return s;
}

int cmd_discrepancy(const Common& c, const PolyArgs& pa, const SetArgs& set, const EnvArgs& e, unsigned L,
                    double etk_c, const std::string& svg_path, std::ostream& out) {
    const Polynomial f = make_poly(pa);
    const WeylEngine eng(f, engine_options(c));
    EquiOptions opt;
    opt.etk_constant = etk_c;
    opt.eps = e.eps;
    opt.constant = e.constant;

    std::vector<Json> points;
    for (unsigned r : r_values(set)) {
        const auto spec = class_spec(set, r);
        const auto rep = equidistribution_report(eng, spec, L, opt);
        Json j;
        j["r"] = r;
        j["set"] = spec.describe();
        j["N"] = rep.N;
        j["L"] = L;
        j["D"] = rep.discrepancy;
        j["star"] = rep.star;
        j["etk"] = rep.etk;
        j["envelope"] = rep.envelope ? Json(rep.envelope->value) : Json(nullptr);
        j["envelope_formula"] = rep.envelope ? Json(std::string(formula_name(rep.envelope->formula))) : Json(nullptr);
        j["scale_reference"] = rep.scale_reference;
        j["ratios"] = {{"etk", rep.ratio_etk},
                       {"envelope", rep.ratio_envelope ? Json(*rep.ratio_envelope) : Json(nullptr)}};
        j["etk_holds"] = rep.etk_holds();
        points.push_back(std::move(j));
    }
    if (points.size() == 1) {
        out << points.front().dump(2) << "\n";
    } else {
        out << Json(points).dump(2) << "\n";
    }
    if (!svg_path.empty()) {
        std::ofstream svg(svg_path);
        if (!svg) {
            throw ParameterError(fmt::format("cannot write '{}'", svg_path));
        }
        svg << svg_plot(points);
    }
    return kOk;
}

int cmd_convergents(const std::string& alpha_text, std::size_t count, std::optional<double> probe, std::ostream& out,
                    std::ostream& err) {
    const RealDesc alpha = RealDesc::parse(alpha_text);
    const auto cf = continued_fraction_adaptive(alpha, count);
    out << "index,a,q,err\n";
    for (std::size_t i = 0; i < cf.convergents.size(); ++i) {
        const auto& c = cf.convergents[i];
        fmt::print(out, "{},{},{},{}\n", i, c.a.str(), c.q.str(), num(c.err));
    }
    const auto uncertified = std::count_if(cf.convergents.begin(), cf.convergents.end(),
                                           [](const Convergent& c) { return !c.certified; });
    err << fmt::format("terms={} terminated={} uncertified={}\n", cf.quotients.size(), cf.terminated, uncertified);
    if (probe) {
        const auto t = diophantine_type_probe(alpha, *probe);
        err << fmt::format("type_estimate={} infinite={} samples={} (empirical, not a certificate)\n",
                           num(t.estimate), t.infinite, t.samples);
    }
    return uncertified == 0 ? kOk : kViolation;
}

int cmd_mvt(unsigned d, unsigned s, const std::string& list, unsigned threads, std::ostream& out, std::ostream& err) {
    const auto Ns = parse_list(list, "--N-list");
    const auto rep = mvt_scaling_report(d, s, Ns, 4.0, threads);
    out << "N,J,envelope,ratio,asymptotic_ratio\n";
    for (const auto& row : rep.rows) {
        fmt::print(out, "{},{},{},{},{}\n", row.N, row.J.str(), num(row.envelope), num(row.ratio),
                   row.asymptotic_ratio ? num(*row.asymptotic_ratio) : "");
    }
    err << fmt::format("critical_exponent={} max_ratio={} bounded_by_{}={}\n", rep.critical, num(rep.max_ratio),
                       rep.threshold, rep.bounded());
    return kOk;
}

int cmd_selftest(std::uint64_t seed, unsigned threads, std::ostream& out) {
    const auto checks = run_selftest(seed, threads);
    std::size_t failed = 0;
    for (const auto& c : checks) {
        if (c.ok) {
            fmt::print(out, "ok    {} ({:.2f}s)\n", c.name, c.seconds);
        } else {
            ++failed;
            fmt::print(out, "FAIL  {}: {}\n", c.name, c.detail);
        }
    }
    fmt::print(out, "{} checks, {} failed\n", checks.size(), failed);
    return failed == 0 ? kOk : kViolation;
}

// Moves a "--config FILE" pair out of args and splices its tokens in just
// after the subcommand name, so explicit flags (parsed later) win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::vector<std::string> cfg;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw CLI::ArgumentMismatch("--config needs a file name");
            }
            cfg = config_tokens(args[i + 1]);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            cfg = config_tokens(args[i].substr(9));
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (cfg.empty()) {
        return args;
    }
    const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
    if (sub == args.end()) {
        throw CLI::RequiredError("a subcommand");
    }
    args.insert(sub + 1, cfg.begin(), cfg.end());
    return args;
}

} // namespace

std::vector<std::string> config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParameterError(fmt::format("cannot read config '{}'", path));
    }
    std::vector<std::string> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParameterError(fmt::format("{}:{}: expected key=value", path, lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || !std::all_of(key.begin(), key.end(), [](char ch) {
                return std::islower(static_cast<unsigned char>(ch)) || std::isdigit(static_cast<unsigned char>(ch)) ||
                       ch == '-' || ch == '_' || ch == 'N';
            })) {
            throw ParameterError(fmt::format("{}:{}: bad key '{}'", path, lineno, key));
        }
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        out.push_back("--" + flag + "=" + value);
    }
    return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Weyl sums over digitally restricted integers", "digiweyl"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", "digiweyl 0.1.0");
    app.add_option("--config", "flat key=value file applied to the subcommand (explicit flags win)");

    Common common;
    PolyArgs poly;
    SetArgs set;
    EnvArgs env;
    std::int64_t ell = 1;

    auto* sum = app.add_subcommand("sum", "one Weyl sum with its envelope");
    add_common(sum, common);
    add_poly(sum, poly);
    add_set(sum, set, false);
    add_env(sum, env);
    sum->add_option("--ell", ell, "multiplier (h for the classical sum)");

    auto* scan = app.add_subcommand("scan", "Weyl sums over a range of r");
    add_common(scan, common);
    add_poly(scan, poly);
    add_set(scan, set, true);
    add_env(scan, env);
    scan->add_option("--ell", ell, "multiplier (h for the classical sum)");

    unsigned d_min = 3, d_max = 10;
    auto* table1 = app.add_subcommand("table1", "density thresholds rho0(d)");
    table1->add_option("--d-min", d_min);
    table1->add_option("--d-max", d_max);

    auto* verify = app.add_subcommand("verify-bounds", "measured sums against a bound envelope");
    add_common(verify, common);
    add_poly(verify, poly);
    add_set(verify, set, true);
    add_env(verify, env);
    verify->add_option("--ell", ell, "multiplier")->check(CLI::PositiveNumber);
    verify->add_option("--format", common.format)->check(CLI::IsMember({"csv", "json"}));

    unsigned L = 64;
    double etk_c = 3.0;
    std::string svg;
    auto* disc = app.add_subcommand("discrepancy", "extreme discrepancy, ETK majorant and envelope");
    add_common(disc, common);
    add_poly(disc, poly);
    add_set(disc, set, true);
    disc->add_option("--L", L, "number of multiples in the ETK majorant")->check(CLI::PositiveNumber);
    disc->add_option("--etk-c", etk_c, "ETK constant")->check(CLI::PositiveNumber);
    disc->add_option("--eps", env.eps)->check(CLI::NonNegativeNumber);
    disc->add_option("--constant", env.constant)->check(CLI::PositiveNumber);
    disc->add_option("--svg", svg, "write a log-scale D-vs-r plot");

    std::string alpha;
    std::size_t count = 20;
    std::optional<double> probe;
    auto* conv = app.add_subcommand("convergents", "certified continued-fraction convergents");
    conv->add_option("--alpha", alpha, "real description")->required();
    conv->add_option("--count", count, "partial quotients")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
    conv->add_option("--probe", probe, "also estimate the type from convergents with q <= Q");

    unsigned md = 2, ms = 2;
    std::string nlist = "1..10";
    std::optional<unsigned> mthreads;
    auto* mvt = app.add_subcommand("mvt", "Vinogradov mean values by enumeration");
    mvt->add_option("--d", md)->check(CLI::PositiveNumber);
    mvt->add_option("--s", ms)->check(CLI::PositiveNumber);
    mvt->add_option("--N-list", nlist, "comma list of N or a..b ranges");
    mvt->add_option("--threads", mthreads)->check(CLI::PositiveNumber);

    std::uint64_t seed = 1;
    std::optional<unsigned> sthreads;
    auto* self = app.add_subcommand("selftest", "run the invariant suite");
    self->add_option("--seed", seed);
    self->add_option("--threads", sthreads)->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*sum || *scan) {
            if (*sum && !set.r) {
                throw ParameterError("--r is required");
            }
            return cmd_sum(common, poly, set, env, ell, out, err);
        }
        if (*table1) {
            return cmd_table1(d_min, d_max, out);
        }
        if (*verify) {
            return cmd_verify(common, poly, set, env, static_cast<std::uint64_t>(ell), verify->count("--set") > 0, out,
                              err);
        }
        if (*disc) {
            return cmd_discrepancy(common, poly, set, env, L, etk_c, svg, out);
        }
        if (*conv) {
            return cmd_convergents(alpha, count, probe, out, err);
        }
        if (*mvt) {
            return cmd_mvt(md, ms, nlist, resolve_threads(mthreads), out, err);
        }
        if (*self) {
            return cmd_selftest(seed, resolve_threads(sthreads), out);
        }
    } catch (const ResourceError& e) {
        err << "resource guard: " << e.what() << "\n";
        return kResource;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace digiweyl::cli
