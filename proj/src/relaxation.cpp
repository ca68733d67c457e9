#include "pgap/relaxation.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pgap {

namespace {

constexpr double kVolGuard = 1e-300;

double checked_mu_integral(const FunctionSpec& f, const Domain& dom, MuKind mu) {
    double v = integrate_mu(f, dom, mu);
    if (!std::isfinite(v)) throw std::range_error("mu integral overflows double");
    return v;
}

// Quantities entering the volume formulas with exp(log_scale) factored out.
// Keeping them scaled makes ratios exact at any box size; the raw volumes are
// reconstructed (or reported infinite) at the end.
struct ScaledParts {
    double log_scale;
    long double int_f;
    long double int_mu;
    long double zint;
    Method f_method;
    std::vector<std::string> trace;
};

bool composition_count_ok(int q, int slots) {
    double r = 1.0;
    for (int i = 1; i < slots; ++i) r = r * (q + i) / i;
    return r <= 4e6;
}

double envelope_weight_inv(int d, int k) {
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) binom = binom * (d - k + i) / i;
    return (d + 1.0) * binom;
}

bool strictly_positive(const Vec& c) {
    for (int i = 0; i < c.size(); ++i)
        if (!(c[i] > 0.0)) return false;
    return true;
}

ScaledParts exp_box_scaled(const ExpLinearForm& f, MuKind mu, const BoxDomain& box) {
    int d = box.dim();
    double u = box.scale();
    const Vec& c = f.c;
    long double M = 0.0L;
    long double cprod = 1.0L;
    for (int j = 0; j < d; ++j) {
        M += static_cast<long double>(c[j]) *
             (static_cast<long double>(box.lower()[j]) + static_cast<long double>(u));
        cprod *= static_cast<long double>(c[j]);
    }
    long double emM = expl(-M);
    long double ud = powl(static_cast<long double>(u), d);

    ScaledParts p;
    p.log_scale = static_cast<double>(M);
    p.f_method = Method::product_formula;
    p.trace.push_back("log_scaled");

    long double pf = 1.0L;
    for (int j = 0; j < d; ++j)
        pf *= (1.0L - expl(-static_cast<long double>(u) * static_cast<long double>(c[j]))) /
              static_cast<long double>(c[j]);
    p.int_f = pf - ud * emM;
    p.trace.push_back("product_formula");

    // vertex exponents c.v0 + u * sum_{j in S} c_j, relative to the top vertex M
    std::uint32_t total = 1u << d;
    std::vector<long double> rel(total, 0.0L);  // a_S - M <= 0
    long double base = -M;
    for (int j = 0; j < d; ++j) base += static_cast<long double>(c[j]) * static_cast<long double>(box.lower()[j]);
    rel[0] = base;
    for (std::uint32_t m = 1; m < total; ++m) {
        std::uint32_t low = m & (m - 1);
        int bit = std::countr_zero(m);
        rel[m] = rel[low] + static_cast<long double>(u) * static_cast<long double>(c[bit]);
    }

    if (mu == MuKind::constant) {
        p.int_mu = ud * (1.0L - emM);
        p.trace.push_back("constant_bound");
    } else {
        long double acc = 0.0L;
        for (std::uint32_t m = 0; m < total; ++m)
            acc += (expl(rel[m]) - emM) /
                   static_cast<long double>(envelope_weight_inv(d, std::popcount(m)));
        p.int_mu = ud * acc;
        p.trace.push_back("envelope_vertex_sum");
    }

    long double zacc = 0.0L;
    for (std::uint32_t m = 0; m < total; ++m) {
        long double a = rel[m] + M;  // a_S itself, positive
        long double term = (expl(rel[m]) - emM) / a;
        zacc += ((d - std::popcount(m)) & 1) ? -term : term;
    }
    p.zint = zacc / cprod - ud * emM / (d + 1);
    p.trace.push_back("subset_expansion");
    return p;
}

ScaledParts power_box_scaled(const PowerLinearForm& f, MuKind mu, const BoxDomain& box,
                             const NumericOptions& opt) {
    int d = box.dim();
    double u = box.scale();
    double s = f.c.dot(box.lower()) / u;
    double T = f.c.sum() + s;
    Vec chat = f.c / T;
    double shat = s / T;

    ScaledParts p;
    p.log_scale = (f.q + d) * std::log(u) + f.q * std::log(T);
    p.trace.push_back("log_scaled");

    bool integral_q = f.q == std::floor(f.q) && f.q < 1e9 &&
                      composition_count_ok(static_cast<int>(f.q), d + 1);
    double R;
    if (integral_q) {
        R = integrate_power_multinomial(chat, static_cast<int>(f.q), shat);
        p.f_method = Method::multinomial;
    } else if (d <= opt.triangulation_cap && check_genericity(chat, opt.genericity_tol).ok) {
        R = integrate_power_triangulation(chat, f.q, shat, opt);
        p.f_method = Method::triangulation;
    } else {
        IntegralResult ir = integrate(FunctionSpec(f), Domain(box), opt);
        R = static_cast<double>(expl(logl(static_cast<long double>(ir.value)) -
                                     static_cast<long double>(p.log_scale)));
        p.f_method = ir.method;
    }
    p.trace.push_back(method_name(p.f_method));
    p.int_f = static_cast<long double>(R);

    if (mu == MuKind::constant) {
        p.int_mu = 1.0L;
        p.trace.push_back("constant_bound");
    } else {
        std::uint32_t total = 1u << d;
        std::vector<long double> rho(total, 0.0L);
        rho[0] = static_cast<long double>(shat);
        for (std::uint32_t m = 1; m < total; ++m) {
            std::uint32_t low = m & (m - 1);
            int bit = std::countr_zero(m);
            rho[m] = rho[low] + static_cast<long double>(chat[bit]);
        }
        long double acc = 0.0L;
        for (std::uint32_t m = 0; m < total; ++m)
            acc += powl(rho[m], static_cast<long double>(f.q)) /
                   static_cast<long double>(envelope_weight_inv(d, std::popcount(m)));
        p.int_mu = acc;
        p.trace.push_back("envelope_vertex_sum");
    }

    p.zint = p.int_f / (f.q + d + 1);
    p.trace.push_back("homogeneous_shortcut");
    return p;
}

double unscale(double log_scale, long double v) {
    if (v <= 0.0L) return 0.0;
    long double lv = static_cast<long double>(log_scale) + logl(v);
    if (lv > 709.0L) return std::numeric_limits<double>::infinity();
    return static_cast<double>(expl(lv));
}

RelaxationReport assemble_scaled(const ScaledParts& p, MuKind mu, int d) {
    long double volP_s = (p.int_mu - p.int_f) / (d + 2);
    long double volP0_s = p.int_mu / (d + 2) - p.zint;
    long double delta_s = p.int_f / (d + 2) - p.zint;
    if (volP_s < -1e-9L * std::max(1.0L, fabsl(p.int_mu)))
        throw std::logic_error("mu is not an upper bound on f over the domain");
    RelaxationReport rep;
    rep.mu = mu;
    rep.vol_perspective = unscale(p.log_scale, volP_s);
    rep.vol_naive = unscale(p.log_scale, volP0_s);
    rep.delta = unscale(p.log_scale, delta_s);
    if (!(volP0_s > 0.0L))
        throw std::domain_error("naive relaxation volume is degenerate");
    rep.ratio = static_cast<double>(delta_s / volP0_s);
    rep.asymptotic = !(std::isfinite(rep.vol_perspective) && std::isfinite(rep.vol_naive) &&
                       std::isfinite(rep.delta));
    rep.formula_trace = p.trace;
    return rep;
}

bool scaled_lane_applies(const FunctionSpec& f, const Domain& dom) {
    const auto* box = std::get_if<BoxDomain>(&dom);
    if (!box) return false;
    if (std::holds_alternative<PowerLinearForm>(f)) return true;
    if (std::holds_alternative<ExpLinearForm>(f))
        return strictly_positive(coefficients(f)) && box->dim() <= 20;
    return false;
}

}  // namespace

double vol_perspective(const FunctionSpec& f, MuKind mu, const Domain& dom,
                       const NumericOptions& opt) {
    double imu = checked_mu_integral(f, dom, mu);
    IntegralResult fint = integrate(f, dom, opt);
    double diff = imu - fint.value;
    if (diff < -1e-9 * std::max(1.0, std::abs(imu)))
        throw std::logic_error("mu is not an upper bound on f over the domain");
    return diff / (domain_dim(dom) + 2);
}

double vol_naive(const FunctionSpec& f, MuKind mu, const Domain& dom, const NumericOptions& opt) {
    double imu = checked_mu_integral(f, dom, mu);
    IntegralResult z = z_integral(f, dom, opt);
    return imu / (domain_dim(dom) + 2) - z.value;
}

double cutoff_amount(const FunctionSpec& f, const Domain& dom, const NumericOptions& opt) {
    IntegralResult fint = integrate(f, dom, opt);
    IntegralResult z = z_integral(f, dom, opt);
    return fint.value / (domain_dim(dom) + 2) - z.value;
}

double cutoff_amount_homogeneous(const FunctionSpec& f, const Domain& dom,
                                 const NumericOptions& opt) {
    auto q = homogeneity_degree(f);
    if (!q) throw std::invalid_argument("homogeneous shortcut: function is not homogeneous");
    int d = domain_dim(dom);
    IntegralResult fint = integrate(f, dom, opt);
    return (*q - 1.0) / ((d + 2) * (*q + d + 1)) * fint.value;
}

double cutoff_amount_exp_box(const ExpLinearForm& f, const BoxDomain& box) {
    int d = box.dim();
    double u = box.scale();
    require_positive_coefficients(f.c);
    if (d > 20) throw std::invalid_argument("cutoff amount: subset expansion cap is 20 coordinates");
    long double cprod = 1.0L;
    long double cv0 = 0.0L;
    for (int j = 0; j < d; ++j) {
        cprod *= static_cast<long double>(f.c[j]);
        cv0 += static_cast<long double>(f.c[j]) * static_cast<long double>(box.lower()[j]);
    }
    long double grand = expl(cv0);
    for (int j = 0; j < d; ++j)
        grand *= expm1l(static_cast<long double>(u) * static_cast<long double>(f.c[j]));
    std::uint32_t total = 1u << d;
    std::vector<long double> a(total, cv0);
    for (std::uint32_t m = 1; m < total; ++m) {
        std::uint32_t low = m & (m - 1);
        int bit = std::countr_zero(m);
        a[m] = a[low] + static_cast<long double>(u) * static_cast<long double>(f.c[bit]);
    }
    long double zpart = 0.0L;
    for (std::uint32_t m = 0; m < total; ++m) {
        long double term = expm1l(a[m]) / a[m];
        zpart += ((d - std::popcount(m)) & 1) ? -term : term;
    }
    long double ud = powl(static_cast<long double>(u), d);
    long double v = (grand / (d + 2) - zpart) / cprod + ud / ((d + 1.0L) * (d + 2.0L));
    double out = static_cast<double>(v);
    if (!std::isfinite(out)) throw std::range_error("cutoff amount overflows double");
    return out;
}

double cutoff_ratio(const FunctionSpec& f, MuKind mu, const Domain& dom,
                    const NumericOptions& opt) {
    double volP0 = vol_naive(f, mu, dom, opt);
    if (!(volP0 > kVolGuard)) throw std::domain_error("naive relaxation volume is degenerate");
    return cutoff_amount(f, dom, opt) / volP0;
}

RelaxationReport analyze(const FunctionSpec& f, MuKind mu, const Domain& dom,
                         const NumericOptions& opt) {
    if (scaled_lane_applies(f, dom)) {
        const auto& box = std::get<BoxDomain>(dom);
        ScaledParts parts = std::holds_alternative<ExpLinearForm>(f)
                                ? exp_box_scaled(std::get<ExpLinearForm>(f), mu, box)
                                : power_box_scaled(std::get<PowerLinearForm>(f), mu, box, opt);
        return assemble_scaled(parts, mu, box.dim());
    }
    RelaxationReport rep;
    rep.mu = mu;
    double imu = checked_mu_integral(f, dom, mu);
    IntegralResult fint = integrate(f, dom, opt);
    IntegralResult z = z_integral(f, dom, opt);
    int d = domain_dim(dom);
    double diff = imu - fint.value;
    if (diff < -1e-9 * std::max(1.0, std::abs(imu)))
        throw std::logic_error("mu is not an upper bound on f over the domain");
    rep.vol_perspective = diff / (d + 2);
    rep.vol_naive = imu / (d + 2) - z.value;
    rep.delta = fint.value / (d + 2) - z.value;
    if (!(rep.vol_naive > kVolGuard))
        throw std::domain_error("naive relaxation volume is degenerate");
    rep.ratio = rep.delta / rep.vol_naive;
    rep.asymptotic = false;
    rep.formula_trace = {method_name(fint.method), method_name(z.method),
                         mu == MuKind::constant ? "constant_bound" : "envelope"};
    return rep;
}

ExactPowerReport exact_power_box_report(const std::vector<Rational>& c, int q,
                                        const std::vector<Rational>& v0, const Rational& u,
                                        MuKind mu) {
    int d = static_cast<int>(c.size());
    if (d < 1 || static_cast<int>(v0.size()) != d)
        throw std::invalid_argument("exact report: dimension mismatch");
    if (q < 1) throw std::invalid_argument("exact report: exponent must be >= 1");
    if (!(u > 0)) throw std::invalid_argument("exact report: u must be positive");
    for (const Rational& v : v0)
        if (!(v > 0)) throw std::invalid_argument("exact report: lower corner must be positive");
    Rational cv0 = 0, csum = 0;
    for (int j = 0; j < d; ++j) {
        cv0 += c[static_cast<std::size_t>(j)] * v0[static_cast<std::size_t>(j)];
        csum += c[static_cast<std::size_t>(j)];
    }
    Rational s = cv0 / u;
    Rational int_f = rational_pow(u, q + d) * integrate_power_multinomial_exact(c, q, s);
    Rational int_mu;
    if (mu == MuKind::constant) {
        int_mu = rational_pow(cv0 + u * csum, q) * rational_pow(u, d);
    } else {
        int_mu = integrate_envelope_power_exact(c, q, v0, u);
    }
    Rational zint = int_f / (q + d + 1);
    ExactPowerReport rep;
    rep.vol_perspective = (int_mu - int_f) / (d + 2);
    rep.vol_naive = int_mu / (d + 2) - zint;
    rep.delta = int_f / (d + 2) - zint;
    if (!(rep.vol_naive > 0)) throw std::domain_error("naive relaxation volume is degenerate");
    rep.ratio = rep.delta / rep.vol_naive;
    return rep;
}

namespace {

void validate_u_values(const std::vector<double>& u_values) {
    if (u_values.empty()) throw std::invalid_argument("sweep: u list must not be empty");
    double prev = 0.0;
    for (double u : u_values) {
        if (!(u > prev))
            throw std::invalid_argument("sweep: u values must be positive and strictly increasing");
        prev = u;
    }
}

double sweep_theoretical(const FunctionSpec& f, MuKind mu) {
    if (std::holds_alternative<ExpLinearForm>(f)) {
        const Vec& c = coefficients(f);
        if (!strictly_positive(c)) return std::numeric_limits<double>::quiet_NaN();
        return exp_scaled_ratio_limit(c, mu);
    }
    if (const auto* p = std::get_if<PowerLinearForm>(&f)) {
        if (mu != MuKind::constant) return std::numeric_limits<double>::quiet_NaN();
        if (p->q == 1.0) return 0.0;
        return cx_rat_lower_bound(p->q, static_cast<int>(p->c.size()));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::vector<SweepRow> ratio_sweep(const FunctionSpec& f, MuKind mu, const Vec& v0,
                                  const std::vector<double>& u_values,
                                  const NumericOptions& opt) {
    validate_u_values(u_values);
    bool exp_family = std::holds_alternative<ExpLinearForm>(f);
    int d = function_dim(f);
    double theoretical = sweep_theoretical(f, mu);
    std::vector<SweepRow> rows;
    rows.reserve(u_values.size());
    for (double u : u_values) {
        SweepRow row;
        row.u = u;
        row.theoretical = theoretical;
        try {
            RelaxationReport rep = analyze(f, mu, BoxDomain(v0, u), opt);
            row.vol_perspective = rep.vol_perspective;
            row.vol_naive = rep.vol_naive;
            row.delta = rep.delta;
            row.ratio = rep.ratio;
            row.scaled_ratio = exp_family ? std::pow(u, d) * rep.ratio : rep.ratio;
            row.asymptotic = rep.asymptotic;
        } catch (const std::range_error&) {
            double nan = std::numeric_limits<double>::quiet_NaN();
            row.vol_perspective = nan;
            row.vol_naive = nan;
            row.delta = nan;
            row.ratio = nan;
            row.scaled_ratio = nan;
            row.asymptotic = true;
        }
        rows.push_back(row);
    }
    return rows;
}

double exp_scaled_ratio_limit(const Vec& c, MuKind mu) {
    require_positive_coefficients(c);
    int d = static_cast<int>(c.size());
    double prod = 1.0;
    for (int j = 0; j < d; ++j) prod *= c[j];
    double envelope_limit = (d + 1.0) / prod;
    return mu == MuKind::concave_envelope ? envelope_limit : envelope_limit / (d + 1.0);
}

double cx_rat_lower_bound(double q, int d) {
    if (!(q > 1.0)) throw std::invalid_argument("ratio bound requires q > 1");
    if (d < 1) throw std::invalid_argument("ratio bound requires d >= 1");
    double jsum = 0.0;
    for (int j = 1; j <= d; ++j) jsum += std::pow(static_cast<double>(j) / d, q);
    double b = std::exp(std::lgamma(q + 1.0) + std::lgamma(d + 1.0) - std::lgamma(q + d + 1.0)) * jsum;
    double den = (q + d + 1.0) - (d + 2.0) * b;
    if (!(den > 0.0)) throw std::logic_error("ratio bound denominator must be positive");
    return (q - 1.0) * b / den;
}

TrendReport check_sufficient_condition(const FunctionSpec& f, MuKind mu, const Vec& v0,
                                       const std::vector<double>& u_values, double threshold,
                                       const NumericOptions& opt) {
    validate_u_values(u_values);
    if (!(threshold > 0.0)) throw std::invalid_argument("trend check: threshold must be positive");
    TrendReport report;
    report.threshold = threshold;
    for (double u : u_values) {
        BoxDomain box(v0, u);
        TrendRow row;
        row.u = u;
        if (scaled_lane_applies(f, Domain(box))) {
            ScaledParts parts = std::holds_alternative<ExpLinearForm>(f)
                                    ? exp_box_scaled(std::get<ExpLinearForm>(f), mu, box)
                                    : power_box_scaled(std::get<PowerLinearForm>(f), mu, box, opt);
            row.r = static_cast<double>(parts.int_f / parts.int_mu);
            row.method = parts.f_method;
        } else {
            IntegralResult fint = integrate(f, Domain(box), opt);
            double imu = checked_mu_integral(f, Domain(box), mu);
            row.r = fint.value / imu;
            row.method = fint.method;
        }
        report.rows.push_back(row);
    }
    report.decreasing = true;
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
        if (!(report.rows[i + 1].r < report.rows[i].r)) report.decreasing = false;
    double last = report.rows.back().r;
    report.satisfied = report.decreasing && last < threshold;
    if (report.satisfied)
        report.verdict = "condition empirically satisfied: r(u) decreasing with r at the largest u "
                         "below threshold (evidence, not proof)";
    else if (!report.decreasing)
        report.verdict = "condition not satisfied: r(u) is not decreasing over the sweep";
    else
        report.verdict =
            "condition not satisfied: r(u) stays above the threshold, suggesting a positive limit";
    return report;
}

}  // namespace pgap
