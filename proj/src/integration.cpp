#include "pgap/integration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "pgap/parallel.hpp"
#include "pgap/quadrature.hpp"
#include "pgap/rng.hpp"

namespace pgap {

const char* method_name(Method m) {
    switch (m) {
        case Method::multinomial: return "multinomial";
        case Method::triangulation: return "triangulation_brion";
        case Method::product_formula: return "product_formula";
        case Method::subset_expansion: return "subset_expansion";
        case Method::homogeneous_shortcut: return "homogeneous_shortcut";
        case Method::quadrature: return "quadrature";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::range_error(std::string(what) + " overflows double");
}

long long composition_count(int q, int slots) {
    // C(q + slots - 1, slots - 1), saturating
    long double r = 1.0L;
    for (int i = 1; i < slots; ++i) r = r * (q + i) / i;
    return r > 4e6L ? (1LL << 62) : static_cast<long long>(r + 0.5L);
}

// Enumerates alpha with sum(alpha) = remaining over slots [slot, end) and
// applies fn to the completed weight product.
template <class Term, class Fn>
void for_each_composition(int slot, int slots, int remaining, Term partial,
                          const std::function<Term(int, int)>& weight, Fn&& fn) {
    if (slot == slots - 1) {
        fn(partial * weight(slot, remaining));
        return;
    }
    for (int a = 0; a <= remaining; ++a)
        for_each_composition(slot + 1, slots, remaining - a, Term(partial * weight(slot, a)),
                             weight, fn);
}

}  // namespace

Rational integrate_power_multinomial_exact(const std::vector<Rational>& c, int q,
                                           const Rational& s) {
    int n = static_cast<int>(c.size());
    if (n < 1) throw std::invalid_argument("multinomial: empty coefficient vector");
    if (q < 1) throw std::invalid_argument("multinomial: exponent must be >= 1");
    if (s < 0) throw std::invalid_argument("multinomial: shift must be >= 0");
    if (composition_count(q, n + 1) > 4000000LL)
        throw std::invalid_argument("multinomial: too many compositions, use another method");
    // (c.y + s)^q expands into q!/(prod alpha_j! * a!) c^alpha s^a terms with
    // |alpha| + a = q; integrating y^alpha contributes 1/prod(alpha_j + 1).
    std::vector<std::vector<Rational>> w(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        Rational base = j < n ? c[static_cast<std::size_t>(j)] : s;
        Rational p = 1;
        for (int a = 0; a <= q; ++a) {
            BigInt fact = factorial_big(a);
            if (j < n) fact *= a + 1;
            w[static_cast<std::size_t>(j)].push_back(p / Rational(fact));
            p *= base;
        }
    }
    Rational total = 0;
    std::function<Rational(int, int)> weight = [&](int slot, int a) {
        return w[static_cast<std::size_t>(slot)][static_cast<std::size_t>(a)];
    };
    for_each_composition<Rational>(0, n + 1, q, Rational(1), weight,
                                   [&](const Rational& term) { total += term; });
    return Rational(factorial_big(q)) * total;
}

double integrate_power_multinomial(const Vec& c, int q, double s) {
    int n = static_cast<int>(c.size());
    if (n < 1) throw std::invalid_argument("multinomial: empty coefficient vector");
    if (q < 1) throw std::invalid_argument("multinomial: exponent must be >= 1");
    if (s < 0) throw std::invalid_argument("multinomial: shift must be >= 0");
    if (composition_count(q, n + 1) > 4000000LL)
        throw std::invalid_argument("multinomial: too many compositions, use another method");
    std::vector<std::vector<long double>> w(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        long double base = j < n ? static_cast<long double>(c[j]) : static_cast<long double>(s);
        long double p = 1.0L, fact = 1.0L;
        for (int a = 0; a <= q; ++a) {
            long double denom = j < n ? fact * (a + 1) : fact;
            w[static_cast<std::size_t>(j)].push_back(p / denom);
            p *= base;
            fact *= a + 1;
        }
    }
    long double total = 0.0L;
    std::function<long double(int, int)> weight = [&](int slot, int a) {
        return w[static_cast<std::size_t>(slot)][static_cast<std::size_t>(a)];
    };
    for_each_composition<long double>(0, n + 1, q, 1.0L, weight,
                                      [&](long double term) { total += term; });
    long double qfact = 1.0L;
    for (int k = 2; k <= q; ++k) qfact *= k;
    return static_cast<double>(qfact * total);
}

double integrate_power_triangulation(const Vec& c, double q, double s,
                                     const NumericOptions& opt) {
    int n = static_cast<int>(c.size());
    if (n < 1) throw std::invalid_argument("triangulation integral: empty coefficient vector");
    if (!(q >= 1.0)) throw std::invalid_argument("triangulation integral: exponent must be >= 1");
    if (s < 0.0) throw std::invalid_argument("triangulation integral: shift must be >= 0");
    require_generic(c, opt.genericity_tol);
    KuhnTriangulation tri(n, opt.triangulation_cap);
    const long long chunk = 5040;
    auto partials = map_chunks<long double>(tri.size(), chunk, [&](long long b, long long e) {
        std::vector<int> perm = permutation_unrank(n, b);
        std::vector<long double> suffix(static_cast<std::size_t>(n) + 1);
        long double acc = 0.0L;
        for (long long r = b; r < e; ++r) {
            suffix[0] = 0.0L;
            for (int j = 1; j <= n; ++j)
                suffix[static_cast<std::size_t>(j)] =
                    suffix[static_cast<std::size_t>(j - 1)] +
                    static_cast<long double>(c[perm[static_cast<std::size_t>(n - j)]]);
            long double cell = 0.0L;
            for (int j = 0; j <= n; ++j) {
                long double arg = suffix[static_cast<std::size_t>(j)] + static_cast<long double>(s);
                long double num = arg > 0.0L ? powl(arg, static_cast<long double>(q + n)) : 0.0L;
                long double den = 1.0L;
                for (int k = 0; k <= n; ++k)
                    if (k != j)
                        den *= suffix[static_cast<std::size_t>(j)] -
                               suffix[static_cast<std::size_t>(k)];
                cell += num / den;
            }
            acc += cell;
            std::next_permutation(perm.begin(), perm.end());
        }
        return acc;
    });
    long double sum = 0.0L;
    for (long double p : partials) sum += p;
    long double factor = expl(static_cast<long double>(std::lgamma(q + 1.0) - std::lgamma(q + n + 1.0)));
    return static_cast<double>(factor * sum);
}

AllOnePower integrate_all_one_power(int n, int q) {
    if (n < 1 || q < 1) throw std::invalid_argument("all-one power: need n >= 1 and q >= 1");
    std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));
    AllOnePower r;
    r.value = integrate_power_multinomial_exact(ones, q);
    BigInt jsum = 0;
    for (int j = 1; j <= n; ++j) {
        BigInt jp = 1;
        for (int k = 0; k < q; ++k) jp *= j;
        jsum += jp;
    }
    r.lower_bound = Rational(factorial_big(q) * factorial_big(n) * jsum) /
                    Rational(factorial_big(q + n + 1));
    return r;
}

double power_unit_lower_bound(const Vec& c, double q, double s) {
    int d = static_cast<int>(c.size());
    if (d < 1) throw std::invalid_argument("lower bound: empty coefficient vector");
    if (!(q >= 1.0) || s < 0.0) throw std::invalid_argument("lower bound: need q >= 1 and s >= 0");
    double jsum = 0.0;
    for (int j = 1; j <= d; ++j) jsum += std::pow(static_cast<double>(j) / d, q);
    double lfact = std::lgamma(q + 1.0) + std::lgamma(d + 1.0) - std::lgamma(q + d + 1.0);
    return std::exp(lfact) * jsum * std::pow(c.sum() + s, q);
}

double power_box_lower_bound(const Vec& c, double q, const Vec& v0, double u) {
    if (c.size() != v0.size()) throw std::invalid_argument("lower bound: dimension mismatch");
    if (!(u > 0.0)) throw std::invalid_argument("lower bound: u must be positive");
    double s = c.dot(v0) / u;
    int d = static_cast<int>(c.size());
    return std::pow(u, q + d) * power_unit_lower_bound(c, q, s);
}

double expm1_over(double t) {
    if (std::abs(t) < 1e-4) return 1.0 + t * (0.5 + t * (1.0 / 6.0 + t / 24.0));
    return std::expm1(t) / t;
}

long double expm1_over_l(long double t) {
    if (fabsl(t) < 1e-4L) return 1.0L + t * (0.5L + t * (1.0L / 6.0L + t / 24.0L));
    return expm1l(t) / t;
}

double integrate_exp_unit_cube_product(const Vec& c) {
    long double p = 1.0L;
    for (int j = 0; j < c.size(); ++j) p *= expm1_over_l(static_cast<long double>(c[j]));
    return static_cast<double>(p);
}

double triangulation_exp_sum(const Vec& c, const NumericOptions& opt) {
    int n = static_cast<int>(c.size());
    if (n < 1) throw std::invalid_argument("cell sum: empty coefficient vector");
    require_generic(c, opt.genericity_tol);
    KuhnTriangulation tri(n, opt.triangulation_cap);
    const long long chunk = 5040;
    auto partials = map_chunks<long double>(tri.size(), chunk, [&](long long b, long long e) {
        std::vector<int> perm = permutation_unrank(n, b);
        std::vector<long double> suffix(static_cast<std::size_t>(n) + 1);
        long double acc = 0.0L;
        for (long long r = b; r < e; ++r) {
            suffix[0] = 0.0L;
            for (int j = 1; j <= n; ++j)
                suffix[static_cast<std::size_t>(j)] =
                    suffix[static_cast<std::size_t>(j - 1)] +
                    static_cast<long double>(c[perm[static_cast<std::size_t>(n - j)]]);
            long double cell = 0.0L;
            for (int j = 0; j <= n; ++j) {
                long double den = 1.0L;
                for (int k = 0; k <= n; ++k)
                    if (k != j)
                        den *= suffix[static_cast<std::size_t>(j)] -
                               suffix[static_cast<std::size_t>(k)];
                cell += expl(suffix[static_cast<std::size_t>(j)]) / den;
            }
            acc += cell;
            std::next_permutation(perm.begin(), perm.end());
        }
        return acc;
    });
    long double sum = 0.0L;
    for (long double p : partials) sum += p;
    return static_cast<double>(sum);
}

double exp_z_integral_box(const Vec& c, const Vec& v0, double u) {
    int d = static_cast<int>(c.size());
    if (d < 1 || v0.size() != d) throw std::invalid_argument("z-integral: dimension mismatch");
    if (!(u > 0.0)) throw std::invalid_argument("z-integral: u must be positive");
    require_positive_coefficients(c);
    if (d > 20) throw std::invalid_argument("z-integral: subset expansion cap is 20 coordinates");
    long double cv0 = 0.0L;
    long double cprod = 1.0L;
    for (int j = 0; j < d; ++j) {
        cv0 += static_cast<long double>(c[j]) * static_cast<long double>(v0[j]);
        cprod *= static_cast<long double>(c[j]);
    }
    std::uint32_t total = 1u << d;
    std::vector<long double> usum(total, 0.0L);
    for (std::uint32_t m = 1; m < total; ++m) {
        std::uint32_t low = m & (m - 1);
        int bit = std::countr_zero(m);
        usum[m] = usum[low] + static_cast<long double>(u) * static_cast<long double>(c[bit]);
    }
    long double acc = 0.0L;
    for (std::uint32_t m = 0; m < total; ++m) {
        long double a = cv0 + usum[m];
        long double term = expm1_over_l(a);
        acc += ((d - std::popcount(m)) & 1) ? -term : term;
    }
    long double result = acc / cprod - powl(static_cast<long double>(u), d) / (d + 1);
    double out = static_cast<double>(result);
    require_finite(out, "z-integral");
    return out;
}

// ---- Monte Carlo ----------------------------------------------------------

namespace {

struct McAccum {
    long double sum = 0.0L;
    long double sumsq = 0.0L;
};

IntegralResult mc_reduce(long long samples, std::uint64_t seed, double scale,
                         const std::function<double(CounterRng&)>& sample_value) {
    if (samples < 1) throw std::invalid_argument("monte carlo: need at least one sample");
    const long long chunk = 65536;
    auto partials = map_chunks<McAccum>(samples, chunk, [&](long long b, long long e) {
        McAccum a;
        for (long long i = b; i < e; ++i) {
            CounterRng rng(seed, static_cast<std::uint64_t>(i));
            double v = sample_value(rng);
            a.sum += v;
            a.sumsq += static_cast<long double>(v) * v;
        }
        return a;
    });
    long double sum = 0.0L, sumsq = 0.0L;
    for (const auto& p : partials) {
        sum += p.sum;
        sumsq += p.sumsq;
    }
    double mean = static_cast<double>(sum / samples);
    double var = static_cast<double>(std::max(0.0L, sumsq / samples - (sum / samples) * (sum / samples)));
    double se = scale * std::sqrt(var / static_cast<double>(samples));
    return {scale * mean, Method::monte_carlo, se};
}

Vec sample_point(const Domain& dom, CounterRng& rng) {
    if (const auto* box = std::get_if<BoxDomain>(&dom)) {
        Vec y(box->dim());
        for (int j = 0; j < y.size(); ++j) y[j] = rng.next_unit();
        return box->map_unit(y);
    }
    if (const auto* zono = std::get_if<ZonotopeDomain>(&dom)) {
        Vec t(zono->param_dim());
        for (int j = 0; j < t.size(); ++j) t[j] = rng.next_unit();
        return zono->map_unit(t);
    }
    const auto& simplex = std::get<SimplexDomain>(dom);
    int d = simplex.dim();
    // normalized exponential spacings give a uniform barycentric point
    Vec lambda(d + 1);
    double total = 0.0;
    for (int j = 0; j <= d; ++j) {
        lambda[j] = -std::log1p(-rng.next_unit());
        total += lambda[j];
    }
    Vec x = Vec::Zero(d);
    for (int j = 0; j <= d; ++j) x += (lambda[j] / total) * simplex.vertices()[static_cast<std::size_t>(j)];
    return x;
}

}  // namespace

IntegralResult monte_carlo_integrate(const FunctionSpec& f, const Domain& dom,
                                     long long samples, std::uint64_t seed) {
    double scale = domain_volume(dom);
    return mc_reduce(samples, seed, scale,
                     [&](CounterRng& rng) { return evaluate(f, sample_point(dom, rng)); });
}

IntegralResult monte_carlo_z_integral(const FunctionSpec& f, const Domain& dom,
                                      long long samples, std::uint64_t seed) {
    double scale = domain_volume(dom);
    int d = domain_dim(dom);
    return mc_reduce(samples, seed, scale, [&](CounterRng& rng) {
        double z = rng.next_unit();
        Vec x = sample_point(dom, rng);
        return std::pow(z, d) * evaluate(f, z * x);
    });
}

// ---- quadrature fallbacks --------------------------------------------------

namespace {

template <unsigned Order>
void gauss_nodes_unit(std::vector<double>& x, std::vector<double>& w) {
    using G = boost::math::quadrature::gauss<double, Order>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    x.clear();
    w.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            x.push_back(0.5);
            w.push_back(wt[i] * 0.5);
        } else {
            x.push_back((1.0 - a[i]) * 0.5);
            w.push_back(wt[i] * 0.5);
            x.push_back((1.0 + a[i]) * 0.5);
            w.push_back(wt[i] * 0.5);
        }
    }
}

// Fixed-order tensor rule over [0,1]^d, d <= 3.
double tensor_gauss_unit(int d, int order, const std::function<double(const Vec&)>& fn) {
    std::vector<double> x, w;
    if (order <= 30)
        gauss_nodes_unit<30>(x, w);
    else
        gauss_nodes_unit<64>(x, w);
    int m = static_cast<int>(x.size());
    long double acc = 0.0L;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    Vec y(d);
    for (;;) {
        double wt = 1.0;
        for (int j = 0; j < d; ++j) {
            y[j] = x[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            wt *= w[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        }
        acc += static_cast<long double>(wt) * fn(y);
        int j = 0;
        while (j < d && ++idx[static_cast<std::size_t>(j)] == m) {
            idx[static_cast<std::size_t>(j)] = 0;
            ++j;
        }
        if (j == d) break;
    }
    return static_cast<double>(acc);
}

// Quadrature over the unit parameter cube with an error estimate from
// comparing two orders; scale carries the jacobian of the parametrization.
IntegralResult tensor_result(int d, double scale, const std::function<double(const Vec&)>& fn) {
    double lo = tensor_gauss_unit(d, 30, fn);
    double hi = tensor_gauss_unit(d, 64, fn);
    return {scale * hi, Method::quadrature, scale * std::abs(hi - lo)};
}

struct UnitParam {
    int dim;
    double scale;
    std::function<Vec(const Vec&)> map;
};

// Box and zonotope domains admit a unit-cube parametrization, simplices do not.
std::optional<UnitParam> unit_param(const Domain& dom) {
    if (const auto* box = std::get_if<BoxDomain>(&dom))
        return UnitParam{box->dim(), box->volume(), [box = *box](const Vec& y) { return box.map_unit(y); }};
    if (const auto* zono = std::get_if<ZonotopeDomain>(&dom))
        return UnitParam{zono->param_dim(), zono->jacobian(),
                         [z = *zono](const Vec& t) { return z.map_unit(t); }};
    return std::nullopt;
}

IntegralResult numeric_integrate(const FunctionSpec& f, const Domain& dom,
                                 const NumericOptions& opt) {
    auto param = unit_param(dom);
    if (param && param->dim == 1) {
        auto g = [&](double t) { return evaluate(f, param->map(Vec::Constant(1, t))); };
        QuadResult qr = integrate_gk(g, 0.0, 1.0, opt.quad_rel_tol);
        return {param->scale * qr.value, Method::quadrature, param->scale * qr.error};
    }
    if (param && param->dim <= 3)
        return tensor_result(param->dim, param->scale,
                             [&](const Vec& y) { return evaluate(f, param->map(y)); });
    return monte_carlo_integrate(f, dom, opt.mc_samples, opt.seed);
}

IntegralResult numeric_z_integral(const FunctionSpec& f, const Domain& dom,
                                  const NumericOptions& opt) {
    auto param = unit_param(dom);
    if (param && param->dim <= 3) {
        int d = param->dim;
        auto inner = [&](double z) -> double {
            if (d == 1) {
                auto g = [&](double t) { return evaluate(f, z * param->map(Vec::Constant(1, t))); };
                return integrate_gk(g, 0.0, 1.0, opt.quad_rel_tol).value;
            }
            return tensor_gauss_unit(d, 64, [&](const Vec& y) { return evaluate(f, z * param->map(y)); });
        };
        auto g = [&](double z) { return std::pow(z, d) * inner(z); };
        QuadResult qr = integrate_gk(g, 0.0, 1.0, opt.quad_rel_tol);
        return {param->scale * qr.value, Method::quadrature, param->scale * qr.error};
    }
    return monte_carlo_z_integral(f, dom, opt.mc_samples, opt.seed);
}

// ---- closed forms per family and domain ------------------------------------

bool distinct_pairwise(const std::vector<double>& t, double rel_tol) {
    double scale = 1.0;
    for (double v : t) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (std::abs(t[i] - t[j]) <= rel_tol * scale) return false;
    return true;
}

std::vector<double> vertex_dots(const Vec& c, const SimplexDomain& simplex) {
    std::vector<double> t;
    t.reserve(simplex.vertices().size());
    for (const auto& v : simplex.vertices()) t.push_back(c.dot(v));
    return t;
}

double factorial_d(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// d! vol sum_j w(t_j) / prod_{k != j} (t_j - t_k) for w = exp or a power.
long double simplex_vertex_sum(const std::vector<double>& t,
                               const std::function<long double(long double)>& w) {
    int m = static_cast<int>(t.size());
    long double acc = 0.0L;
    for (int j = 0; j < m; ++j) {
        long double den = 1.0L;
        for (int k = 0; k < m; ++k)
            if (k != j) den *= static_cast<long double>(t[static_cast<std::size_t>(j)]) -
                               static_cast<long double>(t[static_cast<std::size_t>(k)]);
        acc += w(static_cast<long double>(t[static_cast<std::size_t>(j)])) / den;
    }
    return acc;
}

void require_nonnegative_on_domain(const Vec& c, const Domain& dom) {
    // (c.x)^q and the argument checks below need c.x >= 0 everywhere; the
    // minimum of a linear form over these domains is attained at a vertex.
    double minval = 0.0;
    if (const auto* box = std::get_if<BoxDomain>(&dom)) {
        minval = c.dot(box->lower());
        for (int j = 0; j < box->dim(); ++j) minval += box->scale() * std::min(0.0, c[j]);
    } else if (const auto* zono = std::get_if<ZonotopeDomain>(&dom)) {
        Vec ct = zono->generators().transpose() * c;
        minval = c.dot(zono->offset());
        for (int j = 0; j < ct.size(); ++j) minval += std::min(0.0, ct[j]);
    } else {
        const auto& simplex = std::get<SimplexDomain>(dom);
        minval = c.dot(simplex.vertices()[0]);
        for (const auto& v : simplex.vertices()) minval = std::min(minval, c.dot(v));
    }
    if (minval < -1e-12 * std::max(1.0, c.cwiseAbs().maxCoeff()))
        throw std::domain_error("linear form c.x is negative on part of the domain");
}

IntegralResult integrate_power(const PowerLinearForm& f, const Domain& dom,
                               const NumericOptions& opt) {
    require_nonnegative_on_domain(f.c, dom);
    bool integral_q = f.q == std::floor(f.q) && f.q <= 1e9;
    int qi = integral_q ? static_cast<int>(f.q) : 0;

    if (const auto* box = std::get_if<BoxDomain>(&dom)) {
        int d = box->dim();
        double u = box->scale();
        double s = f.c.dot(box->lower()) / u;
        double scale = std::pow(u, f.q + d);
        require_finite(scale, "power integral");
        if (integral_q && composition_count(qi, d + 1) <= 4000000LL) {
            double v = scale * integrate_power_multinomial(f.c, qi, s);
            require_finite(v, "power integral");
            return {v, Method::multinomial, 0.0};
        }
        if (d <= opt.triangulation_cap && check_genericity(f.c, opt.genericity_tol).ok) {
            double v = scale * integrate_power_triangulation(f.c, f.q, s, opt);
            require_finite(v, "power integral");
            return {v, Method::triangulation, 0.0};
        }
        return numeric_integrate(FunctionSpec(f), dom, opt);
    }

    if (const auto* zono = std::get_if<ZonotopeDomain>(&dom)) {
        Vec ct = zono->generators().transpose() * f.c;
        double s = f.c.dot(zono->offset());
        int n = zono->param_dim();
        if (integral_q && composition_count(qi, n + 1) <= 4000000LL) {
            double v = zono->jacobian() * integrate_power_multinomial(ct, qi, s);
            require_finite(v, "power integral");
            return {v, Method::multinomial, 0.0};
        }
        if (n <= opt.triangulation_cap && check_genericity(ct, opt.genericity_tol).ok) {
            double v = zono->jacobian() * integrate_power_triangulation(ct, f.q, s, opt);
            require_finite(v, "power integral");
            return {v, Method::triangulation, 0.0};
        }
        return numeric_integrate(FunctionSpec(f), dom, opt);
    }

    const auto& simplex = std::get<SimplexDomain>(dom);
    std::vector<double> t = vertex_dots(f.c, simplex);
    if (!distinct_pairwise(t, opt.genericity_tol))
        return monte_carlo_integrate(FunctionSpec(f), dom, opt.mc_samples, opt.seed);
    int d = simplex.dim();
    long double sum = simplex_vertex_sum(t, [&](long double tj) {
        return tj > 0.0L ? powl(tj, static_cast<long double>(f.q + d)) : 0.0L;
    });
    double factor = factorial_d(d) * simplex.volume() *
                    std::exp(std::lgamma(f.q + 1.0) - std::lgamma(f.q + d + 1.0));
    double v = factor * static_cast<double>(sum);
    require_finite(v, "power integral");
    return {v, Method::triangulation, 0.0};
}

IntegralResult integrate_exp(const ExpLinearForm& f, const Domain& dom,
                             const NumericOptions& opt) {
    if (const auto* box = std::get_if<BoxDomain>(&dom)) {
        int d = box->dim();
        double u = box->scale();
        long double p = expl(static_cast<long double>(f.c.dot(box->lower())));
        for (int j = 0; j < d; ++j)
            p *= static_cast<long double>(u) * expm1_over_l(static_cast<long double>(u * f.c[j]));
        double v = static_cast<double>(p - powl(static_cast<long double>(u), d));
        require_finite(v, "exponential integral");
        return {v, Method::product_formula, 0.0};
    }
    if (const auto* zono = std::get_if<ZonotopeDomain>(&dom)) {
        Vec ct = zono->generators().transpose() * f.c;
        long double p = expl(static_cast<long double>(f.c.dot(zono->offset())));
        for (int j = 0; j < ct.size(); ++j) p *= expm1_over_l(static_cast<long double>(ct[j]));
        double v = zono->jacobian() * static_cast<double>(p - 1.0L);
        require_finite(v, "exponential integral");
        return {v, Method::product_formula, 0.0};
    }
    const auto& simplex = std::get<SimplexDomain>(dom);
    std::vector<double> t = vertex_dots(f.c, simplex);
    if (!distinct_pairwise(t, opt.genericity_tol))
        return monte_carlo_integrate(FunctionSpec(f), dom, opt.mc_samples, opt.seed);
    long double sum = simplex_vertex_sum(t, [](long double tj) { return expl(tj); });
    double v = factorial_d(simplex.dim()) * simplex.volume() * static_cast<double>(sum) -
               simplex.volume();
    require_finite(v, "exponential integral");
    return {v, Method::triangulation, 0.0};
}

}  // namespace

IntegralResult integrate(const FunctionSpec& f, const Domain& dom, const NumericOptions& opt) {
    if (function_dim(f) != (std::holds_alternative<ZonotopeDomain>(dom)
                                ? std::get<ZonotopeDomain>(dom).ambient_dim()
                                : domain_dim(dom)))
        throw std::invalid_argument("integrate: function and domain dimensions differ");
    if (const auto* p = std::get_if<PowerLinearForm>(&f)) return integrate_power(*p, dom, opt);
    if (const auto* e = std::get_if<ExpLinearForm>(&f)) return integrate_exp(*e, dom, opt);
    return numeric_integrate(f, dom, opt);
}

IntegralResult z_integral(const FunctionSpec& f, const Domain& dom, const NumericOptions& opt) {
    int d = domain_dim(dom);
    if (auto q = homogeneity_degree(f)) {
        IntegralResult base = integrate(f, dom, opt);
        double div = *q + d + 1.0;
        return {base.value / div, Method::homogeneous_shortcut, base.error_estimate / div};
    }
    if (const auto* e = std::get_if<ExpLinearForm>(&f)) {
        if (const auto* box = std::get_if<BoxDomain>(&dom)) {
            bool positive = true;
            for (int j = 0; j < e->c.size(); ++j) positive = positive && e->c[j] > 0.0;
            if (positive && d <= 20) {
                double v = exp_z_integral_box(e->c, box->lower(), box->scale());
                return {v, Method::subset_expansion, 0.0};
            }
            auto inner = [&](double z) -> long double {
                long double p = expl(static_cast<long double>(z * e->c.dot(box->lower())));
                for (int j = 0; j < d; ++j)
                    p *= static_cast<long double>(box->scale()) *
                         expm1_over_l(static_cast<long double>(z * box->scale() * e->c[j]));
                return p - powl(static_cast<long double>(box->scale()), d);
            };
            auto g = [&](double z) {
                return std::pow(z, d) * static_cast<double>(inner(z));
            };
            QuadResult qr = integrate_gk(g, 0.0, 1.0, opt.quad_rel_tol);
            require_finite(qr.value, "z-integral");
            return {qr.value, Method::quadrature, qr.error};
        }
        if (const auto* zono = std::get_if<ZonotopeDomain>(&dom)) {
            Vec ct = zono->generators().transpose() * e->c;
            double s0 = e->c.dot(zono->offset());
            auto g = [&](double z) {
                long double p = expl(static_cast<long double>(z * s0));
                for (int j = 0; j < ct.size(); ++j)
                    p *= expm1_over_l(static_cast<long double>(z * ct[j]));
                return std::pow(z, d) * zono->jacobian() * static_cast<double>(p - 1.0L);
            };
            QuadResult qr = integrate_gk(g, 0.0, 1.0, opt.quad_rel_tol);
            require_finite(qr.value, "z-integral");
            return {qr.value, Method::quadrature, qr.error};
        }
        const auto& simplex = std::get<SimplexDomain>(dom);
        std::vector<double> t = vertex_dots(e->c, simplex);
        if (distinct_pairwise(t, opt.genericity_tol)) {
            double fd = factorial_d(d);
            double vol = simplex.volume();
            auto g = [&](double z) {
                long double sum = simplex_vertex_sum(
                    t, [&](long double tj) { return expl(static_cast<long double>(z) * tj); });
                return vol * (fd * static_cast<double>(sum) - std::pow(z, d));
            };
            QuadResult qr = integrate_gk(g, 0.0, 1.0, opt.quad_rel_tol);
            require_finite(qr.value, "z-integral");
            return {qr.value, Method::quadrature, qr.error};
        }
        return monte_carlo_z_integral(f, dom, opt.mc_samples, opt.seed);
    }
    return numeric_z_integral(f, dom, opt);
}

}  // namespace pgap
