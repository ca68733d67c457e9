#pragma once

#include <cstdint>

#include "pgap/functions.hpp"
#include "pgap/geometry.hpp"
#include "pgap/rational.hpp"

namespace pgap {

enum class Method {
    multinomial,          // composition sum for integer exponents
    triangulation,        // per-cell simplex sums over the coordinate-order cells
    product_formula,      // separable exponential integral
    subset_expansion,     // alternating vertex sum for the exponential z-integral
    homogeneous_shortcut, // z-integral of a homogeneous function collapses to one integral
    quadrature,           // adaptive or tensor-product quadrature
    monte_carlo,          // uniform sampling
};

const char* method_name(Method m);

struct IntegralResult {
    double value;
    Method method;
    double error_estimate;  // 0 for closed forms, estimated absolute error otherwise
};

// Knobs for the numeric fallbacks. Defaults reproduce the documented results
// bit for bit.
struct NumericOptions {
    long long mc_samples = 1'000'000;
    std::uint64_t seed = 42;
    double quad_rel_tol = 1e-10;
    double genericity_tol = 1e-9;
    int triangulation_cap = KuhnTriangulation::kDefaultCap;
};

// ---- linear-form powers over the unit cube -------------------------------

// integral of (c.y + s)^q over [0,1]^n for integer q >= 1, via the
// multinomial expansion. Exact when the inputs are rational.
Rational integrate_power_multinomial_exact(const std::vector<Rational>& c, int q,
                                           const Rational& s = Rational(0));
double integrate_power_multinomial(const Vec& c, int q, double s = 0.0);

// Same integral for real q >= 1 via the closed form on each coordinate-order
// cell: on the cell with suffix sums s_0 < ... < s_n the integral is
// gamma(q+1)/gamma(q+n+1) * sum_j (s_j + s)^(q+n) / prod_{k != j} (s_j - s_k),
// summed over all n! cells. Requires generic c (distinct subset sums) and
// s >= 0. The alternating sums are accumulated in extended precision because
// the terms cancel to many orders.
double integrate_power_triangulation(const Vec& c, double q, double s = 0.0,
                                     const NumericOptions& opt = {});

// integral of (sum_j y_j)^q over [0,1]^n together with the closed-form lower
// bound q! n!/(q+n+1)! * sum_{j=1..n} j^q obtained by bounding the integral
// over each coordinate-order cell separately.
struct AllOnePower {
    Rational value;
    Rational lower_bound;
};
AllOnePower integrate_all_one_power(int n, int q);

// Lower bound gamma(q+1) d!/gamma(q+d+1) * sum_{j=1..d} (j/d)^q * (c.1 + s)^q
// on the unit-cube integral of (c.y + s)^q. Scaling by u^(q+d) bounds the
// integral over v0 + u[0,1]^d with s = c.v0/u.
double power_unit_lower_bound(const Vec& c, double q, double s);
double power_box_lower_bound(const Vec& c, double q, const Vec& v0, double u);

// ---- exponentials --------------------------------------------------------

// (e^t - 1)/t, continuous through t = 0.
double expm1_over(double t);
long double expm1_over_l(long double t);

// integral of e^(c.y) over [0,1]^n as the separable product.
double integrate_exp_unit_cube_product(const Vec& c);

// The same integral as the sum over all n! coordinate-order cells of
// sum_j e^(s_j) / prod_{k != j} (s_j - s_k). Agreement with the product form
// exercises the whole cell-sum machinery; requires generic c.
double triangulation_exp_sum(const Vec& c, const NumericOptions& opt = {});

// Closed-form z-integral int_0^1 z^d int_Q (e^(z c.x) - 1) dx dz for the box
// Q = v0 + u[0,1]^d via the alternating vertex-sum expansion. Requires
// strictly positive c and d <= 20 (the expansion has 2^d terms).
double exp_z_integral_box(const Vec& c, const Vec& v0, double u);

// ---- dispatch over families and domains ----------------------------------

// integral of f over dom. Picks the closed form for the family/domain pair
// when one exists and falls back to quadrature (d <= 3) or Monte Carlo.
// Throws std::range_error if the value overflows double.
IntegralResult integrate(const FunctionSpec& f, const Domain& dom, const NumericOptions& opt = {});

// int_0^1 z^d int_dom f(z x) dx dz with d the intrinsic dimension of dom;
// this is the correction term of the naive relaxation volume.
IntegralResult z_integral(const FunctionSpec& f, const Domain& dom, const NumericOptions& opt = {});

// Uniform-sampling estimate of the integral of f over dom, with standard
// error. Sample i draws from a counter-based stream keyed by (seed, i), so
// the estimate does not depend on thread count.
IntegralResult monte_carlo_integrate(const FunctionSpec& f, const Domain& dom,
                                     long long samples, std::uint64_t seed);
IntegralResult monte_carlo_z_integral(const FunctionSpec& f, const Domain& dom,
                                      long long samples, std::uint64_t seed);

}  // namespace pgap
