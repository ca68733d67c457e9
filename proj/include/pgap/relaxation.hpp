#pragma once

#include <string>
#include <vector>

#include "pgap/envelope.hpp"
#include "pgap/functions.hpp"
#include "pgap/geometry.hpp"
#include "pgap/integration.hpp"
#include "pgap/rational.hpp"

namespace pgap {

// The on/off disjunction over a domain Q couples x with an indicator z: either
// z = 0 and x = 0, or z = 1, x in Q, and y >= f(x). The perspective relaxation
// P bounds y below by the perspective z f(x/z) on the scaled copies z Q; the
// naive relaxation P0 keeps the weaker bound y >= f(x). Both are capped above
// by a concave mu >= f so the lifted bodies have finite volume:
//   vol(P)  = (1/(d+2)) (int_Q mu - int_Q f)
//   vol(P0) = (1/(d+2)) int_Q mu - int_0^1 z^d int_Q f(z x) dx dz
// The difference delta = vol(P0) - vol(P) does not depend on mu.

struct RelaxationReport {
    double vol_perspective;
    double vol_naive;
    double delta;
    double ratio;  // delta / vol_naive
    MuKind mu;
    // True when the raw volumes exceed the double range: the volume fields
    // hold infinities, while delta ratios are still exact because every
    // ingredient is evaluated with the dominant exponential factored out.
    bool asymptotic;
    std::vector<std::string> formula_trace;
};

double vol_perspective(const FunctionSpec& f, MuKind mu, const Domain& dom,
                       const NumericOptions& opt = {});
double vol_naive(const FunctionSpec& f, MuKind mu, const Domain& dom,
                 const NumericOptions& opt = {});

// delta = vol_naive - vol_perspective; mu cancels, so none is taken.
double cutoff_amount(const FunctionSpec& f, const Domain& dom, const NumericOptions& opt = {});

// For q-homogeneous f the z-integral collapses and
// delta = (q-1)/((d+2)(q+d+1)) int_dom f.
double cutoff_amount_homogeneous(const FunctionSpec& f, const Domain& dom,
                                 const NumericOptions& opt = {});

// Closed form for the exponential family on a box (c > 0).
double cutoff_amount_exp_box(const ExpLinearForm& f, const BoxDomain& box);

double cutoff_ratio(const FunctionSpec& f, MuKind mu, const Domain& dom,
                    const NumericOptions& opt = {});

// All of the above in one pass. For boxes the exponential and power families
// are evaluated in scaled form, so the ratio survives u far beyond the point
// where the volumes overflow.
RelaxationReport analyze(const FunctionSpec& f, MuKind mu, const Domain& dom,
                         const NumericOptions& opt = {});

// Exact lane for integer-exponent power forms on rational boxes.
struct ExactPowerReport {
    Rational vol_perspective;
    Rational vol_naive;
    Rational delta;
    Rational ratio;
};
ExactPowerReport exact_power_box_report(const std::vector<Rational>& c, int q,
                                        const std::vector<Rational>& v0, const Rational& u,
                                        MuKind mu);

struct SweepRow {
    double u;
    double vol_perspective;
    double vol_naive;
    double delta;
    double ratio;
    double scaled_ratio;  // u^d * ratio for the exponential family, ratio otherwise
    double theoretical;   // applicable limit or bound, NaN when none applies
    bool asymptotic;
};

// One analyze() per u over the boxes v0 + u[0,1]^d, with the applicable
// theoretical constant attached.
std::vector<SweepRow> ratio_sweep(const FunctionSpec& f, MuKind mu, const Vec& v0,
                                  const std::vector<double>& u_values,
                                  const NumericOptions& opt = {});

// Large-u limit of u^d * ratio for the exponential family: (d+1)/prod(c) when
// mu is the concave envelope; one (d+1)-th of that for the constant bound.
double exp_scaled_ratio_limit(const Vec& c, MuKind mu);

// Lower bound on the limiting ratio for power forms with the constant bound:
// (q-1) B / ((q+d+1) - (d+2) B) with B = q! d!/ (q+d)! * sum_j (j/d)^q.
double cx_rat_lower_bound(double q, int d);

struct TrendRow {
    double u;
    double r;  // int_Q f / int_Q mu
    Method method;
};

struct TrendReport {
    std::vector<TrendRow> rows;
    bool decreasing;
    double threshold;
    bool satisfied;  // decreasing and r at the largest u below threshold
    std::string verdict;
};

// Empirical check of the vanishing-ratio sufficient condition: r(u) -> 0
// implies the cut-off ratio tends to 0. A decreasing trend ending below the
// threshold is evidence, not proof, and the verdict says so.
TrendReport check_sufficient_condition(const FunctionSpec& f, MuKind mu, const Vec& v0,
                                       const std::vector<double>& u_values,
                                       double threshold = 0.05,
                                       const NumericOptions& opt = {});

}  // namespace pgap
