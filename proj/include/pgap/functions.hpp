#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "pgap/geometry.hpp"

namespace pgap {

// f(x) = (c.x)^q with q >= 1. Positively homogeneous of degree q.
struct PowerLinearForm {
    Vec c;
    double q;

    PowerLinearForm(Vec coeffs, double degree);
    double operator()(const Vec& x) const;
};

// f(x) = exp(c.x) - 1. Vanishes at the origin; not homogeneous.
struct ExpLinearForm {
    Vec c;

    explicit ExpLinearForm(Vec coeffs);
    double operator()(const Vec& x) const;
};

// f(x) = g(c.x) with g(t) = (t+1)^ln(t+1) - 1 = exp(ln(t+1)^2) - 1. Grows
// faster than any polynomial but slower than any exponential; the relaxation
// gap for this family has no closed form, so it exercises the numeric
// fallbacks.
struct SuperPolyForm {
    Vec c;

    explicit SuperPolyForm(Vec coeffs);
    double operator()(const Vec& x) const;
};

using FunctionSpec = std::variant<PowerLinearForm, ExpLinearForm, SuperPolyForm>;

double evaluate(const FunctionSpec& f, const Vec& x);
int function_dim(const FunctionSpec& f);
const Vec& coefficients(const FunctionSpec& f);
bool has_zero_coefficient(const FunctionSpec& f);

// Degree q for positively homogeneous members, nullopt otherwise.
std::optional<double> homogeneity_degree(const FunctionSpec& f);

// g(t) = exp(ln(t+1)^2) - 1 for t >= 0. Throws std::range_error once the
// result overflows double.
double superpoly_g(double t);

// The cell-sum formulas divide by sums of c over nonempty subsets, so they
// require every such sum to stay away from zero ("generic" coefficients).
// A failure reports one offending subset.
struct GenericityResult {
    bool ok;
    std::vector<int> subset;  // meaningful when !ok
    double sum;               // its (near-zero) sum
};

GenericityResult check_genericity(const Vec& c, double rel_tol = 1e-9);
void require_generic(const Vec& c, double rel_tol = 1e-9);  // throws std::domain_error

// Checks f(x) + f(y) <= f(min(x,y)) + f(max(x,y)) (componentwise min/max)
// over all vertex pairs of the box. For these families it holds whenever
// c >= 0; the check guards the envelope construction.
bool is_supermodular_on_vertices(const FunctionSpec& f, const BoxDomain& box);

// Strict positivity of every coefficient; the large-box asymptotics divide
// by the product of the entries of c.
void require_positive_coefficients(const Vec& c);

}  // namespace pgap
