#include "pgap/functions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pgap {

namespace {

void require_admissible_coefficients(const Vec& c, const char* family) {
    if (c.size() == 0) throw std::invalid_argument(std::string(family) + ": empty coefficient vector");
    bool any_positive = false;
    for (int i = 0; i < c.size(); ++i) {
        if (c[i] < 0.0)
            throw std::invalid_argument(std::string(family) + ": coefficients must be nonnegative");
        if (c[i] > 0.0) any_positive = true;
    }
    if (!any_positive)
        throw std::invalid_argument(std::string(family) + ": coefficient vector must be nonzero");
}

}  // namespace

PowerLinearForm::PowerLinearForm(Vec coeffs, double degree) : c(std::move(coeffs)), q(degree) {
    require_admissible_coefficients(c, "power form");
    if (!(q >= 1.0)) throw std::invalid_argument("power form: exponent must be >= 1");
}

double PowerLinearForm::operator()(const Vec& x) const {
    double t = c.dot(x);
    if (t < 0.0) throw std::domain_error("power form: negative argument to fractional power");
    return std::pow(t, q);
}

ExpLinearForm::ExpLinearForm(Vec coeffs) : c(std::move(coeffs)) {
    require_admissible_coefficients(c, "exponential form");
}

double ExpLinearForm::operator()(const Vec& x) const { return std::expm1(c.dot(x)); }

SuperPolyForm::SuperPolyForm(Vec coeffs) : c(std::move(coeffs)) {
    require_admissible_coefficients(c, "superpolynomial form");
}

double SuperPolyForm::operator()(const Vec& x) const { return superpoly_g(c.dot(x)); }

double superpoly_g(double t) {
    if (t < 0.0) throw std::domain_error("superpoly: argument must be >= 0");
    double l = std::log1p(t);
    double e = l * l;
    // exp overflows slightly above 709.78
    if (e > 709.0) throw std::range_error("superpoly: value overflows double");
    return std::expm1(e);
}

double evaluate(const FunctionSpec& f, const Vec& x) {
    return std::visit([&](const auto& fn) { return fn(x); }, f);
}

int function_dim(const FunctionSpec& f) {
    return static_cast<int>(coefficients(f).size());
}

const Vec& coefficients(const FunctionSpec& f) {
    return std::visit([](const auto& fn) -> const Vec& { return fn.c; }, f);
}

bool has_zero_coefficient(const FunctionSpec& f) {
    const Vec& c = coefficients(f);
    for (int i = 0; i < c.size(); ++i)
        if (c[i] == 0.0) return true;
    return false;
}

std::optional<double> homogeneity_degree(const FunctionSpec& f) {
    if (const auto* p = std::get_if<PowerLinearForm>(&f)) return p->q;
    return std::nullopt;
}

GenericityResult check_genericity(const Vec& c, double rel_tol) {
    int n = static_cast<int>(c.size());
    if (n > 20) throw std::invalid_argument("genericity check: too many coefficients (cap 20)");
    double tol = rel_tol * c.cwiseAbs().maxCoeff();
    std::uint32_t total = 1u << n;
    // The cell-sum denominators are sums of c over contiguous runs of a
    // coordinate order, and every nonempty subset appears as such a run in
    // some order, so the condition is that no nonempty subset sum vanishes.
    std::vector<double> sums(total, 0.0);
    std::uint32_t worst = 0;
    for (std::uint32_t m = 1; m < total; ++m) {
        std::uint32_t low = m & (m - 1);
        int bit = std::countr_zero(m);
        sums[m] = sums[low] + c[bit];
        if (worst == 0 || std::abs(sums[m]) < std::abs(sums[worst])) worst = m;
    }
    if (std::abs(sums[worst]) > tol) return GenericityResult{true, {}, 0.0};
    GenericityResult r;
    r.ok = false;
    r.sum = sums[worst];
    for (int j = 0; j < n; ++j)
        if (worst & (1u << j)) r.subset.push_back(j);
    return r;
}

void require_generic(const Vec& c, double rel_tol) {
    GenericityResult r = check_genericity(c, rel_tol);
    if (r.ok) return;
    std::ostringstream msg;
    msg << "coefficients are degenerate: the subset {";
    for (std::size_t i = 0; i < r.subset.size(); ++i) msg << (i ? "," : "") << r.subset[i];
    msg << "} sums to " << r.sum << ", within tolerance of zero";
    throw std::domain_error(msg.str());
}

bool is_supermodular_on_vertices(const FunctionSpec& f, const BoxDomain& box) {
    int d = box.dim();
    if (d != function_dim(f))
        throw std::invalid_argument("supermodularity check: dimension mismatch");
    if (d > 12) throw std::invalid_argument("supermodularity check: dimension cap is 12");
    std::uint32_t total = 1u << d;
    std::vector<double> val(total);
    for (std::uint32_t m = 0; m < total; ++m) val[m] = evaluate(f, box.vertex(m));
    double scale = std::max(1.0, std::abs(val[total - 1]));
    for (std::uint32_t a = 0; a < total; ++a)
        for (std::uint32_t b = a + 1; b < total; ++b) {
            if ((a | b) == a || (a | b) == b) continue;  // comparable pairs are trivial
            double lhs = val[a] + val[b];
            double rhs = val[a & b] + val[a | b];
            if (lhs > rhs + 1e-12 * scale) return false;
        }
    return true;
}

void require_positive_coefficients(const Vec& c) {
    for (int i = 0; i < c.size(); ++i)
        if (!(c[i] > 0.0))
            throw std::domain_error("operation requires strictly positive coefficients, entry " +
                                    std::to_string(i) + " is not positive");
}

}  // namespace pgap
