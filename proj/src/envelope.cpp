#include "pgap/envelope.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace pgap {

namespace {

// max_dom c.x for the increasing families; attained at a vertex.
double max_linear_form(const Vec& c, const Domain& dom) {
    if (const auto* box = std::get_if<BoxDomain>(&dom)) {
        double m = c.dot(box->lower());
        for (int j = 0; j < box->dim(); ++j) m += box->scale() * std::max(0.0, c[j]);
        return m;
    }
    if (const auto* zono = std::get_if<ZonotopeDomain>(&dom)) {
        Vec ct = zono->generators().transpose() * c;
        double m = c.dot(zono->offset());
        for (int j = 0; j < ct.size(); ++j) m += std::max(0.0, ct[j]);
        return m;
    }
    const auto& simplex = std::get<SimplexDomain>(dom);
    double m = c.dot(simplex.vertices()[0]);
    for (const auto& v : simplex.vertices()) m = std::max(m, c.dot(v));
    return m;
}

double apply_scalar_profile(const FunctionSpec& f, double t) {
    if (const auto* p = std::get_if<PowerLinearForm>(&f)) return std::pow(t, p->q);
    if (std::holds_alternative<ExpLinearForm>(f)) return std::expm1(t);
    return superpoly_g(t);
}

// sum over vertex masks of w(|S|) * g(vertex value), for a supermodular
// profile over a unit-cube parametrization.
double subset_weighted_sum(int d, const std::function<double(std::uint32_t)>& vertex_value) {
    if (d > 20) throw std::invalid_argument("envelope integral: vertex sum cap is 20 coordinates");
    std::vector<double> inv_weight(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
        double binom = 1.0;
        for (int i = 1; i <= k; ++i) binom = binom * (d - k + i) / i;
        inv_weight[static_cast<std::size_t>(k)] = (d + 1.0) * binom;
    }
    long double acc = 0.0L;
    std::uint32_t total = 1u << d;
    for (std::uint32_t m = 0; m < total; ++m)
        acc += static_cast<long double>(vertex_value(m)) /
               static_cast<long double>(inv_weight[static_cast<std::size_t>(std::popcount(m))]);
    return static_cast<double>(acc);
}

}  // namespace

ConstantBound constant_bound(const FunctionSpec& f, const Domain& dom) {
    double t = max_linear_form(coefficients(f), dom);
    return ConstantBound{apply_scalar_profile(f, t)};
}

PiecewiseLinearEnvelope::PiecewiseLinearEnvelope(BoxDomain box, std::vector<EnvelopeCell> cells)
    : box_(std::move(box)), cells_(std::move(cells)) {}

double PiecewiseLinearEnvelope::value(const Vec& x) const {
    int d = box_.dim();
    if (x.size() != d) throw std::invalid_argument("envelope: point dimension mismatch");
    Vec y = (x - box_.lower()) / box_.scale();
    for (int j = 0; j < d; ++j)
        if (y[j] < -1e-12 || y[j] > 1.0 + 1e-12)
            throw std::domain_error("envelope: point is outside the box");
    long long rank = permutation_rank(sorted_coordinate_order(y));
    const EnvelopeCell& cell = cells_[static_cast<std::size_t>(rank)];
    return cell.gradient.dot(x) + cell.offset;
}

std::vector<Vec> PiecewiseLinearEnvelope::cell_vertices(const EnvelopeCell& cell) const {
    KuhnCell kc{cell.perm};
    std::vector<Vec> verts;
    verts.reserve(cell.perm.size() + 1);
    for (int j = 0; j <= kc.dim(); ++j) verts.push_back(box_.map_unit(kc.chain_vertex(j)));
    return verts;
}

PiecewiseLinearEnvelope concave_envelope(const FunctionSpec& f, const BoxDomain& box) {
    int d = box.dim();
    if (function_dim(f) != d) throw std::invalid_argument("envelope: dimension mismatch");
    if (!is_supermodular_on_vertices(f, box))
        throw std::domain_error("envelope: function is not supermodular on the box vertices");
    KuhnTriangulation tri(d);
    std::vector<EnvelopeCell> cells;
    cells.reserve(static_cast<std::size_t>(tri.size()));
    double u = box.scale();
    for (const KuhnCell& kc : tri) {
        std::vector<double> fv(static_cast<std::size_t>(d) + 1);
        for (int j = 0; j <= d; ++j) fv[static_cast<std::size_t>(j)] = evaluate(f, box.map_unit(kc.chain_vertex(j)));
        EnvelopeCell cell;
        cell.perm = kc.perm;
        cell.gradient = Vec::Zero(d);
        // chain step j flips coordinate perm[d-j], so the slope along that
        // coordinate is the corresponding divided difference
        for (int j = 1; j <= d; ++j)
            cell.gradient[kc.perm[static_cast<std::size_t>(d - j)]] =
                (fv[static_cast<std::size_t>(j)] - fv[static_cast<std::size_t>(j - 1)]) / u;
        cell.offset = fv[0] - cell.gradient.dot(box.lower());
        cells.push_back(std::move(cell));
    }
    return PiecewiseLinearEnvelope(box, std::move(cells));
}

double integrate_envelope(const FunctionSpec& f, const BoxDomain& box) {
    int d = box.dim();
    if (function_dim(f) != d) throw std::invalid_argument("envelope integral: dimension mismatch");
    if (d <= 12 && !is_supermodular_on_vertices(f, box))
        throw std::domain_error("envelope integral: function is not supermodular on the box vertices");
    double sum = subset_weighted_sum(d, [&](std::uint32_t m) { return evaluate(f, box.vertex(m)); });
    return box.volume() * sum;
}

Rational integrate_envelope_power_exact(const std::vector<Rational>& c, int q,
                                        const std::vector<Rational>& v0, const Rational& u) {
    int d = static_cast<int>(c.size());
    if (d < 1 || static_cast<int>(v0.size()) != d)
        throw std::invalid_argument("envelope integral: dimension mismatch");
    if (q < 1) throw std::invalid_argument("envelope integral: exponent must be >= 1");
    if (d > 20) throw std::invalid_argument("envelope integral: vertex sum cap is 20 coordinates");
    Rational cv0 = 0;
    for (int j = 0; j < d; ++j) cv0 += c[static_cast<std::size_t>(j)] * v0[static_cast<std::size_t>(j)];
    Rational acc = 0;
    std::uint32_t total = 1u << d;
    for (std::uint32_t m = 0; m < total; ++m) {
        Rational t = cv0;
        for (int j = 0; j < d; ++j)
            if (m & (1u << j)) t += u * c[static_cast<std::size_t>(j)];
        int k = std::popcount(m);
        Rational weight = Rational(factorial_big(k) * factorial_big(d - k)) /
                          Rational(factorial_big(d + 1));
        acc += weight * rational_pow(t, q);
    }
    return rational_pow(u, d) * acc;
}

const char* mu_kind_name(MuKind k) {
    return k == MuKind::constant ? "constant" : "envelope";
}

double integrate_mu(const FunctionSpec& f, const Domain& dom, MuKind kind) {
    if (kind == MuKind::constant) return constant_bound(f, dom).value * domain_volume(dom);
    if (const auto* box = std::get_if<BoxDomain>(&dom)) return integrate_envelope(f, *box);
    if (const auto* zono = std::get_if<ZonotopeDomain>(&dom)) {
        Vec ct = zono->generators().transpose() * coefficients(f);
        for (int j = 0; j < ct.size(); ++j)
            if (ct[j] < 0.0)
                throw std::domain_error(
                    "envelope: zonotope pullback requires A^T c >= 0 to stay supermodular");
        double s0 = coefficients(f).dot(zono->offset());
        double sum = subset_weighted_sum(zono->param_dim(), [&](std::uint32_t m) {
            double t = s0;
            for (int j = 0; j < ct.size(); ++j)
                if (m & (1u << j)) t += ct[j];
            return apply_scalar_profile(f, t);
        });
        return zono->jacobian() * sum;
    }
    const auto& simplex = std::get<SimplexDomain>(dom);
    // the envelope over a simplex is the affine interpolant of the vertex
    // values; an affine function integrates to volume times centroid value
    double mean = 0.0;
    for (const auto& v : simplex.vertices()) mean += evaluate(f, v);
    mean /= static_cast<double>(simplex.vertices().size());
    return simplex.volume() * mean;
}

}  // namespace pgap
