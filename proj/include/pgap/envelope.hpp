#pragma once

#include <vector>

#include "pgap/functions.hpp"
#include "pgap/geometry.hpp"
#include "pgap/rational.hpp"

namespace pgap {

// mu = max_dom f, a constant concave upper bound. The families are
// nondecreasing along c >= 0, so the maximum sits at a top vertex and has a
// closed form on every supported domain.
struct ConstantBound {
    double value;
};
ConstantBound constant_bound(const FunctionSpec& f, const Domain& dom);

// One linear piece of the envelope, supported on the coordinate-order cell of
// `perm`. The piece is the interpolant of f at the cell's vertex chain.
struct EnvelopeCell {
    std::vector<int> perm;
    Vec gradient;
    double offset;
};

class PiecewiseLinearEnvelope {
public:
    PiecewiseLinearEnvelope(BoxDomain box, std::vector<EnvelopeCell> cells);

    const BoxDomain& box() const { return box_; }
    const std::vector<EnvelopeCell>& cells() const { return cells_; }

    // Value at x; throws std::domain_error when x is outside the box beyond
    // a 1e-12 tolerance on the normalized coordinates.
    double value(const Vec& x) const;

    // Vertex chain of a cell, materialized in box coordinates.
    std::vector<Vec> cell_vertices(const EnvelopeCell& cell) const;

private:
    BoxDomain box_;
    std::vector<EnvelopeCell> cells_;  // lexicographic in perm
};

// Least concave upper bound of f over the box. f restricted to the vertex
// lattice must be supermodular (true for these families when c >= 0); then
// the bound is the piecewise-linear interpolant of the vertex values over
// the coordinate-order triangulation.
PiecewiseLinearEnvelope concave_envelope(const FunctionSpec& f, const BoxDomain& box);

// integral of the envelope over the box without building the cells:
// u^d sum_{S subset of coords} f(v0 + u 1_S) / ((d+1) binom(d, |S|)).
double integrate_envelope(const FunctionSpec& f, const BoxDomain& box);

// Exact lane of the same sum for integer-exponent power forms with rational
// data.
Rational integrate_envelope_power_exact(const std::vector<Rational>& c, int q,
                                        const std::vector<Rational>& v0, const Rational& u);

enum class MuKind { constant, concave_envelope };
const char* mu_kind_name(MuKind k);

// integral over dom of the selected concave upper bound of f. The envelope
// variant covers boxes directly, zonotopes through the unit-cube
// parametrization (requires A^T c >= 0 so the pullback stays supermodular),
// and simplices as the affine interpolant of the vertex values.
double integrate_mu(const FunctionSpec& f, const Domain& dom, MuKind kind);

}  // namespace pgap
