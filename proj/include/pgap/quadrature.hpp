#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pgap {

struct QuadResult {
    double value;
    double error;  // estimated absolute error
};

// Adaptive Gauss-Kronrod on [a, b].
template <class F>
QuadResult integrate_gk(F&& f, double a, double b, double rel_tol = 1e-12,
                        unsigned max_depth = 15) {
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, max_depth, rel_tol, &err);
    return {v, err};
}

}  // namespace pgap
