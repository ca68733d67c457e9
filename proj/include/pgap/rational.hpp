#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace pgap {

// Arbitrary-precision rationals back the exact lane: integral formulas whose
// inputs are rational stay rational all the way to the reported volumes.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial_big(int n) {
    BigInt r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

inline BigInt binomial_big(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline Rational rational_pow(Rational base, int e) {
    Rational r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace pgap
