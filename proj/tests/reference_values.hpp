#pragma once

// Reference constants for the test suites, frozen from the output of
// tests/oracle/reference_values.py (sympy exact integration and mpmath
// 50-digit quadrature of the defining integrals). Regenerate with
//   python3 tests/oracle/reference_values.py
// and paste the block below.

namespace refvals {

// int over [0,1]^2 of (x+y)^2
inline const char* const kUnitSquareSumSq = "7/6";

// int over [0,1]^3 of (x+2y+3z)^2
inline const char* const kUnitCubePower123 = "61/6";

// int over [0,1] of (x+1)^2 = int over [1,2] of x^2
inline const char* const kIntervalShiftSq = "7/3";

// int over [0,1] of x^2.5 = 2/7
inline constexpr double kUnitIntervalPow25 = 0.2857142857142857;

// int over [1,2] of x^2.5 (mpmath quad)
inline constexpr double kBoxPow25 = 2.9467738568527886;

// int of (x+2y)^2 over triangle (1,1),(2,1),(1,2)
inline const char* const kTrianglePow = "97/12";

// int of x1+x2 over 2[0,1]^2 + (1,1)
inline const char* const kZonotopeLinear = "16/1";

// shifted-integral lower bound, d=1 q=2 c=1 s=1
inline const char* const kPowerLowerBoundD1Q2 = "4/3";

// per-cell lower bound for c=1, n=2, q=2
inline const char* const kAllOneBoundN2Q2 = "1/6";

// int of e^(x1+x2)-1 over [1,2]^2
inline constexpr double kExpBoxD2 = 20.816132285699553;

// int of e^x-1 over [0,1] = e-2
inline constexpr double kExpUnitInterval = 0.7182818284590452;

// max of e^(x1+x2)-1 over [1,2]^2 = e^4-1
inline constexpr double kExpMaxD2 = 53.598150033144236;

// int_0^1 z int_1^2 (e^(zx)-1) dx dz
inline constexpr double kExpZIntD1 = 0.9762462210062799;

// vol of perspective relaxation, exp on [1,2], envelope mu
inline constexpr double kExpVolPD1 = 0.1276315644077476;

// vol of naive relaxation, exp on [1,2], envelope mu
inline constexpr double kExpVolP0D1 = 0.3749767668920027;

// cut-off amount for exp on [1,2]
inline constexpr double kExpDeltaD1 = 0.24734520248425512;

// cut-off ratio for exp on [1,2], envelope mu
inline constexpr double kExpRatioD1 = 0.6596280738520879;

// z-integral for exp on [1,2]^2
inline constexpr double kExpZIntD2 = 3.53704094229294;

// cut-off amount for exp on [1,2]^2
inline constexpr double kExpDeltaD2 = 1.6669921291319487;

// int of e^(x1+x2)-1 over {(t,t): t in [0,1]} w.r.t. sqrt(2) dt
inline constexpr double kExpSegmentZonotope = 3.103531330562037;

// int of e^(x1+x2)-1 over triangle (1,1),(2,1),(1,2)
inline constexpr double kExpTriangle = 6.88905609893065;

// int of e^(x1+2x2)-1 over triangle (1,1),(2,1),(1,3)
inline constexpr double kExpTriangleGeneric = 155.41619484424078;

// vol P for exp on [1,11], envelope mu
inline constexpr double kExpSweepVolPU10 = 79837.62551725401;

// vol P0 for exp on [1,11], envelope mu
inline constexpr double kExpSweepVolP0U10 = 94355.13872700579;

// cut-off ratio for exp on [1,11]
inline constexpr double kExpSweepRatioU10 = 0.1538603345362541;

// int of g(x) over [1,2], g = exp(ln(1+x)^2)-1
inline constexpr double kSuperPolyBoxD1 = 1.370107643530511;

// int_0^1 z int_1^2 g(zx) dx dz
inline constexpr double kSuperPolyZIntD1 = 0.35233666420633303;

// cut-off amount for g on [1,2]
inline constexpr double kSuperPolyDeltaD1 = 0.10436588363717071;

// int of g(x1+x2) over [1,2]^2
inline constexpr double kSuperPolyBoxD2 = 6.081324345413026;

// g(e-1) = e - 1
inline constexpr double kSuperPolyAtE = 1.7182818284590453;

// g(2) = exp(ln(3)^2) - 1
inline constexpr double kSuperPolyAt2 = 2.3432686321239604;

// int of the concave envelope of (x1+x2)^2 over [1,2]^2 = 58/6
inline const char* const kEnvelopeIntSumSq = "29/3";

// envelope of (x1+x2)^2 on [1,2]^2 at (1.5,1.5)
inline constexpr double kEnvelopeMidpoint = 10.0;

// envelope of (x1+x2)^2 on [1,2]^2 at (1.25,1.75)
inline constexpr double kEnvelopeOffDiag = 9.5;

// int of the secant envelope of x^2 over [1,2]
inline const char* const kEnvelopeIntD1Sq = "5/2";

// vol P for x^2 on [1,2], envelope mu
inline const char* const kSqVolP = "1/18";

// vol P0 for x^2 on [1,2], envelope mu
inline const char* const kSqVolP0 = "1/4";

// cut-off amount = 7/36
inline const char* const kSqDelta = "7/36";

// cut-off ratio = 7/9
inline const char* const kSqRatio = "7/9";

// z-integral for x^2 on [1,2] = 7/12
inline const char* const kSqZInt = "7/12";

// vol P for x^2 on [1,2], constant mu = 4
inline const char* const kSqVolPConst = "5/9";

// vol P0 for x^2 on [1,2], constant mu = 4
inline const char* const kSqVolP0Const = "3/4";

// limiting cut-off ratio bound, q=2 d=1
inline const char* const kCxRatBoundQ2D1 = "1/9";

// limiting cut-off ratio bound, q=3 d=2
inline const char* const kCxRatBoundQ3D2 = "3/74";

// r(1000) for x^2 on [1,1001], constant mu
inline constexpr double kPowerTrendR1000 = 0.333666666333999;


}  // namespace refvals
