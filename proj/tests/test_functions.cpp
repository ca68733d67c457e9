#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pgap/functions.hpp"
#include "pgap/rng.hpp"
#include "reference_values.hpp"

using namespace pgap;

namespace {

Vec make_vec(std::initializer_list<double> xs) {
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

}  // namespace

TEST_CASE("family evaluation") {
    PowerLinearForm pw(make_vec({1.0, 1.0}), 2.0);
    CHECK(pw(make_vec({1.0, 1.0})) == doctest::Approx(4.0));

    ExpLinearForm ex(make_vec({1.0}));
    CHECK(ex(make_vec({0.0})) == doctest::Approx(0.0));
    CHECK(ex(make_vec({2.0})) == doctest::Approx(std::exp(2.0) - 1.0));

    SuperPolyForm sp(make_vec({1.0}));
    CHECK(sp(make_vec({std::exp(1.0) - 1.0})) ==
          doctest::Approx(refvals::kSuperPolyAtE).epsilon(1e-12));
    CHECK(sp(make_vec({2.0})) == doctest::Approx(refvals::kSuperPolyAt2).epsilon(1e-12));
    CHECK(sp(make_vec({0.0})) == doctest::Approx(0.0));
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(PowerLinearForm(Vec(0), 2.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerLinearForm(make_vec({1.0, -1.0}), 2.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerLinearForm(make_vec({1.0}), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ExpLinearForm(make_vec({0.0, 0.0})), std::invalid_argument);
    CHECK_THROWS_AS(SuperPolyForm(make_vec({-1.0})), std::invalid_argument);
}

TEST_CASE("homogeneity degree") {
    FunctionSpec pw = PowerLinearForm(make_vec({2.0}), 3.0);
    FunctionSpec lin = PowerLinearForm(make_vec({2.0}), 1.0);
    FunctionSpec ex = ExpLinearForm(make_vec({1.0}));
    FunctionSpec sp = SuperPolyForm(make_vec({1.0}));
    CHECK(homogeneity_degree(pw).value() == doctest::Approx(3.0));
    CHECK(homogeneity_degree(lin).value() == doctest::Approx(1.0));
    CHECK(!homogeneity_degree(ex).has_value());
    CHECK(!homogeneity_degree(sp).has_value());
}

TEST_CASE("power forms scale homogeneously") {
    CounterRng rng(101, 0);
    FunctionSpec f = PowerLinearForm(make_vec({0.7, 1.3, 2.1}), 2.5);
    for (int trial = 0; trial < 100; ++trial) {
        double lambda = 2.0 * rng.next_unit();
        Vec x(3);
        for (int i = 0; i < 3; ++i) x[i] = rng.next_unit();
        double fx = evaluate(f, x);
        double scaled = evaluate(f, Vec(lambda * x));
        CHECK(std::abs(scaled - std::pow(lambda, 2.5) * fx) <= 1e-9 * (1.0 + std::abs(fx)));
    }
}

TEST_CASE("midpoint convexity on random pairs") {
    CounterRng rng(102, 0);
    std::vector<FunctionSpec> fams;
    fams.push_back(PowerLinearForm(make_vec({1.0, 2.0}), 2.0));
    fams.push_back(ExpLinearForm(make_vec({1.0, 0.5})));
    fams.push_back(SuperPolyForm(make_vec({0.5, 1.5})));
    for (const FunctionSpec& f : fams) {
        for (int trial = 0; trial < 100; ++trial) {
            Vec a(2), b(2);
            for (int i = 0; i < 2; ++i) {
                a[i] = 2.0 * rng.next_unit();
                b[i] = 2.0 * rng.next_unit();
            }
            Vec mid = 0.5 * (a + b);
            CHECK(evaluate(f, mid) <= 0.5 * (evaluate(f, a) + evaluate(f, b)) + 1e-12);
        }
    }
}

TEST_CASE("superpoly scalar profile") {
    CHECK(superpoly_g(0.0) == doctest::Approx(0.0));
    CHECK(superpoly_g(2.0) == doctest::Approx(refvals::kSuperPolyAt2).epsilon(1e-12));
    CHECK_THROWS_AS(superpoly_g(-0.5), std::domain_error);
    // ln(1+t)^2 > 709 overflows binary64
    CHECK_THROWS_AS(superpoly_g(std::exp(27.0)), std::range_error);
}

TEST_CASE("genericity accepts positive vectors and near-duplicates") {
    CHECK(check_genericity(make_vec({1.0, 2.0, 3.0})).ok);
    CHECK(check_genericity(make_vec({1.0, 1.0})).ok);  // equal entries do not cancel
    CHECK(check_genericity(make_vec({1.0, 1.0 + 1e-15}), 1e-12).ok);
}

TEST_CASE("genericity rejects cancelling subsets with a witness") {
    GenericityResult r = check_genericity(make_vec({1.0, -1.0}));
    REQUIRE(!r.ok);
    CHECK(r.subset == std::vector<int>{0, 1});
    CHECK(std::abs(r.sum) <= 1e-9);

    GenericityResult r2 = check_genericity(make_vec({2.0, 3.0, -5.0}));
    REQUIRE(!r2.ok);
    CHECK(r2.subset == std::vector<int>{0, 1, 2});

    CHECK_THROWS_AS(require_generic(make_vec({1.0, -1.0})), std::domain_error);
    CHECK_THROWS_WITH_AS(require_generic(make_vec({1.0, -1.0})),
                         doctest::Contains("degenerate"), std::domain_error);
}

TEST_CASE("genericity is monotone in the tolerance") {
    Vec c = make_vec({1.0, -1.0 + 2e-9});
    CHECK(check_genericity(c, 1e-9).ok);
    CHECK(check_genericity(c, 1e-10).ok);  // passing at tol implies passing below
    CHECK(!check_genericity(c, 1e-8).ok);
}

TEST_CASE("genericity cap") {
    Vec big = Vec::Ones(21);
    CHECK_THROWS_AS(check_genericity(big), std::invalid_argument);
}

TEST_CASE("supermodularity on box vertices") {
    BoxDomain box(make_vec({1.0, 1.0}), 1.0);
    CHECK(is_supermodular_on_vertices(ExpLinearForm(make_vec({1.0, 1.0})), box));
    CHECK(is_supermodular_on_vertices(PowerLinearForm(make_vec({1.0, 1.0}), 2.0), box));
    CHECK(is_supermodular_on_vertices(SuperPolyForm(make_vec({1.0, 2.0})), box));

    // vacuous in one dimension
    BoxDomain line(make_vec({1.0}), 1.0);
    CHECK(is_supermodular_on_vertices(PowerLinearForm(make_vec({1.0}), 3.0), line));

    BoxDomain wrong_dim(make_vec({1.0, 1.0, 1.0}), 1.0);
    CHECK_THROWS_AS(
        is_supermodular_on_vertices(ExpLinearForm(make_vec({1.0, 1.0})), wrong_dim),
        std::invalid_argument);
}

TEST_CASE("coefficient predicates") {
    FunctionSpec f = ExpLinearForm(make_vec({1.0, 0.0}));
    CHECK(has_zero_coefficient(f));
    CHECK(!has_zero_coefficient(FunctionSpec(ExpLinearForm(make_vec({1.0, 2.0})))));
    CHECK_THROWS_AS(require_positive_coefficients(make_vec({1.0, 0.0})), std::domain_error);
    CHECK_NOTHROW(require_positive_coefficients(make_vec({0.5, 2.0})));
    CHECK(function_dim(f) == 2);
}
