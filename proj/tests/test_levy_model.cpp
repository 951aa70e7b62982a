#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levyliq/errors.hpp"
#include "levyliq/levy_model.hpp"
#include "levyliq/numerics.hpp"
#include "models.hpp"

#include <cmath>
#include <vector>

using namespace levyliq;

TEST_CASE("laplace exponent: worked values") {
    const auto m = testmodels::single();
    CHECK(laplace_exponent(m, 0.0) == 0.0);
    // 5 - 2 + 2*4/9 + 0.125
    CHECK(laplace_exponent(m, 1.0) == doctest::Approx(4.0138888888888893).epsilon(1e-14));
    CHECK_THROWS_AS(laplace_exponent(m, -0.5), InvalidArgument);
}

TEST_CASE("laplace exponent: convexity on a grid") {
    for (const auto& m : {testmodels::single(), testmodels::solvent(), testmodels::insolvent()}) {
        for (double t1 = 0.0; t1 < 3.0; t1 += 0.7) {
            for (double t2 = t1 + 0.3; t2 < 4.0; t2 += 0.9) {
                for (double w = 0.1; w < 1.0; w += 0.2) {
                    const double mid = w * t1 + (1.0 - w) * t2;
                    const double lhs = laplace_exponent(m, mid);
                    const double rhs =
                        w * laplace_exponent(m, t1) + (1.0 - w) * laplace_exponent(m, t2);
                    CHECK(lhs <= rhs + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("safety loading") {
    CHECK(safety_loading(testmodels::single()) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(safety_loading(testmodels::solvent()) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(safety_loading(testmodels::insolvent()) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(safety_loading(testmodels::no_jumps()) == doctest::Approx(1.0));

    // matches the numerical derivative (psi(h) - psi(0)) / h up to O(h)
    const auto m = testmodels::solvent();
    for (double h : {1e-4, 1e-5, 1e-6}) {
        const double slope = laplace_exponent(m, h) / h;
        CHECK(std::abs(slope - 3.0) < 10.0 * h + 1e-9);
    }
}

TEST_CASE("model validation excludes monotone paths") {
    CHECK_THROWS_AS(LevyModel(1.0, 0.0, 0.0, JumpLaw::exponential(1.0)), InvalidArgument);
    CHECK_THROWS_AS(LevyModel(-1.0, 0.0, 2.0, JumpLaw::exponential(1.0)), InvalidArgument);
    CHECK_THROWS_AS(LevyModel(1.0, -0.5, 2.0, JumpLaw::exponential(1.0)), InvalidArgument);
    CHECK_NOTHROW(LevyModel(-1.0, 0.5, 2.0, JumpLaw::exponential(1.0)));
}

TEST_CASE("phi: right inverse of psi") {
    const auto models = {testmodels::single(), testmodels::solvent(), testmodels::insolvent(),
                         testmodels::no_jumps()};
    for (const auto& m : models) {
        CHECK(phi(m, 0.0) == 0.0); // positive loading
        for (double q : {0.01, 0.1, 1.0, 10.0}) {
            const double p = phi(m, q);
            CHECK(p > 0.0);
            CHECK(std::abs(laplace_exponent(m, p) - q) < 1e-10);
        }
    }
    const auto m = testmodels::single();
    CHECK(phi(m, 0.1) < phi(m, 0.5));
}

TEST_CASE("phi: negative loading still finds the positive root") {
    // drift below claim cost: psi'(0+) = 1 - 2 < 0
    const LevyModel heavy(1.0, 0.7, 2.0, JumpLaw::exponential(1.0));
    CHECK(safety_loading(heavy) < 0.0);
    const double p0 = phi(heavy, 0.0);
    CHECK(p0 > 0.0);
    CHECK(std::abs(laplace_exponent(heavy, p0)) < 1e-10);
}

TEST_CASE("levy_tail: worked values") {
    const LevyModel exp_model(1.0, 0.0, 2.0, JumpLaw::exponential(1.0));
    CHECK(levy_tail(exp_model, 1e-300) == doctest::Approx(2.0));

    const LevyModel erl(1.0, 0.0, 3.0, JumpLaw::erlang2(2.0));
    CHECK(levy_tail(erl, 1.0) == doctest::Approx(3.0 * 3.0 * std::exp(-2.0)).epsilon(1e-12));

    CHECK(levy_tail(testmodels::solvent(), 0.0) == doctest::Approx(5.0));
}

TEST_CASE("jump law: density, tail and mean are consistent") {
    const auto laws = {JumpLaw::exponential(1.3), JumpLaw::erlang2(2.0),
                       JumpLaw::mixture({{0.6, JumpLaw::erlang2(2.0)},
                                         {0.4, JumpLaw::exponential(1.0)}})};
    for (const auto& law : laws) {
        const double cut = 60.0 / law.min_tail_rate();
        const auto mass =
            numerics::integrate([&](double y) { return law.density(y); }, 0.0, cut,
                                {1e-12, 1e-10, {}, 48});
        CHECK(std::abs(mass.value - 1.0) < 1e-9);

        CHECK(law.tail(0.0) == 1.0);
        CHECK(law.tail(1e3 / law.min_tail_rate()) < 1e-100);
        double prev = 1.0;
        for (double y = 0.1; y < 10.0; y += 0.3) {
            CHECK(law.tail(y) <= prev + 1e-15);
            prev = law.tail(y);
        }

        // tail(y) = quadrature of the density over (y, cut) + analytic remainder
        for (double y : {0.3, 1.0, 2.5}) {
            const auto partial =
                numerics::integrate([&](double t) { return law.density(t); }, y, cut,
                                    {1e-12, 1e-10, {}, 48});
            CHECK(std::abs(partial.value + law.tail(cut) - law.tail(y)) < 1e-9);
        }
    }
}

TEST_CASE("mixture validation") {
    CHECK_THROWS_AS(JumpLaw::mixture({}), InvalidArgument);
    CHECK_THROWS_AS(JumpLaw::mixture({{0.5, JumpLaw::exponential(1.0)},
                                      {0.3, JumpLaw::erlang2(1.0)}}),
                    InvalidArgument);
    CHECK_THROWS_AS(JumpLaw::mixture({{1.5, JumpLaw::exponential(1.0)},
                                      {-0.5, JumpLaw::erlang2(1.0)}}),
                    InvalidArgument);
}
