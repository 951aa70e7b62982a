#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levyliq/errors.hpp"
#include "levyliq/liquidation.hpp"
#include "models.hpp"

#include <cmath>

using namespace levyliq;

namespace {

LiquidationProblem base_problem(double q = 0.0, double x = 2.0, double lambda = 0.1) {
    return LiquidationProblem(testmodels::solvent(), testmodels::insolvent(),
                              BarrierSystem{0.0, 1.0, 2.0}, lambda, q, x);
}

PenaltyFunction one() {
    return PenaltyFunction{[](double) { return 1.0; }, 1.0, {}};
}

} // namespace

TEST_CASE("problem validation") {
    const auto sol = testmodels::solvent();
    const auto ins = testmodels::insolvent();
    CHECK_THROWS_AS(LiquidationProblem(sol, ins, {1.0, 1.0, 2.0}, 0.1, 0.0, 2.0),
                    InvalidArgument);
    CHECK_THROWS_AS(LiquidationProblem(sol, ins, {0.0, 2.5, 2.0}, 0.1, 0.0, 3.0),
                    InvalidArgument);
    CHECK_THROWS_AS(LiquidationProblem(sol, ins, {-3.0, -2.0, -1.0}, 0.1, 0.0, 0.0),
                    InvalidArgument); // c <= 0
    CHECK_THROWS_AS(LiquidationProblem(sol, ins, {0.0, 1.0, 2.0}, 0.0, 0.0, 2.0),
                    InvalidArgument); // lambda
    CHECK_THROWS_AS(LiquidationProblem(sol, ins, {0.0, 1.0, 2.0}, 0.1, 0.0, 0.5),
                    InvalidArgument); // x <= b
    const LevyModel sinking(1.0, 1.0, 2.0, JumpLaw::exponential(1.0)); // loading 1 - 2 < 0
    CHECK_THROWS_AS(LiquidationProblem(sinking, ins, {0.0, 1.0, 2.0}, 0.1, 0.0, 2.0),
                    InvalidArgument);
}

TEST_CASE("gerber_shiu: zero penalty gives zero") {
    const auto pr = base_problem(0.1);
    const PenaltyFunction zero{[](double) { return 0.0; }, 0.0, {}};
    CHECK(gerber_shiu(pr, zero, 5.0) == doctest::Approx(0.0));
}

TEST_CASE("Theorem 1 with f = 1 equals Corollary 2 on a (q, z) grid") {
    for (double q : {0.05, 0.1, 0.3}) {
        const auto pr = base_problem(q);
        for (double z : {3.0, 5.0, 10.0}) {
            const double thm = gerber_shiu(pr, one(), z);
            const double cor = liquidation_laplace(pr, z);
            CHECK(thm == doctest::Approx(cor).epsilon(1e-6));
        }
    }
}

TEST_CASE("liquidation Laplace decreases to zero in q") {
    const double z = 6.0;
    const double v1 = liquidation_laplace(base_problem(1.0), z);
    const double v10 = liquidation_laplace(base_problem(10.0), z);
    const double v50 = liquidation_laplace(base_problem(50.0), z);
    CHECK(v1 > v10);
    CHECK(v10 > v50);
    CHECK(v50 < 1e-3);
    CHECK(v50 > 0.0);
}

TEST_CASE("liquidation Laplace: q -> 0, z large approaches the probability") {
    const auto pr = base_problem(0.0);
    const double prob = liquidation_probability(pr);
    const double lap_small_q = liquidation_laplace(pr.with_discount(1e-3), 200.0);
    // continuity in q: the gap is of order q E[T; liquidation]
    CHECK(std::abs(lap_small_q - prob) < 5e-3);
    const double lap_tiny_q = liquidation_laplace(pr, 200.0); // q = 0 routes to 1e-8
    CHECK(std::abs(lap_tiny_q - prob) < 1e-4);
}

TEST_CASE("total probability at q = 0: exit + liquidation = 1") {
    const auto pr = base_problem(0.0, 5.0, 0.2); // the section-5.2 base configuration
    const double z = 10.0;
    const double exit = exit_before_liquidation(pr, z);
    const double liq = liquidation_laplace(pr, z); // q = 0 -> 1e-8 proxy
    CHECK(exit + liq == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("exit_before_liquidation: boundary and range") {
    const auto pr = base_problem(0.0, 5.0, 0.2);
    const double at_z = exit_before_liquidation(pr.with_discount(0.0), 5.0); // x = z = 5
    CHECK(at_z >= 1.0 - 1e-6);
    CHECK(at_z <= 1.0 + 1e-9);
    for (double z : {6.0, 10.0, 20.0}) {
        const double v = exit_before_liquidation(pr, z);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
    CHECK_THROWS_AS(exit_before_liquidation(pr, 1.5), InvalidArgument); // z <= c
}

TEST_CASE("liquidation probability: internal consistency and monotonicity in x") {
    const auto pr2 = base_problem(0.0, 2.0);
    const double p2 = liquidation_probability(pr2);
    // independent route: Corollary 2 at q ~ 0 and large z
    const double via_laplace = liquidation_laplace(pr2, 150.0);
    CHECK(p2 == doctest::Approx(via_laplace).epsilon(2e-4));

    const double p5 = liquidation_probability(base_problem(0.0, 5.0, 0.2));
    const double p2l = liquidation_probability(base_problem(0.0, 2.0, 0.2));
    CHECK(p5 < p2l);
    CHECK(p2 > 0.0);
    CHECK(p2 < 1.0);
}

TEST_CASE("joint CDF: z at or below the start is impossible") {
    const auto pr = base_problem(0.0);
    for (double u : {-1.0, 0.0, 0.5, 2.0}) {
        CHECK(joint_cdf(pr, u, 2.0) == 0.0);
        CHECK(joint_cdf(pr, u, 1.5) == 0.0);
    }
}

TEST_CASE("joint CDF: monotone in u and z, bounded by the Laplace transform") {
    const auto pr = base_problem(0.0);
    double prev_u = -1.0;
    for (double u : {-1.0, -0.3, 0.0, 0.4, 1.0, 1.8, 2.5}) {
        const double v = joint_cdf(pr, u, 6.0);
        CHECK(v >= prev_u - 1e-8);
        prev_u = v;
    }
    double prev_z = 0.0;
    for (double z : {2.5, 3.0, 4.0, 6.0, 9.0}) {
        const double v = joint_cdf(pr, 1.0, z);
        CHECK(v >= prev_z - 1e-8);
        prev_z = v;
        CHECK(v <= liquidation_laplace(pr, z) + 1e-7);
    }
}

TEST_CASE("joint CDF: (u, z) -> (inf, inf) recovers the liquidation probability") {
    const auto pr = base_problem(0.0);
    const double lim = joint_cdf(pr, 2.0, 150.0); // u >= c exhausts the surplus range
    CHECK(std::abs(lim - liquidation_probability(pr)) < 2e-3);
}

TEST_CASE("atom at a: creeping mass matches the CDF jump") {
    const auto pr = base_problem(0.0);
    const double z = 6.0;
    const double atom = atom_at_a(pr, z);
    CHECK(atom > 0.0);
    const double eps = 1e-5;
    const double jump = joint_cdf(pr, 0.0 + eps, z) - joint_cdf(pr, 0.0 - eps, z);
    CHECK(std::abs(jump - atom) < 1e-6);
}

TEST_CASE("atom vanishes without a Brownian part in the insolvent book") {
    const LevyModel ins_bv(6.0, 0.0, 3.0, JumpLaw::erlang2(2.0)); // drift > 0, no sigma
    const LiquidationProblem pr(testmodels::solvent(), ins_bv, {0.0, 1.0, 2.0}, 0.1, 0.0, 2.0);
    CHECK(atom_at_a(pr, 6.0) == 0.0);
}

TEST_CASE("indicator penalty equals the joint CDF fast path") {
    const auto pr = base_problem(0.0);
    const double u0 = -0.5, z = 6.0;
    const PenaltyFunction indicator{[u0](double u) { return u <= u0 ? 1.0 : 0.0; }, 1.0, {u0}};
    const double via_thm = gerber_shiu(pr, indicator, z);
    const double via_cdf = joint_cdf(pr, u0, z);
    CHECK(via_thm == doctest::Approx(via_cdf).epsilon(1e-6));
}

TEST_CASE("value is continuous across z = c") {
    const auto pr = base_problem(0.0, 1.2); // x inside (b, c) so z can straddle c
    const double below = gerber_shiu(pr, one(), 2.0 - 1e-6);
    const double above = gerber_shiu(pr, one(), 2.0 + 1e-6);
    CHECK(std::abs(above - below) < 1e-6);
}

TEST_CASE("numeric joint density") {
    const auto pr = base_problem(0.0);
    CHECK_THROWS_AS(joint_density_numeric(pr, 0.0, 4.0, 1e-4), AtomPoint);

    // constant region above c ^ z
    CHECK(std::abs(joint_density_numeric(pr, 2.4, 4.0, 1e-4)) < 1e-4);

    // integral of the density over a rectangle ~ CDF increment
    const double u1 = 0.3, u2 = 0.7, z1 = 4.0, z2 = 5.0;
    const int n = 8;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double u = u1 + (u2 - u1) * (i + 0.5) / n;
            const double z = z1 + (z2 - z1) * (j + 0.5) / n;
            sum += joint_density_numeric(pr, u, z, 2e-4);
        }
    }
    sum *= (u2 - u1) * (z2 - z1) / (n * n);
    const double increment = joint_cdf(pr, u2, z2) - joint_cdf(pr, u1, z2) -
                             joint_cdf(pr, u2, z1) + joint_cdf(pr, u1, z1);
    CHECK(sum == doctest::Approx(increment).epsilon(1e-3));
}
