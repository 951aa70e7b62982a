#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levyliq/errors.hpp"
#include "levyliq/fluctuation.hpp"
#include "models.hpp"

#include <cmath>

using namespace levyliq;
using numerics::QuadratureSpec;

namespace {

// Second displayed form of omega: W_q(x+w) + (p-q) int_0^w W_q(x+w-z) W_p(z) dz.
double omega_form2(const ScaleFunction& sf_q, const ScaleFunction& sf_p, double w, double x) {
    const double p = sf_p.q(), q = sf_q.q();
    if (w <= 0.0) return sf_q.W(x + w);
    const auto conv = numerics::integrate(
        [&](double z) { return sf_q.W(x + w - z) * sf_p.W(z); }, 0.0, w,
        QuadratureSpec{1e-12, 1e-10, {}, 48});
    return sf_q.W(x + w) + (p - q) * conv.value;
}

double ell_form2(const ScaleFunction& sf_q, const ScaleFunction& sf_p, double w, double x) {
    const double p = sf_p.q(), q = sf_q.q();
    if (w <= 0.0) return sf_q.Z(x + w);
    const auto conv = numerics::integrate(
        [&](double z) { return sf_q.W(x + w - z) * sf_p.Z(z); }, 0.0, w,
        QuadratureSpec{1e-12, 1e-10, {}, 48});
    return sf_q.Z(x + w) + (p - q) * conv.value;
}

} // namespace

TEST_CASE("omega/ell: the two displayed forms agree") {
    const auto m = testmodels::single();
    for (double q : {0.0, 0.1, 0.5}) {
        for (double p : {0.0, 0.1, 0.5}) {
            const ScaleFunction sq(m, q), sp(m, p);
            for (double w : {0.0, 1.0, 3.0}) {
                for (double x : {0.5, 1.0, 5.0}) {
                    CHECK(omega_small(sq, sp, w, x) ==
                          doctest::Approx(omega_form2(sq, sp, w, x)).epsilon(1e-8));
                    CHECK(ell_small(sq, sp, w, x) ==
                          doctest::Approx(ell_form2(sq, sp, w, x)).epsilon(1e-8));
                }
            }
        }
    }
}

TEST_CASE("omega/ell: rate-equal and shift-zero reductions") {
    const auto m = testmodels::single();
    const ScaleFunction sq(m, 0.1), sp(m, 0.1);
    CHECK(omega_small(sq, sp, 2.0, 1.5) == doctest::Approx(sq.W(3.5)).epsilon(1e-12));
    CHECK(ell_small(sq, sp, 2.0, 1.5) == doctest::Approx(sq.Z(3.5)).epsilon(1e-12));

    const ScaleFunction s0(m, 0.0);
    CHECK(ell_small(s0, ScaleFunction(m, 0.0), 0.0, 1.0) == doctest::Approx(1.0)); // Z_0 = 1
}

TEST_CASE("omega: mismatched models rejected") {
    const ScaleFunction sq(testmodels::single(), 0.0);
    const ScaleFunction sp(testmodels::solvent(), 0.1);
    CHECK_THROWS_AS(omega_small(sq, sp, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("two-sided exit identities") {
    const auto m = testmodels::single();
    const ScaleFunction sf(m, 0.1);
    CHECK(exit_up(sf, 2.0, 2.0) == doctest::Approx(1.0));
    CHECK(exit_up(sf, -0.5, 2.0) == 0.0);
    const double up = exit_up(sf, 1.0, 2.0);
    const double down = exit_down(sf, 1.0, 2.0);
    CHECK(up > 0.0);
    CHECK(up < 1.0);
    CHECK(down > 0.0);
    CHECK(up + down < 1.0); // killing at rate q > 0 loses mass

    const ScaleFunction sf0(m, 0.0);
    CHECK(exit_up(sf0, 1.0, 2.0) + exit_down(sf0, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(exit_down(sf0, 2.0, 2.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(exit_up(sf, 3.0, 2.0), InvalidArgument);
}

TEST_CASE("resolvent density: positivity and the occupation identity") {
    const auto m = testmodels::insolvent();
    const double q = 0.1, lambda = 0.2;
    const ScaleFunction sp(m, q + lambda);
    CHECK(resolvent_density(sp, 1.0, 1.8, 2.0) >= 0.0);
    CHECK_THROWS_AS(resolvent_density(sp, -0.5, 1.0, 2.0), InvalidArgument);

    // lambda int_0^w resolvent = lambda/(q+lambda) (1 - up - down) at rate q+lambda
    for (double x : {0.6, 1.3}) {
        const double w = 2.0;
        const auto integral = numerics::integrate(
            [&](double y) { return resolvent_density(sp, x, y, w); }, 0.0, w,
            QuadratureSpec{1e-12, 1e-10, {x}, 48});
        const double rhs = (1.0 - exit_up(sp, x, w) - exit_down(sp, x, w)) / (q + lambda);
        CHECK(integral.value == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("Omega: triplet form equals the concise scale form on one model") {
    const auto m = testmodels::single();
    const double q = 0.0, lambda = 0.1;
    const OmegaKernel kern(m, m, q, lambda);
    const ScaleFunction& sq = kern.solvent_sf();
    const ScaleFunction& sp = kern.insolvent_sf();

    struct Case {
        double w, b, x, z;
    };
    for (const Case& c : {Case{0.0, 0.0, 1.0, 2.0}, Case{-1.0, 0.5, 1.0, 3.0},
                          Case{-3.0, 0.0, 1.0, 4.0}, Case{0.5, 0.5, 2.0, 3.0}}) {
        const double w_triplet = kern.omega({c.w, c.b, c.x, c.z, PhiKind::W});
        const double w_scale = omega_big_scaleform(sq, sp, PhiKind::W, c.w, c.b, c.x, c.z);
        CHECK(w_triplet == doctest::Approx(w_scale).epsilon(1e-6));

        const double z_triplet = kern.omega({c.w, c.b, c.x, c.z, PhiKind::Z});
        const double z_scale = omega_big_scaleform(sq, sp, PhiKind::Z, c.w, c.b, c.x, c.z);
        CHECK(z_triplet == doctest::Approx(z_scale).epsilon(1e-6));
    }
}

TEST_CASE("Omega: lambda = 0 collapses to the plain exit combination") {
    const auto m = testmodels::single();
    const OmegaKernel kern(m, m, 0.1, 0.0);
    const ScaleFunction& sq = kern.solvent_sf();
    const double w = -0.5, b = 0.2, x = 1.0, z = 2.5;
    const double expect = sq.W(x - w) - sq.W(x - b) * sq.W(z - w) / sq.W(z - b);
    CHECK(kern.omega({w, b, x, z, PhiKind::W}) == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("Omega vanishes for shifts above the entry barrier (phi = W)") {
    const auto m = testmodels::single();
    const OmegaKernel kern(m, m, 0.0, 0.1);
    CHECK(kern.omega({1.5, 1.0, 2.0, 4.0, PhiKind::W}) == 0.0);
    CHECK(kern.omega_inf(PhiKind::W, 1.5, 1.0, 2.0) == 0.0);
}

TEST_CASE("Omega equals the omega-kernel expression at b = 0") {
    const auto m = testmodels::single();
    const double q = 0.0, lambda = 0.1, a = -3.0, x = 1.0, z = 4.0;
    const OmegaKernel kern(m, m, q, lambda);
    const ScaleFunction& sq = kern.solvent_sf();
    const ScaleFunction& sp = kern.insolvent_sf();
    const double lhs = kern.omega({a, 0.0, x, z, PhiKind::W});
    const double rhs =
        omega_small(sq, sp, -a, x) - sq.W(x) / sq.W(z) * omega_small(sq, sp, -a, z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
}

TEST_CASE("Omega: z -> infinity limit is the Cauchy limit of finite-z values") {
    const auto sol = testmodels::solvent();
    const auto ins = testmodels::insolvent();
    const OmegaKernel kern(sol, ins, 0.0, 0.1);
    const double a = 0.0, b = 1.0, x = 2.0;
    const double v50 = kern.omega({a, b, x, 50.0, PhiKind::W});
    const double v100 = kern.omega({a, b, x, 100.0, PhiKind::W});
    const double vinf = kern.omega_inf(PhiKind::W, a, b, x);
    CHECK(std::abs(v100 - vinf) < 1e-6);
    CHECK(std::abs(v50 - vinf) <= std::abs(v100 - vinf) + 1e-6);
}

TEST_CASE("Omega is nonnegative for phi = W and vanishes at x = z") {
    const OmegaKernel kern(testmodels::solvent(), testmodels::insolvent(), 0.05, 0.2);
    for (double x = 1.1; x <= 3.0; x += 0.2) {
        CHECK(kern.omega({0.0, 1.0, x, 3.0, PhiKind::W}) >= -1e-10);
    }
    // at x = z the start exits immediately, so both bracket terms cancel
    CHECK(std::abs(kern.omega({0.0, 1.0, 3.0, 3.0, PhiKind::W})) < 1e-9);
}

TEST_CASE("Corollary-2 proof chain: the grace-resolvent identity") {
    const auto sol = testmodels::solvent();
    const auto ins = testmodels::insolvent();
    const double q = 0.1, lambda = 0.2;
    const double a = 0.0, b = 1.0, c = 2.0, x = 2.0, z = 5.0;
    const OmegaKernel kern(sol, ins, q, lambda);
    const ScaleFunction& sq = kern.solvent_sf();
    const ScaleFunction& sp = kern.insolvent_sf();

    const double om_a = kern.omega({a, b, x, z, PhiKind::W});
    const double om_z = kern.omega({a, b, x, z, PhiKind::Z});
    const double Wp_ca = sp.W(c - a), Zp_ca = sp.Z(c - a);

    const auto lhs_int = numerics::integrate(
        [&](double y) {
            return om_a * sp.W(c - y) / Wp_ca - kern.omega({y, b, x, z, PhiKind::W});
        },
        a, c, QuadratureSpec{1e-10, 1e-8, {b}, 48});
    const double lhs = lambda * lhs_int.value;

    const double rhs = lambda / (q + lambda) *
                       ((sq.Z(x - b) - sq.Z(z - b) * sq.W(x - b) / sq.W(z - b)) - om_a / Wp_ca -
                        (om_z - Zp_ca / Wp_ca * om_a));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("scale form demands w <= b") {
    const auto m = testmodels::single();
    const ScaleFunction sq(m, 0.0), sp(m, 0.1);
    CHECK_THROWS_AS(omega_big_scaleform(sq, sp, PhiKind::W, 1.5, 1.0, 2.0, 3.0), InvalidArgument);
}
