#include "levyliq/liquidation.hpp"
#include "levyliq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace levyliq {

using numerics::QuadratureSpec;

LiquidationProblem::LiquidationProblem(LevyModel solvent, LevyModel insolvent,
                                       BarrierSystem barriers, double grace_rate,
                                       double discount, double start)
    : barriers_(barriers), start_(start) {
    require(barriers.a < barriers.b && barriers.b < barriers.c,
            "LiquidationProblem: barriers must satisfy a < b < c");
    require(barriers.c > 0.0, "LiquidationProblem: need c > 0");
    require(grace_rate > 0.0, "LiquidationProblem: grace rate must be > 0");
    require(discount >= 0.0, "LiquidationProblem: discount must be >= 0");
    require(start > barriers.b, "LiquidationProblem: start must exceed b");
    require(safety_loading(solvent) > 0.0,
            "LiquidationProblem: solvent model needs positive safety loading");
    kernel_ = std::make_shared<const OmegaKernel>(std::move(solvent), std::move(insolvent),
                                                  discount, grace_rate);
}

LiquidationProblem LiquidationProblem::with_discount(double q) const {
    return LiquidationProblem(solvent(), insolvent(), barriers_, grace_rate(), q, start_);
}

namespace {

// Weight functions of the Theorem-1 integrals for one choice of f.
struct PenaltyWeights {
    std::function<double(double)> insolvent_jump; // y -> int_{y-a}^inf f(y-th) ups~(dth)
    std::function<double(double)> grace;          // y -> f(y), weight of the lambda-resolvent term
    std::function<double(double)> solvent_jump;   // y -> int_{y-a}^inf f(y-th) ups(dth)
    double f_at_a = 0.0;
    std::vector<double> grace_kinks;
};

// The x-local block of Theorem 1 evaluated at start xx with cap cz = c ^ z.
double local_block(const LiquidationProblem& pr, const PenaltyWeights& wts, double xx, double z) {
    const auto& kern = pr.kernel();
    const auto& sfq = kern.solvent_sf();
    const auto& sfp = kern.insolvent_sf();
    const double a = pr.barriers().a, b = pr.barriers().b, c = pr.barriers().c;
    const double cz = std::min(c, z);
    const double lambda = pr.grace_rate();

    const double Wp_cza = sfp.W(cz - a);
    const double om_a = kern.omega({a, b, xx, z, PhiKind::W});

    double value = 0.0;
    const double sig_t = pr.insolvent().gaussian_sigma();
    if (sig_t > 0.0 && wts.f_at_a != 0.0) {
        const double om_ap = kern.omega({a, b, xx, z, PhiKind::WPrime});
        value += 0.5 * sig_t * sig_t * wts.f_at_a *
                 (om_ap - om_a * sfp.W_prime(cz - a) / Wp_cza);
    }

    // Omega_W(y, b, xx, z) is entire in the shift y, so a Chebyshev cache over
    // [a, b] replaces one quadrature per integrand evaluation; for y > b it is
    // identically zero.
    std::optional<numerics::Chebyshev> om_shift;
    const double shift_hi = std::min(b, cz);
    if ((wts.insolvent_jump || wts.grace) && shift_hi > a)
        om_shift.emplace(
            [&](double y) { return kern.omega({y, b, xx, z, PhiKind::W}); }, a, shift_hi, 24);

    const auto resolvent = [&](double y) {
        const double om_y = y < shift_hi ? (*om_shift)(y) : 0.0;
        return om_a * sfp.W(cz - y) / Wp_cza - om_y;
    };

    QuadratureSpec spec;
    spec.kinks = {b};
    if (wts.insolvent_jump) {
        const auto r = numerics::integrate(
            [&](double y) { return wts.insolvent_jump(y) * resolvent(y); }, a, cz, spec);
        value += r.value;
    }
    if (wts.grace) {
        QuadratureSpec gspec = spec;
        for (double k : wts.grace_kinks) gspec.kinks.push_back(k);
        const auto r = numerics::integrate(
            [&](double y) { return wts.grace(y) * resolvent(y); }, a, cz, gspec);
        value += lambda * r.value;
    }
    if (wts.solvent_jump) {
        const double Wzb = sfq.W(z - b);
        const double Wxb = sfq.W(xx - b);
        QuadratureSpec sspec;
        sspec.kinks = {xx};
        const auto r = numerics::integrate(
            [&](double y) {
                return wts.solvent_jump(y) * (sfq.W(z - y) / Wzb * Wxb - sfq.W(xx - y));
            },
            b, z, sspec);
        value += r.value;
    }
    return value;
}

// Local block at xx plus, for z > c, the recursion through the safety level.
double theorem1_value(const LiquidationProblem& pr, const PenaltyWeights& wts, double z) {
    const auto& kern = pr.kernel();
    const double a = pr.barriers().a, b = pr.barriers().b, c = pr.barriers().c;
    const double x = pr.start();
    require(b < x && x <= z, "gerber_shiu: need b < x <= z");

    double value = local_block(pr, wts, x, z);
    if (z > c) {
        const double om_x = kern.omega({a, b, x, z, PhiKind::W});
        const double om_c = kern.omega({a, b, c, z, PhiKind::W});
        const double denom = kern.insolvent_sf().W(c - a) - om_c;
        value += om_x / denom * local_block(pr, wts, c, z);
    }
    return value;
}

// int_{y-lo}^inf f(y - th) measure(dth) as an integral over the landing site.
double overshoot_integral(const LevyModel& model, const PenaltyFunction& f, double y, double lo) {
    if (model.jump_rate() == 0.0) return 0.0;
    const double beta_min = model.min_tail_rate();
    const double u_min = lo - 60.0 / beta_min;
    QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    for (double k : f.kinks)
        if (k > u_min && k < lo) spec.kinks.push_back(k);
    const auto r = numerics::integrate(
        [&](double u) { return f.f(u) * model.jump_rate() * model.jump_law().density(y - u); },
        u_min, lo, spec);
    return r.value;
}

} // namespace

double gerber_shiu(const LiquidationProblem& problem, const PenaltyFunction& f, double z) {
    require(static_cast<bool>(f.f), "gerber_shiu: penalty function is empty");
    const double a = problem.barriers().a;

    PenaltyWeights wts;
    wts.f_at_a = f.f(a);
    wts.insolvent_jump = [&, a](double y) {
        return overshoot_integral(problem.insolvent(), f, y, a);
    };
    wts.solvent_jump = [&, a](double y) { return overshoot_integral(problem.solvent(), f, y, a); };
    wts.grace = f.f;
    wts.grace_kinks = f.kinks;
    return theorem1_value(problem, wts, z);
}

double joint_cdf(const LiquidationProblem& problem, double u, double z) {
    if (z <= problem.start()) return 0.0;
    const double a = problem.barriers().a, c = problem.barriers().c;

    PenaltyWeights wts;
    if (u < a) {
        // Only jump overshoots land below a; the grace and creeping terms drop.
        wts.insolvent_jump = [&, u](double y) { return levy_tail(problem.insolvent(), y - u); };
        wts.solvent_jump = [&, u](double y) { return levy_tail(problem.solvent(), y - u); };
    } else {
        const double cap = std::min(std::min(u, c), z);
        wts.f_at_a = 1.0;
        wts.insolvent_jump = [&, a](double y) { return levy_tail(problem.insolvent(), y - a); };
        wts.solvent_jump = [&, a](double y) { return levy_tail(problem.solvent(), y - a); };
        wts.grace = [cap](double y) { return y <= cap ? 1.0 : 0.0; };
        wts.grace_kinks = {cap};
    }
    return theorem1_value(problem, wts, z);
}

double atom_at_a(const LiquidationProblem& problem, double z) {
    require(z > problem.start(), "atom_at_a: need z > start");
    if (problem.insolvent().gaussian_sigma() == 0.0) return 0.0;

    PenaltyWeights wts;
    wts.f_at_a = 1.0;
    return theorem1_value(problem, wts, z);
}

double joint_density_numeric(const LiquidationProblem& problem, double u, double z, double h) {
    require(h > 0.0, "joint_density_numeric: h must be > 0");
    const double a = problem.barriers().a;
    if (std::abs(u - a) <= h)
        throw AtomPoint("joint_density_numeric: u sits on the atom at the liquidation barrier; "
                        "use atom_at_a");
    const auto F = [&](double uu, double zz) { return joint_cdf(problem, uu, zz); };
    return (F(u + h, z + h) - F(u - h, z + h) - F(u + h, z - h) + F(u - h, z - h)) /
           (4.0 * h * h);
}

double liquidation_laplace(const LiquidationProblem& problem, double z) {
    const double q = problem.discount();
    if (q == 0.0) return liquidation_laplace(problem.with_discount(1e-8), z);

    const auto& kern = problem.kernel();
    const auto& sfq = kern.solvent_sf();
    const auto& sfp = kern.insolvent_sf();
    const double a = problem.barriers().a, b = problem.barriers().b, c = problem.barriers().c;
    const double x = problem.start();
    const double lambda = problem.grace_rate();
    require(c < z && b < x && x <= z, "liquidation_laplace: need a < b < c < z and b < x <= z");

    const double Wp_ca = sfp.W(c - a);
    const double Zp_ca = sfp.Z(c - a);
    const double qw = q / (q + lambda), lw = lambda / (q + lambda);

    const auto piece = [&](double xx) {
        const double om_w = kern.omega({a, b, xx, z, PhiKind::W});
        const double om_z = kern.omega({a, b, xx, z, PhiKind::Z});
        return qw * (om_z - Zp_ca / Wp_ca * om_w) +
               lw * (sfq.Z(xx - b) - sfq.Z(z - b) * sfq.W(xx - b) / sfq.W(z - b) - om_w / Wp_ca);
    };

    const double om_x = kern.omega({a, b, x, z, PhiKind::W});
    const double om_c = kern.omega({a, b, c, z, PhiKind::W});
    return piece(x) + om_x / (Wp_ca - om_c) * piece(c);
}

double exit_before_liquidation(const LiquidationProblem& problem, double z) {
    const auto& kern = problem.kernel();
    const auto& sfq = kern.solvent_sf();
    const double a = problem.barriers().a, b = problem.barriers().b, c = problem.barriers().c;
    const double x = problem.start();
    require(z > c && b < x && x <= z, "exit_before_liquidation: need z > c and b < x <= z");

    const double om_x = kern.omega({a, b, x, z, PhiKind::W});
    const double om_c = kern.omega({a, b, c, z, PhiKind::W});
    return sfq.W(x - b) / sfq.W(z - b) +
           om_x / (kern.insolvent_sf().W(c - a) - om_c) * sfq.W(c - b) / sfq.W(z - b);
}

double liquidation_probability(const LiquidationProblem& problem) {
    const LiquidationProblem pr0 =
        problem.discount() == 0.0 ? problem : problem.with_discount(0.0);
    const auto& kern = pr0.kernel();
    const auto& sfq = kern.solvent_sf();
    const double a = pr0.barriers().a, b = pr0.barriers().b, c = pr0.barriers().c;
    const double x = pr0.start();

    const double loading = safety_loading(pr0.solvent());
    const double om_x = kern.omega_inf(PhiKind::W, a, b, x);
    const double om_c = kern.omega_inf(PhiKind::W, a, b, c);
    const double denom = kern.insolvent_sf().W(c - a) - om_c;
    return 1.0 - loading * (sfq.W(x - b) + sfq.W(c - b) * om_x / denom);
}

} // namespace levyliq
