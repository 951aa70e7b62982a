#include "levyliq/parisian.hpp"
#include "levyliq/errors.hpp"

#include <cmath>

namespace levyliq {

using numerics::QuadratureSpec;

ParisianKernel::ParisianKernel(const LevyModel& model, double q, double lambda)
    : model_(model), lambda_(lambda), sf_q_(model, q), sf_p_(model, q + lambda) {
    require(q >= 0.0 && lambda > 0.0, "ParisianKernel: need q >= 0 and lambda > 0");
}

double ParisianKernel::omega(double w, double x) const { return omega_small(sf_q_, sf_p_, w, x); }

double ParisianKernel::ell(double w, double x) const { return ell_small(sf_q_, sf_p_, w, x); }

double k_function(const LevyModel& model, double q, double lambda, double a, double b, double x,
                  double z, double c) {
    require(q > 0.0 && lambda > 0.0, "k_function: need q, lambda > 0");
    require(a < b && b < c && c < z && b < x && x <= z, "k_function: need a < b < c < z, b < x <= z");

    const ScaleFunction sfq(model, q);
    const ScaleFunction sfp(model, q + lambda);
    const double qw = q / (q + lambda), lw = lambda / (q + lambda);
    const double Wp_ca = sfp.W(c - a), Zp_ca = sfp.Z(c - a);

    const double om_w = omega_big_scaleform(sfq, sfp, PhiKind::W, a, b, x, z);
    const double om_z = omega_big_scaleform(sfq, sfp, PhiKind::Z, a, b, x, z);
    return qw * (om_z - Zp_ca / Wp_ca * om_w) +
           lw * (sfq.Z(x - b) - sfq.Z(z - b) / sfq.W(z - b) * sfq.W(x - b) - om_w / Wp_ca);
}

double liquidation_laplace_single(const LevyModel& model, double q, double lambda, double a,
                                  double b, double c, double x, double z) {
    const ScaleFunction sfq(model, q);
    const ScaleFunction sfp(model, q + lambda);
    const double om_x = omega_big_scaleform(sfq, sfp, PhiKind::W, a, b, x, z);
    const double om_c = omega_big_scaleform(sfq, sfp, PhiKind::W, a, b, c, z);
    return k_function(model, q, lambda, a, b, x, z, c) +
           om_x / (sfp.W(c - a) - om_c) * k_function(model, q, lambda, a, b, c, z, c);
}

std::pair<double, double> parisian_exit_laplace(const ParisianArgs& args) {
    require(args.a.has_value() && *args.a < 0.0, "parisian_exit_laplace: need lower barrier a < 0");
    require(args.z.has_value(), "parisian_exit_laplace: need upper level z");
    const double a = *args.a, z = *args.z, x = args.x;
    const double q = args.q, lambda = args.lambda;
    require(q >= 0.0 && lambda > 0.0, "parisian_exit_laplace: need q >= 0, lambda > 0");
    require(0.0 < x && x <= z, "parisian_exit_laplace: need 0 < x <= z");

    const ParisianKernel kern(args.model, q, lambda);
    const double om_x = kern.omega(-a, x), om_z = kern.omega(-a, z);
    const double up = om_x / om_z;
    const double down = q / (q + lambda) * (kern.ell(-a, x) - kern.ell(-a, z) / om_z * om_x) +
                        lambda / (q + lambda) *
                            (kern.sf_q().Z(x) - kern.sf_q().Z(z) / om_z * om_x);
    return {down, up};
}

double parisian_gs_density(const ParisianArgs& args, double u) {
    require(args.z.has_value(), "parisian_gs_density: need upper level z");
    const double z = *args.z, x = args.x;
    require(0.0 < x && x <= z, "parisian_gs_density: need 0 < x <= z");
    require(args.lambda > 0.0, "parisian_gs_density: need lambda > 0");
    require(u <= 0.0, "parisian_gs_density: need u <= 0");

    const ParisianKernel kern(args.model, args.q, args.lambda);
    const double om_u_x = kern.omega(-u, x);
    const double om_u_z = kern.omega(-u, z);
    if (args.a.has_value()) {
        const double a = *args.a;
        require(a < u, "parisian_gs_density: need u in (a, 0]");
        return args.lambda * (kern.omega(-a, x) / kern.omega(-a, z) * om_u_z - om_u_x);
    }
    // a -> -infinity: the omega ratio collapses to the H-function ratio.
    const double hx = calH(args.model, args.q, args.lambda, x);
    const double hz = calH(args.model, args.q, args.lambda, z);
    return args.lambda * (hx / hz * om_u_z - om_u_x);
}

double calH(const LevyModel& model, double q, double lambda, double x) {
    require(x >= 0.0, "calH: need x >= 0");
    if (x == 0.0) return 1.0;
    const ScaleFunction sfq(model, q);
    const double phi_p = lambda == 0.0 ? sfq.phi() : phi(model, q + lambda);
    if (lambda == 0.0) return std::exp(phi_p * x);
    // e^{phi_p x} - lambda int_0^x e^{phi_p (x-y)} W_q(y) dy, assembled in the
    // shifted form so large x does not overflow the integrand.
    const auto r = numerics::integrate(
        [&](double y) { return std::exp(phi_p * (x - y)) * sfq.W(y); }, 0.0, x,
        QuadratureSpec{1e-12, 1e-10, {}, 48});
    return std::exp(phi_p * x) - lambda * r.value;
}

double parisian_ruin_prob_barrier(const LevyModel& model, double lambda, double a, double x) {
    require(a < 0.0 && x > 0.0, "parisian_ruin_prob_barrier: need a < 0 < x");
    const double loading = safety_loading(model);
    require(loading > 0.0, "parisian_ruin_prob_barrier: needs positive safety loading");
    const ParisianKernel kern(model, 0.0, lambda);
    return 1.0 - loading * kern.omega(-a, x) / kern.sf_p().Z(-a);
}

double parisian_ruin_prob(const LevyModel& model, double lambda, double x) {
    require(x >= 0.0, "parisian_ruin_prob: need x >= 0");
    require(lambda > 0.0, "parisian_ruin_prob: need lambda > 0");
    const double loading = safety_loading(model);
    require(loading > 0.0, "parisian_ruin_prob: needs positive safety loading");

    const ScaleFunction sf0(model, 0.0);
    const double phi_l = phi(model, lambda);
    if (x == 0.0) return 1.0 - loading * phi_l / lambda;
    const auto r = numerics::integrate(
        [&](double zz) { return std::exp(phi_l * (zz - x)) * sf0.W(x - zz); }, 0.0, x,
        QuadratureSpec{1e-13, 1e-11, {}, 48});
    // bracket written as e^{phi x}(1 - lambda int e^{phi(z-x)} W(x-z) dz / 1) with
    // the common e^{phi x} kept outside to avoid cancellation for large x
    return 1.0 - loading * phi_l / lambda * std::exp(phi_l * x) * (1.0 - lambda * r.value);
}

} // namespace levyliq
