#include "levyliq/fluctuation.hpp"
#include "levyliq/errors.hpp"

#include <cmath>

namespace levyliq {

using numerics::Complex;
using numerics::QuadratureSpec;

bool same_model(const LevyModel& a, const LevyModel& b) {
    if (a.drift() != b.drift() || a.gaussian_sigma() != b.gaussian_sigma() ||
        a.jump_rate() != b.jump_rate() || a.components().size() != b.components().size())
        return false;
    for (size_t i = 0; i < a.components().size(); ++i) {
        const auto& ca = a.components()[i];
        const auto& cb = b.components()[i];
        if (ca.kind != cb.kind || ca.intensity != cb.intensity || ca.rate != cb.rate) return false;
    }
    return true;
}

double omega_small(const ScaleFunction& sf_q, const ScaleFunction& sf_p, double w, double x) {
    require(x > 0.0 && x + w >= 0.0, "omega_small: need x > 0 and x + w >= 0");
    require(same_model(sf_q.model(), sf_p.model()), "omega_small: scale functions from different models");
    const double p = sf_p.q(), q = sf_q.q();
    if (p == q) return sf_q.W(x + w);
    const auto conv = numerics::integrate(
        [&](double z) { return sf_p.W(z + w) * sf_q.W(x - z); }, 0.0, x,
        QuadratureSpec{1e-12, 1e-10, {}, 48});
    return sf_p.W(w + x) - (p - q) * conv.value;
}

double ell_small(const ScaleFunction& sf_q, const ScaleFunction& sf_p, double w, double x) {
    require(x > 0.0 && x + w >= 0.0, "ell_small: need x > 0 and x + w >= 0");
    require(same_model(sf_q.model(), sf_p.model()), "ell_small: scale functions from different models");
    const double p = sf_p.q(), q = sf_q.q();
    if (p == q) return sf_q.Z(x + w);
    const auto conv = numerics::integrate(
        [&](double z) { return sf_p.Z(z + w) * sf_q.W(x - z); }, 0.0, x,
        QuadratureSpec{1e-12, 1e-10, {}, 48});
    return sf_p.Z(w + x) - (p - q) * conv.value;
}

double exit_up(const ScaleFunction& sf, double x, double w) {
    require(w > 0.0 && x <= w, "exit_up: need x <= w, w > 0");
    return sf.W(x) / sf.W(w);
}

double exit_down(const ScaleFunction& sf, double x, double w) {
    require(w > 0.0 && x <= w, "exit_down: need x <= w, w > 0");
    return sf.Z(x) - sf.Z(w) * sf.W(x) / sf.W(w);
}

double resolvent_density(const ScaleFunction& sf, double x, double y, double w) {
    require(w > 0.0 && x >= 0.0 && x <= w && y >= 0.0 && y <= w,
            "resolvent_density: need 0 <= x,y <= w");
    return sf.W(x) * sf.W(w - y) / sf.W(w) - sf.W(x - y);
}

namespace {

// int_l^u e^{-m t} dt with a series branch for small |m| (u - l).
Complex exp_integral0(Complex m, double l, double u) {
    const Complex arg = m * (u - l);
    if (std::abs(arg) < 1e-8) {
        const double len = u - l;
        return std::exp(-m * l) * len * (1.0 - 0.5 * arg + arg * arg / 6.0);
    }
    return (std::exp(-m * l) - std::exp(-m * u)) / m;
}

// int_l^u t e^{-m t} dt.
Complex exp_integral1(Complex m, double l, double u) {
    const Complex arg = m * (u - l);
    if (std::abs(arg) < 1e-8) {
        const double len = u - l;
        const double mid = 0.5 * (l + u);
        // t ~ mid across the short panel; second-order in arg
        return std::exp(-m * mid) * len * mid * (1.0 + arg * arg / 24.0);
    }
    return (l / m + 1.0 / (m * m)) * std::exp(-m * l) - (u / m + 1.0 / (m * m)) * std::exp(-m * u);
}

} // namespace

OmegaKernel::OmegaKernel(const LevyModel& solvent, const LevyModel& insolvent, double q,
                         double lambda, QuadratureSpec spec)
    : solvent_(solvent), insolvent_(insolvent), q_(q), lambda_(lambda),
      sf_q_(solvent, q), sf_p_(insolvent, q + lambda), spec_(std::move(spec)) {
    require(q >= 0.0 && lambda >= 0.0, "OmegaKernel: q, lambda must be >= 0");
}

double OmegaKernel::creep_factor(PhiKind phi, double s) const {
    switch (phi) {
        case PhiKind::W: return s < 0.0 ? 0.0 : (s == 0.0 ? sf_p_.W0_plus() : sf_p_.W(s));
        case PhiKind::WPrime:
            return s < 0.0 ? 0.0 : (s == 0.0 ? sf_p_.W_prime0_plus() : sf_p_.W_prime(s));
        case PhiKind::Z: return sf_p_.Z(s);
    }
    return 0.0;
}

double OmegaKernel::inner_integral(PhiKind phi, double y, double b, double w) const {
    const double A = y + b - w;       // argument of phi at theta = y
    const double theta0 = std::max(y, A);
    const double p = sf_p_.q();

    Complex total = 0.0;
    double phi_const = 0.0;           // constant part of phi on (0, inf)
    const std::vector<Complex>* amps = nullptr;
    std::vector<Complex> scratch;

    switch (phi) {
        case PhiKind::W:
            amps = &sf_p_.coefficients();
            break;
        case PhiKind::WPrime:
            scratch.resize(sf_p_.roots().size());
            for (size_t k = 0; k < scratch.size(); ++k)
                scratch[k] = sf_p_.coefficients()[k] * sf_p_.roots()[k];
            amps = &scratch;
            break;
        case PhiKind::Z:
            if (p == 0.0) {
                phi_const = 1.0;
                scratch.clear();
            } else {
                phi_const = sf_p_.z_constant();
                scratch = sf_p_.z_coefficients();
            }
            amps = &scratch;
            break;
    }

    if (theta0 > y) {
        const auto& roots = sf_p_.roots();
        for (const auto& comp : solvent_.components()) {
            for (size_t k = 0; k < amps->size(); ++k) {
                const Complex rho = roots[k];
                const Complex m = comp.rate + rho;
                // e^{rho A} int_y^{theta0} theta^j e^{-m theta} dtheta, written so
                // every exponent stays O(rho (b-w) - rate*y).
                Complex v;
                if (comp.kind == JumpComponent::Kind::Exponential) {
                    v = comp.intensity * comp.rate * std::exp(rho * A) * exp_integral0(m, y, theta0);
                } else {
                    v = comp.intensity * comp.rate * comp.rate * std::exp(rho * A) *
                        exp_integral1(m, y, theta0);
                }
                total += (*amps)[k] * v;
            }
            if (phi_const != 0.0)
                total += phi_const * (comp.intensity * comp.tail(y) - comp.intensity * comp.tail(theta0));
        }
    }
    if (phi == PhiKind::Z) total += levy_tail(solvent_, theta0);
    return total.real();
}

double OmegaKernel::omega(const OmegaArgs& args) const {
    const double w = args.w, b = args.b, x = args.x, z = args.z;
    require(b < x && x <= z, "OmegaKernel::omega: need b < x <= z");
    if (w > b && args.phi_kind != PhiKind::Z) return 0.0; // X(tau_b^-) <= b < w kills phi

    const double Wzb = sf_q_.W(z - b);
    const double Wxb = sf_q_.W(x - b);
    const double ratio_prime = sf_q_.W_prime(z - b) / Wzb;

    double value = 0.0;
    if (solvent_.gaussian_sigma() > 0.0)
        value += 0.5 * solvent_.gaussian_sigma() * solvent_.gaussian_sigma() *
                 creep_factor(args.phi_kind, b - w) * (sf_q_.W_prime(x - b) - Wxb * ratio_prime);

    QuadratureSpec spec = spec_;
    spec.kinks = {x - b};
    const auto integral = numerics::integrate(
        [&](double y) {
            return inner_integral(args.phi_kind, y, b, w) *
                   (sf_q_.W(z - b - y) / Wzb * Wxb - sf_q_.W(x - b - y));
        },
        0.0, z - b, spec);
    return value + integral.value;
}

double OmegaKernel::omega_inf(PhiKind phi, double w, double b, double x) const {
    require(b < x, "OmegaKernel::omega_inf: need b < x");
    if (w > b && phi != PhiKind::Z) return 0.0;

    const double phi_q = sf_q_.phi();
    const double Wxb = sf_q_.W(x - b);

    double value = 0.0;
    if (solvent_.gaussian_sigma() > 0.0)
        value += 0.5 * solvent_.gaussian_sigma() * solvent_.gaussian_sigma() *
                 creep_factor(phi, b - w) * (sf_q_.W_prime(x - b) - phi_q * Wxb);

    QuadratureSpec spec = spec_;
    spec.kinks = {x - b};
    const double decay = phi_q + 0.8 * solvent_.min_tail_rate();
    const auto integral = numerics::integrate_semi_inf(
        [&](double y) {
            return inner_integral(phi, y, b, w) * (std::exp(-phi_q * y) * Wxb - sf_q_.W(x - b - y));
        },
        0.0, decay, spec);
    return value + integral.value;
}

double omega_big_scaleform(const ScaleFunction& sf_q, const ScaleFunction& sf_p, PhiKind phi,
                           double w, double b, double x, double z, const QuadratureSpec& spec) {
    require(phi != PhiKind::WPrime, "omega_big_scaleform: phi must be W or Z");
    require(b < x && x <= z, "omega_big_scaleform: need b < x <= z");
    require(w <= b, "omega_big_scaleform: the concise form requires w <= b");
    require(same_model(sf_q.model(), sf_p.model()),
            "omega_big_scaleform: scale functions from different models");
    const double lambda = sf_p.q() - sf_q.q();
    require(lambda >= 0.0, "omega_big_scaleform: need sf_p rate >= sf_q rate");

    const auto phi_eval = [&](double s) { return phi == PhiKind::W ? sf_p.W(s) : sf_p.Z(s); };
    const auto block = [&](double xx) {
        if (lambda == 0.0) return phi_eval(xx - w);
        QuadratureSpec s = spec;
        if (w > b && w < xx) s.kinks.push_back(w);
        const auto conv = numerics::integrate(
            [&](double y) { return sf_q.W(xx - y) * phi_eval(y - w); }, b, xx, s);
        return phi_eval(xx - w) - lambda * conv.value;
    };
    return block(x) - sf_q.W(x - b) / sf_q.W(z - b) * block(z);
}

} // namespace levyliq
