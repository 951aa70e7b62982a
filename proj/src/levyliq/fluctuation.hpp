#pragma once

#include "levyliq/levy_model.hpp"
#include "levyliq/numerics.hpp"
#include "levyliq/scale_function.hpp"

namespace levyliq {

bool same_model(const LevyModel& a, const LevyModel& b);

// omega^{(q,p)}(w,x) = W_p(w+x) - (p-q) int_0^x W_p(z+w) W_q(x-z) dz,
// for x > 0, x+w >= 0.  Both scale functions must come from the same model.
double omega_small(const ScaleFunction& sf_q, const ScaleFunction& sf_p, double w, double x);

// ell^{(q,p)}(w,x): as omega_small with Z_p in the front seat.
double ell_small(const ScaleFunction& sf_q, const ScaleFunction& sf_p, double w, double x);

// E_x[e^{-q tau_w^+}; tau_w^+ < tau_0^-] = W_q(x)/W_q(w), x <= w.
double exit_up(const ScaleFunction& sf, double x, double w);

// E_x[e^{-q tau_0^-}; tau_0^- < tau_w^+] = Z_q(x) - Z_q(w) W_q(x)/W_q(w).
double exit_down(const ScaleFunction& sf, double x, double w);

// Density of the q-resolvent on [0, w] killed at exiting (0, w).
double resolvent_density(const ScaleFunction& sf, double x, double y, double w);

enum class PhiKind { W, WPrime, Z };

// Shift/barrier arguments of the Omega kernels.
struct OmegaArgs {
    double w;       // shift level, a <= w <= c in the liquidation use
    double b;       // rehabilitation barrier
    double x;       // start, x > b
    double z;       // upper level, x <= z
    PhiKind phi_kind = PhiKind::W;
};

// Evaluates Omega^{(q,q+lambda)}_phi(w,b,x,z) and its z -> infinity limit in
// the Levy-triplet form: the sigma^2/2 creeping term plus the double integral
// against the solvent jump measure, with the inner integral reduced to closed
// form for the exponential/Erlang family.  phi is built from the insolvent
// model at rate q+lambda.
class OmegaKernel {
  public:
    OmegaKernel(const LevyModel& solvent, const LevyModel& insolvent, double q, double lambda,
                numerics::QuadratureSpec spec = {});

    double q() const noexcept { return q_; }
    double lambda() const noexcept { return lambda_; }
    const LevyModel& solvent() const noexcept { return solvent_; }
    const LevyModel& insolvent() const noexcept { return insolvent_; }
    const ScaleFunction& solvent_sf() const noexcept { return sf_q_; }    // W_q
    const ScaleFunction& insolvent_sf() const noexcept { return sf_p_; }  // W~_{q+lambda}

    double omega(const OmegaArgs& args) const;                            // Eq. with finite z
    double omega_inf(PhiKind phi, double w, double b, double x) const;    // z -> infinity

    // Closed-form inner integral int_y^inf phi_{q+lambda}(y - theta + b - w)
    // upsilon(d theta); exposed for the Gerber-Shiu assembly.
    double inner_integral(PhiKind phi, double y, double b, double w) const;

  private:
    double creep_factor(PhiKind phi, double s) const; // phi_{q+lambda}(s) with 0+ limits

    LevyModel solvent_;
    LevyModel insolvent_;
    double q_;
    double lambda_;
    ScaleFunction sf_q_;
    ScaleFunction sf_p_;
    numerics::QuadratureSpec spec_;
};

// Concise single-model expression of Omega (phi in {W, Z} only), valid for
// w <= b; equals the triplet form when the two models coincide.
double omega_big_scaleform(const ScaleFunction& sf_q, const ScaleFunction& sf_p, PhiKind phi,
                           double w, double b, double x, double z,
                           const numerics::QuadratureSpec& spec = {});

} // namespace levyliq
