#pragma once

#include "levyliq/fluctuation.hpp"

#include <optional>
#include <utility>

namespace levyliq {

// Single-model (X = X~) specializations built on the omega / ell kernels.
// The pair of scale functions at q and q + lambda is built once.
class ParisianKernel {
  public:
    ParisianKernel(const LevyModel& model, double q, double lambda);

    const LevyModel& model() const noexcept { return model_; }
    double q() const noexcept { return sf_q_.q(); }
    double lambda() const noexcept { return lambda_; }
    const ScaleFunction& sf_q() const noexcept { return sf_q_; }
    const ScaleFunction& sf_p() const noexcept { return sf_p_; }

    double omega(double w, double x) const; // omega^{(q,q+lambda)}(w,x)
    double ell(double w, double x) const;   // ell^{(q,q+lambda)}(w,x)

  private:
    LevyModel model_;
    double lambda_;
    ScaleFunction sf_q_;
    ScaleFunction sf_p_;
};

// Arguments of the Parisian identities: lower barrier a < 0 (absent means
// a = -infinity), start x in (0, z].
struct ParisianArgs {
    LevyModel model;
    double q = 0.0;
    double lambda = 0.0;
    std::optional<double> a;
    double x = 0.0;
    std::optional<double> z;
};

// K^{(q,q+lambda)}(a,b,x,z): the explicit scale-function combination whose
// recursion through the safety level c gives the single-model liquidation
// Laplace transform.
double k_function(const LevyModel& model, double q, double lambda, double a, double b, double x,
                  double z, double c);

// Single-model E_x[e^{-qT}; T < zeta_z^+] = K(x) + Omega K(c) / (W_{q+l}(c-a) - Omega(c)).
double liquidation_laplace_single(const LevyModel& model, double q, double lambda, double a,
                                  double b, double c, double x, double z);

// (down, up) = (E_x[e^{-q T_lambda(a)}; T_lambda(a) < tau_z^+],
//               E_x[e^{-q tau_z^+}; tau_z^+ < T_lambda(a)]).
std::pair<double, double> parisian_exit_laplace(const ParisianArgs& args);

// Density in u of E_x[e^{-q tau_lambda}; X at tau_lambda in du, before
// tau_a^- and tau_z^+], for u in (a, 0].
double parisian_gs_density(const ParisianArgs& args, double u);

// H^{(q+lambda,-lambda)}(x) = e^{Phi_{q+lambda} x} [1 - lambda int_0^x
// e^{-Phi_{q+lambda} y} W_q(y) dy].
double calH(const LevyModel& model, double q, double lambda, double x);

// P_x(T_lambda(a) < infinity) = 1 - psi'(0+) omega^{(0,lambda)}(-a,x) / Z_lambda(-a).
double parisian_ruin_prob_barrier(const LevyModel& model, double lambda, double a, double x);

// P_x(tau_lambda < infinity): the a -> -infinity limit in closed form.
double parisian_ruin_prob(const LevyModel& model, double lambda, double x);

} // namespace levyliq
