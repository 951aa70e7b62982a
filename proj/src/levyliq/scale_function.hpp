#pragma once

#include "levyliq/levy_model.hpp"
#include "levyliq/numerics.hpp"

#include <vector>

namespace levyliq {

using numerics::Complex;

// q-scale functions W_q, W_q', Z_q of a rational-family model, represented as
// the exponential sum W_q(x) = sum_j C_j exp(theta_j x) whose exponents are
// the zeros of (psi(theta) - q) times the jump-law denominator polynomial.
//
// Conventions: W_q(x) = 0 for x < 0 and Z_q(x) = 1 for x <= 0; W_q' at 0 is
// the right limit.  Evaluation factors out exp(Phi_q x) so large arguments do
// not overflow intermediate sums.
class ScaleFunction {
  public:
    ScaleFunction(const LevyModel& model, double q);

    double q() const noexcept { return q_; }
    const LevyModel& model() const noexcept { return model_; }
    const std::vector<Complex>& roots() const noexcept { return roots_; }
    const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }

    // Largest real root of the defining polynomial; equals Phi_q.
    double phi() const noexcept { return phi_; }

    double W(double x) const;
    double W_prime(double x) const; // x >= 0; x = 0 gives the right limit
    double Z(double x) const;

    // exp(-Phi_q x) W(x); stable for x beyond a few hundred.
    double W_scaled(double x) const;

    double W0_plus() const;       // sum of coefficients
    double W_prime0_plus() const; // sum of coefficient * root

    // Z_q(x) = z_constant + sum_j z_coeff_j exp(theta_j x) for x > 0 (q > 0).
    double z_constant() const noexcept { return z_const_; }
    const std::vector<Complex>& z_coefficients() const noexcept { return z_coeffs_; }

  private:
    LevyModel model_;
    double q_;
    std::vector<Complex> roots_;
    std::vector<Complex> coeffs_;
    std::vector<Complex> z_coeffs_;
    double z_const_ = 1.0;
    double phi_ = 0.0;
};

struct LaplaceCheckReport {
    double max_rel_error = 0.0;
    bool ok = false;
};

// Checks sum_j C_j / (theta - theta_j) == 1 / (psi(theta) - q) on a grid of
// theta > Phi_q; the two sides are computed independently of each other.
LaplaceCheckReport verify_laplace_transform(const ScaleFunction& sf,
                                            const std::vector<double>& theta_grid, double tol);

} // namespace levyliq
