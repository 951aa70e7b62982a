#pragma once

#include "levyliq/fluctuation.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace levyliq {

// Liquidation barrier a, rehabilitation barrier b, safety barrier c.
struct BarrierSystem {
    double a;
    double b;
    double c;
};

// Bounded measurable penalty of the surplus at liquidation, defined on
// (-inf, c].  `bound` is a sup bound used to certify truncation of the
// overshoot integrals; `kinks` lists points where f is not smooth.
struct PenaltyFunction {
    std::function<double(double)> f;
    double bound = 1.0;
    std::vector<double> kinks;
};

// The three-barrier problem: solvent model X, insolvent model X~, barriers
// a < b < c (c > 0), grace rate lambda > 0, discount q >= 0, start x > b.
// Scale functions at q (solvent) and q+lambda (insolvent) are built once.
class LiquidationProblem {
  public:
    LiquidationProblem(LevyModel solvent, LevyModel insolvent, BarrierSystem barriers,
                       double grace_rate, double discount, double start);

    const LevyModel& solvent() const noexcept { return kernel_->solvent(); }
    const LevyModel& insolvent() const noexcept { return kernel_->insolvent(); }
    const BarrierSystem& barriers() const noexcept { return barriers_; }
    double grace_rate() const noexcept { return kernel_->lambda(); }
    double discount() const noexcept { return kernel_->q(); }
    double start() const noexcept { return start_; }
    const OmegaKernel& kernel() const noexcept { return *kernel_; }

    // Same problem with a different discount rate (used for q -> 0 limits).
    LiquidationProblem with_discount(double q) const;

  private:
    std::shared_ptr<const OmegaKernel> kernel_;
    BarrierSystem barriers_;
    double start_;
};

// E_x[e^{-qT} f(U_T); T < zeta_z^+], Theorem-1 assembly with the c^z switch.
double gerber_shiu(const LiquidationProblem& problem, const PenaltyFunction& f, double z);

// E_x[e^{-qT}; U_T <= u, max U before T < z]; 0 for z <= x.
double joint_cdf(const LiquidationProblem& problem, double u, double z);

// Creeping mass P_x-weighted at the liquidation barrier:
// E_x[e^{-qT}; U_T = a, max U before T < z].  Zero when the insolvent model
// has no Gaussian part.
double atom_at_a(const LiquidationProblem& problem, double z);

// Mixed central difference of joint_cdf in (u, z); rejects u at the atom.
double joint_density_numeric(const LiquidationProblem& problem, double u, double z, double h);

// E_x[e^{-qT}; T < zeta_z^+] via the Omega_Z / Omega_W combination; requires
// q > 0 (q = 0 is evaluated at q = 1e-8) and a < b < c < z.
double liquidation_laplace(const LiquidationProblem& problem, double z);

// E_x[e^{-q zeta_z^+}; zeta_z^+ < T], z > c.
double exit_before_liquidation(const LiquidationProblem& problem, double z);

// P_x(T < infinity) at q = 0, z -> infinity.
double liquidation_probability(const LiquidationProblem& problem);

} // namespace levyliq
