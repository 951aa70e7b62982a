#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace levyliq {

// Jump-size distribution on (0, inf).  Atomic kinds are Exponential(gamma)
// and Erlang2(beta); Mixture combines laws with nonnegative weights summing
// to one.
class JumpLaw {
  public:
    enum class Kind { Exponential, Erlang2, Mixture };

    static JumpLaw exponential(double gamma);
    static JumpLaw erlang2(double beta);
    static JumpLaw mixture(std::vector<std::pair<double, JumpLaw>> parts);

    Kind kind() const noexcept { return kind_; }
    double rate_param() const noexcept { return rate_param_; }
    const std::vector<std::pair<double, JumpLaw>>& parts() const noexcept { return parts_; }

    double density(double y) const;
    double tail(double y) const;
    double mean() const;
    double mgf_neg(double theta) const; // E exp(-theta Y), theta > -min_tail_rate
    double min_tail_rate() const;       // slowest exponential decay rate of the tail

  private:
    JumpLaw(Kind kind, double rate_param) : kind_(kind), rate_param_(rate_param) {}

    Kind kind_;
    double rate_param_ = 0.0;
    std::vector<std::pair<double, JumpLaw>> parts_;
};

// One atomic piece of the Levy measure with its absolute intensity; models
// are flattened into these for the closed-form kernels and the simulator.
struct JumpComponent {
    enum class Kind { Exponential, Erlang2 };
    Kind kind;
    double intensity;  // Levy-measure mass of this component per unit time
    double rate;       // gamma (Exponential) or beta (Erlang2)

    double density(double y) const;
    double tail(double y) const;
    double mean() const;
};

// Spectrally negative Levy process: drift + sigma B_t - compound Poisson
// downward jumps.  Immutable after construction.
class LevyModel {
  public:
    LevyModel(double drift, double gaussian_sigma, double jump_rate, JumpLaw jump_law);

    // Convenience for measures given as a list of (component, intensity).
    static LevyModel from_components(double drift, double gaussian_sigma,
                                     std::vector<JumpComponent> components);

    double drift() const noexcept { return drift_; }
    double gaussian_sigma() const noexcept { return sigma_; }
    double jump_rate() const noexcept { return jump_rate_; }
    const JumpLaw& jump_law() const noexcept { return *jump_law_; }
    const std::vector<JumpComponent>& components() const noexcept { return components_; }
    double min_tail_rate() const;

  private:
    double drift_;
    double sigma_;
    double jump_rate_;
    std::shared_ptr<const JumpLaw> jump_law_;
    std::vector<JumpComponent> components_;
};

// psi(theta) = drift*theta + sigma^2 theta^2 / 2 + jump_rate (E e^{-theta Y} - 1),
// theta >= 0.
double laplace_exponent(const LevyModel& model, double theta);

// Rational continuation of psi to theta in (-min_tail_rate, inf); used for
// adjustment-coefficient bounds.
double laplace_exponent_ext(const LevyModel& model, double theta);

double laplace_exponent_derivative(const LevyModel& model, double theta);

// psi'(0+) = drift - jump_rate * mean jump.
double safety_loading(const LevyModel& model);

// Right inverse Phi_q = sup{theta >= 0 : psi(theta) = q}; bracketing plus
// safeguarded Newton, |psi - q| <= 1e-12 * max(1, q).
double phi(const LevyModel& model, double q);

// jump_rate * P(Y > y): the Levy measure of (y, inf).
double levy_tail(const LevyModel& model, double y);

} // namespace levyliq
