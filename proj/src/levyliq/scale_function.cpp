#include "levyliq/scale_function.hpp"
#include "levyliq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace levyliq {

namespace {

using Poly = std::vector<double>; // ascending coefficients

Poly mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

void add_in_place(Poly& a, const Poly& b, double scale) {
    if (b.size() > a.size()) a.resize(b.size(), 0.0);
    for (size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
}

Poly denominator_factor(const JumpComponent& comp) {
    Poly lin{comp.rate, 1.0};
    return comp.kind == JumpComponent::Kind::Erlang2 ? mul(lin, lin) : lin;
}

// (psi(theta) - q) * prod_i D_i(theta) expanded as a polynomial.
Poly defining_polynomial(const LevyModel& model, double q) {
    const auto& comps = model.components();
    Poly denom{1.0};
    for (const auto& comp : comps) denom = mul(denom, denominator_factor(comp));

    Poly base{-(q + model.jump_rate()), model.drift()};
    if (model.gaussian_sigma() > 0.0)
        base.push_back(0.5 * model.gaussian_sigma() * model.gaussian_sigma());

    Poly p = mul(base, denom);
    for (size_t i = 0; i < comps.size(); ++i) {
        Poly others{1.0};
        for (size_t j = 0; j < comps.size(); ++j)
            if (j != i) others = mul(others, denominator_factor(comps[j]));
        const double numer = comps[i].kind == JumpComponent::Kind::Exponential
                                 ? comps[i].intensity * comps[i].rate
                                 : comps[i].intensity * comps[i].rate * comps[i].rate;
        add_in_place(p, others, numer);
    }
    return p;
}

Complex eval_poly(const Poly& p, Complex x) {
    Complex acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

} // namespace

ScaleFunction::ScaleFunction(const LevyModel& model, double q) : model_(model), q_(q) {
    require(q >= 0.0, "ScaleFunction: q must be >= 0");

    const Poly p = defining_polynomial(model, q);
    Poly dp(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * static_cast<double>(i);

    roots_ = numerics::poly_roots(p);
    if (numerics::min_relative_root_gap(roots_) < 1e-7)
        throw DegenerateRoots(
            "ScaleFunction: repeated zeros of the defining polynomial; the exponential-sum "
            "representation needs simple roots (perturb q by ~1e-9 and retry)");

    Poly denom{1.0};
    for (const auto& comp : model.components()) denom = mul(denom, denominator_factor(comp));

    coeffs_.resize(roots_.size());
    for (size_t j = 0; j < roots_.size(); ++j)
        coeffs_[j] = eval_poly(denom, roots_[j]) / eval_poly(dp, roots_[j]);

    phi_ = -std::numeric_limits<double>::infinity();
    for (const Complex& r : roots_)
        if (r.imag() == 0.0) phi_ = std::max(phi_, r.real());
    if (!std::isfinite(phi_))
        throw SolverFailure("ScaleFunction: no real root found for Phi_q");

    if (q_ > 0.0) {
        z_coeffs_.resize(roots_.size());
        Complex csum = 0.0;
        for (size_t j = 0; j < roots_.size(); ++j) {
            z_coeffs_[j] = q_ * coeffs_[j] / roots_[j];
            csum += z_coeffs_[j];
        }
        z_const_ = 1.0 - csum.real();
    }
}

double ScaleFunction::W(double x) const {
    if (x < 0.0) return 0.0;
    Complex acc = 0.0;
    for (size_t j = 0; j < roots_.size(); ++j)
        acc += coeffs_[j] * std::exp((roots_[j] - phi_) * x);
    return std::exp(phi_ * x) * acc.real();
}

double ScaleFunction::W_scaled(double x) const {
    if (x < 0.0) return 0.0;
    Complex acc = 0.0;
    for (size_t j = 0; j < roots_.size(); ++j)
        acc += coeffs_[j] * std::exp((roots_[j] - phi_) * x);
    return acc.real();
}

double ScaleFunction::W_prime(double x) const {
    if (x < 0.0) return 0.0;
    Complex acc = 0.0;
    for (size_t j = 0; j < roots_.size(); ++j)
        acc += coeffs_[j] * roots_[j] * std::exp((roots_[j] - phi_) * x);
    return std::exp(phi_ * x) * acc.real();
}

double ScaleFunction::Z(double x) const {
    if (x <= 0.0 || q_ == 0.0) return 1.0;
    Complex acc = 0.0;
    for (size_t j = 0; j < roots_.size(); ++j)
        acc += z_coeffs_[j] * std::exp((roots_[j] - phi_) * x);
    return z_const_ + std::exp(phi_ * x) * acc.real();
}

double ScaleFunction::W0_plus() const {
    Complex acc = 0.0;
    for (const Complex& c : coeffs_) acc += c;
    return acc.real();
}

double ScaleFunction::W_prime0_plus() const {
    Complex acc = 0.0;
    for (size_t j = 0; j < roots_.size(); ++j) acc += coeffs_[j] * roots_[j];
    return acc.real();
}

LaplaceCheckReport verify_laplace_transform(const ScaleFunction& sf,
                                            const std::vector<double>& theta_grid, double tol) {
    LaplaceCheckReport report;
    for (const double theta : theta_grid) {
        require(theta > sf.phi(), "verify_laplace_transform: theta must exceed Phi_q");
        Complex transform = 0.0;
        for (size_t j = 0; j < sf.roots().size(); ++j)
            transform += sf.coefficients()[j] / (theta - sf.roots()[j]);
        const double target = 1.0 / (laplace_exponent(sf.model(), theta) - sf.q());
        const double rel = std::abs(transform.real() - target) / std::abs(target);
        report.max_rel_error = std::max(report.max_rel_error, rel);
    }
    report.ok = report.max_rel_error < tol;
    return report;
}

} // namespace levyliq
