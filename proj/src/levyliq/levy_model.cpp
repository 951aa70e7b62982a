#include "levyliq/levy_model.hpp"
#include "levyliq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace levyliq {

JumpLaw JumpLaw::exponential(double gamma) {
    require(gamma > 0.0, "JumpLaw::exponential: rate must be > 0");
    return JumpLaw(Kind::Exponential, gamma);
}

JumpLaw JumpLaw::erlang2(double beta) {
    require(beta > 0.0, "JumpLaw::erlang2: rate must be > 0");
    return JumpLaw(Kind::Erlang2, beta);
}

JumpLaw JumpLaw::mixture(std::vector<std::pair<double, JumpLaw>> parts) {
    require(!parts.empty(), "JumpLaw::mixture: empty mixture");
    double total = 0.0;
    for (const auto& [w, law] : parts) {
        require(w >= 0.0, "JumpLaw::mixture: negative weight");
        total += w;
    }
    require(std::abs(total - 1.0) < 1e-9, "JumpLaw::mixture: weights must sum to 1");
    JumpLaw law(Kind::Mixture, 0.0);
    law.parts_ = std::move(parts);
    return law;
}

double JumpLaw::density(double y) const {
    if (y <= 0.0) return 0.0;
    switch (kind_) {
        case Kind::Exponential: return rate_param_ * std::exp(-rate_param_ * y);
        case Kind::Erlang2: return rate_param_ * rate_param_ * y * std::exp(-rate_param_ * y);
        case Kind::Mixture: {
            double s = 0.0;
            for (const auto& [w, law] : parts_) s += w * law.density(y);
            return s;
        }
    }
    return 0.0;
}

double JumpLaw::tail(double y) const {
    if (y <= 0.0) return 1.0;
    switch (kind_) {
        case Kind::Exponential: return std::exp(-rate_param_ * y);
        case Kind::Erlang2: return (1.0 + rate_param_ * y) * std::exp(-rate_param_ * y);
        case Kind::Mixture: {
            double s = 0.0;
            for (const auto& [w, law] : parts_) s += w * law.tail(y);
            return s;
        }
    }
    return 0.0;
}

double JumpLaw::mean() const {
    switch (kind_) {
        case Kind::Exponential: return 1.0 / rate_param_;
        case Kind::Erlang2: return 2.0 / rate_param_;
        case Kind::Mixture: {
            double s = 0.0;
            for (const auto& [w, law] : parts_) s += w * law.mean();
            return s;
        }
    }
    return 0.0;
}

double JumpLaw::mgf_neg(double theta) const {
    switch (kind_) {
        case Kind::Exponential: return rate_param_ / (rate_param_ + theta);
        case Kind::Erlang2: {
            const double r = rate_param_ / (rate_param_ + theta);
            return r * r;
        }
        case Kind::Mixture: {
            double s = 0.0;
            for (const auto& [w, law] : parts_) s += w * law.mgf_neg(theta);
            return s;
        }
    }
    return 0.0;
}

double JumpLaw::min_tail_rate() const {
    switch (kind_) {
        case Kind::Exponential:
        case Kind::Erlang2: return rate_param_;
        case Kind::Mixture: {
            double m = std::numeric_limits<double>::infinity();
            for (const auto& [w, law] : parts_)
                if (w > 0.0) m = std::min(m, law.min_tail_rate());
            return m;
        }
    }
    return 0.0;
}

double JumpComponent::density(double y) const {
    if (y <= 0.0) return 0.0;
    return kind == Kind::Exponential ? rate * std::exp(-rate * y)
                                     : rate * rate * y * std::exp(-rate * y);
}

double JumpComponent::tail(double y) const {
    if (y <= 0.0) return 1.0;
    return kind == Kind::Exponential ? std::exp(-rate * y)
                                     : (1.0 + rate * y) * std::exp(-rate * y);
}

double JumpComponent::mean() const {
    return kind == Kind::Exponential ? 1.0 / rate : 2.0 / rate;
}

namespace {

void flatten(const JumpLaw& law, double intensity, std::vector<JumpComponent>& out) {
    if (intensity <= 0.0) return;
    switch (law.kind()) {
        case JumpLaw::Kind::Exponential:
            out.push_back({JumpComponent::Kind::Exponential, intensity, law.rate_param()});
            break;
        case JumpLaw::Kind::Erlang2:
            out.push_back({JumpComponent::Kind::Erlang2, intensity, law.rate_param()});
            break;
        case JumpLaw::Kind::Mixture:
            for (const auto& [w, part] : law.parts()) flatten(part, intensity * w, out);
            break;
    }
}

} // namespace

LevyModel::LevyModel(double drift, double gaussian_sigma, double jump_rate, JumpLaw jump_law)
    : drift_(drift), sigma_(gaussian_sigma), jump_rate_(jump_rate),
      jump_law_(std::make_shared<const JumpLaw>(std::move(jump_law))) {
    require(sigma_ >= 0.0, "LevyModel: gaussian_sigma must be >= 0");
    require(jump_rate_ >= 0.0, "LevyModel: jump_rate must be >= 0");
    require(sigma_ > 0.0 || (drift_ > 0.0 && jump_rate_ > 0.0),
            "LevyModel: monotone paths excluded (need sigma > 0, or drift > 0 with jumps)");
    flatten(*jump_law_, jump_rate_, components_);
}

LevyModel LevyModel::from_components(double drift, double gaussian_sigma,
                                     std::vector<JumpComponent> components) {
    double total = 0.0;
    for (const auto& comp : components) {
        require(comp.intensity > 0.0, "LevyModel: component intensity must be > 0");
        total += comp.intensity;
    }
    require(total > 0.0, "LevyModel: at least one jump component required");
    std::vector<std::pair<double, JumpLaw>> parts;
    parts.reserve(components.size());
    for (const auto& comp : components) {
        JumpLaw law = comp.kind == JumpComponent::Kind::Exponential
                          ? JumpLaw::exponential(comp.rate)
                          : JumpLaw::erlang2(comp.rate);
        parts.emplace_back(comp.intensity / total, std::move(law));
    }
    if (parts.size() == 1) return LevyModel(drift, gaussian_sigma, total, std::move(parts[0].second));
    return LevyModel(drift, gaussian_sigma, total, JumpLaw::mixture(std::move(parts)));
}

double LevyModel::min_tail_rate() const {
    if (components_.empty()) return std::numeric_limits<double>::infinity();
    return jump_law_->min_tail_rate();
}

double laplace_exponent_ext(const LevyModel& model, double theta) {
    double s = model.drift() * theta + 0.5 * model.gaussian_sigma() * model.gaussian_sigma() * theta * theta;
    if (model.jump_rate() > 0.0)
        s += model.jump_rate() * (model.jump_law().mgf_neg(theta) - 1.0);
    return s;
}

double laplace_exponent(const LevyModel& model, double theta) {
    require(theta >= 0.0, "laplace_exponent: theta must be >= 0");
    return laplace_exponent_ext(model, theta);
}

double laplace_exponent_derivative(const LevyModel& model, double theta) {
    double s = model.drift() + model.gaussian_sigma() * model.gaussian_sigma() * theta;
    for (const auto& comp : model.components()) {
        const double denom = comp.rate + theta;
        if (comp.kind == JumpComponent::Kind::Exponential)
            s -= comp.intensity * comp.rate / (denom * denom);
        else
            s -= comp.intensity * 2.0 * comp.rate * comp.rate / (denom * denom * denom);
    }
    return s;
}

double safety_loading(const LevyModel& model) {
    double s = model.drift();
    for (const auto& comp : model.components()) s -= comp.intensity * comp.mean();
    return s;
}

double phi(const LevyModel& model, double q) {
    require(q >= 0.0, "phi: q must be >= 0");
    if (q == 0.0 && safety_loading(model) > 0.0) return 0.0;

    const double tol = 1e-12 * std::max(1.0, q);

    // Bracket the largest root: psi(lo) < q <= psi(hi).
    double hi = 1.0;
    int guard = 0;
    while (laplace_exponent_ext(model, hi) <= q) {
        hi *= 2.0;
        if (++guard > 200) throw SolverFailure("phi: failed to bracket, psi stays below q");
    }
    double lo = 0.0;
    if (q == 0.0) {
        // Negative loading: skip the root at the origin.
        lo = hi;
        guard = 0;
        while (laplace_exponent_ext(model, lo) > 0.0) {
            lo *= 0.5;
            if (++guard > 2000) throw SolverFailure("phi: failed to bracket root above origin");
        }
    }

    double theta = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double val = laplace_exponent_ext(model, theta) - q;
        if (std::abs(val) <= tol) return theta;
        if (val > 0.0) hi = theta;
        else lo = theta;
        const double deriv = laplace_exponent_derivative(model, theta);
        double next = theta - val / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi); // Newton overshoot -> bisect
        theta = next;
    }
    throw SolverFailure("phi: no convergence after max iterations (q=" + std::to_string(q) + ")");
}

double levy_tail(const LevyModel& model, double y) {
    if (model.jump_rate() == 0.0) return 0.0;
    return model.jump_rate() * model.jump_law().tail(y);
}

} // namespace levyliq
