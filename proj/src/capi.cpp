#include "levyliq.h"

#include "levyliq/errors.hpp"
#include "levyliq/liquidation.hpp"
#include "levyliq/parisian.hpp"
#include "levyliq/scale_function.hpp"
#include "levyliq/simulator.hpp"

#include <mutex>
#include <new>
#include <optional>
#include <string>
#include <vector>

namespace {

thread_local std::string g_last_error;

llq_status to_status(const levyliq::Error& err) {
    switch (err.code()) {
        case levyliq::ErrorCode::InvalidArgument: return LLQ_ERR_INVALID_ARGUMENT;
        case levyliq::ErrorCode::SolverFailure: return LLQ_ERR_SOLVER;
        case levyliq::ErrorCode::DegenerateRoots: return LLQ_ERR_DEGENERATE_ROOTS;
        case levyliq::ErrorCode::NumericFailure: return LLQ_ERR_NUMERIC;
        case levyliq::ErrorCode::AtomPoint: return LLQ_ERR_ATOM_POINT;
    }
    return LLQ_ERR_INTERNAL;
}

template <typename Fn>
llq_status guarded(Fn&& fn) {
    try {
        fn();
        return LLQ_OK;
    } catch (const levyliq::Error& err) {
        g_last_error = err.what();
        return to_status(err);
    } catch (const std::exception& ex) {
        g_last_error = ex.what();
        return LLQ_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return LLQ_ERR_INTERNAL;
    }
}

llq_status bad_argument(const char* what) {
    g_last_error = what;
    return LLQ_ERR_INVALID_ARGUMENT;
}

levyliq::SimConfig to_sim_config(const llq_sim_config& cfg) {
    levyliq::SimConfig out;
    out.paths = cfg.paths;
    out.step = cfg.step;
    out.horizon = cfg.horizon;
    out.seed = cfg.seed;
    out.bridge_correction = cfg.bridge_correction != 0;
    out.threads = cfg.threads;
    return out;
}

void fill_result(const levyliq::SimEstimate& est, llq_sim_result* out) {
    out->mean = est.mean;
    out->std_err = est.std_err;
    out->ci_lo = est.ci_lo;
    out->ci_hi = est.ci_hi;
    out->n = est.n;
    out->censored_fraction = est.censored_fraction;
}

} // namespace

// Builder state: components accumulate until the first evaluation forces a
// validated LevyModel; afterwards the handle is immutable.
struct llq_model {
    double drift = 0.0;
    double sigma = 0.0;
    std::vector<levyliq::JumpComponent> components;
    mutable std::once_flag once;
    mutable std::optional<levyliq::LevyModel> built;

    const levyliq::LevyModel& get() const {
        std::call_once(once, [this] {
            if (components.empty())
                throw levyliq::InvalidArgument("model has no jump components; add at least one");
            built.emplace(levyliq::LevyModel::from_components(drift, sigma, components));
        });
        if (!built) throw levyliq::InvalidArgument("model construction failed earlier");
        return *built;
    }
};

struct llq_scale {
    levyliq::ScaleFunction sf;
};

struct llq_problem {
    levyliq::LiquidationProblem problem;
};

extern "C" {

const char* llq_status_name(llq_status status) {
    switch (status) {
        case LLQ_OK: return "ok";
        case LLQ_ERR_INVALID_ARGUMENT: return "invalid argument";
        case LLQ_ERR_SOLVER: return "solver failure";
        case LLQ_ERR_DEGENERATE_ROOTS: return "degenerate roots";
        case LLQ_ERR_NUMERIC: return "numeric failure";
        case LLQ_ERR_ATOM_POINT: return "atom point";
        case LLQ_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* llq_last_error(void) { return g_last_error.c_str(); }

llq_model* llq_model_new(double drift, double gaussian_sigma) {
    auto* model = new (std::nothrow) llq_model;
    if (model) {
        model->drift = drift;
        model->sigma = gaussian_sigma;
    }
    return model;
}

void llq_model_free(llq_model* model) { delete model; }

llq_status llq_model_add_exponential_jumps(llq_model* model, double intensity, double gamma) {
    if (!model) return bad_argument("null model");
    if (model->built) return bad_argument("model already in use; build a new one");
    return guarded([&] {
        levyliq::require(intensity > 0.0 && gamma > 0.0,
                         "exponential jumps need intensity > 0 and gamma > 0");
        model->components.push_back(
            {levyliq::JumpComponent::Kind::Exponential, intensity, gamma});
    });
}

llq_status llq_model_add_erlang2_jumps(llq_model* model, double intensity, double beta) {
    if (!model) return bad_argument("null model");
    if (model->built) return bad_argument("model already in use; build a new one");
    return guarded([&] {
        levyliq::require(intensity > 0.0 && beta > 0.0,
                         "Erlang-2 jumps need intensity > 0 and beta > 0");
        model->components.push_back({levyliq::JumpComponent::Kind::Erlang2, intensity, beta});
    });
}

llq_status llq_psi(const llq_model* model, double theta, double* out) {
    if (!model || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::laplace_exponent(model->get(), theta); });
}

llq_status llq_safety_loading(const llq_model* model, double* out) {
    if (!model || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::safety_loading(model->get()); });
}

llq_status llq_phi(const llq_model* model, double q, double* out) {
    if (!model || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::phi(model->get(), q); });
}

llq_status llq_levy_tail(const llq_model* model, double y, double* out) {
    if (!model || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::levy_tail(model->get(), y); });
}

llq_status llq_scale_new(const llq_model* model, double q, llq_scale** out) {
    if (!model || !out) return bad_argument("null argument");
    return guarded([&] { *out = new llq_scale{levyliq::ScaleFunction(model->get(), q)}; });
}

void llq_scale_free(llq_scale* scale) { delete scale; }

llq_status llq_scale_w(const llq_scale* scale, double x, double* out) {
    if (!scale || !out) return bad_argument("null argument");
    return guarded([&] { *out = scale->sf.W(x); });
}

llq_status llq_scale_w_prime(const llq_scale* scale, double x, double* out) {
    if (!scale || !out) return bad_argument("null argument");
    return guarded([&] { *out = scale->sf.W_prime(x); });
}

llq_status llq_scale_z(const llq_scale* scale, double x, double* out) {
    if (!scale || !out) return bad_argument("null argument");
    return guarded([&] { *out = scale->sf.Z(x); });
}

llq_status llq_scale_check_laplace(const llq_scale* scale, const double* thetas, int n,
                                   double* max_rel_err) {
    if (!scale || !thetas || !max_rel_err || n <= 0) return bad_argument("null argument");
    return guarded([&] {
        const std::vector<double> grid(thetas, thetas + n);
        *max_rel_err = levyliq::verify_laplace_transform(scale->sf, grid, 1e-8).max_rel_error;
    });
}

llq_status llq_problem_new(const llq_model* solvent, const llq_model* insolvent, double a,
                           double b, double c, double grace_rate, double discount, double start,
                           llq_problem** out) {
    if (!solvent || !insolvent || !out) return bad_argument("null argument");
    return guarded([&] {
        *out = new llq_problem{levyliq::LiquidationProblem(
            solvent->get(), insolvent->get(), levyliq::BarrierSystem{a, b, c}, grace_rate,
            discount, start)};
    });
}

void llq_problem_free(llq_problem* problem) { delete problem; }

llq_status llq_liquidation_probability(const llq_problem* problem, double* out) {
    if (!problem || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::liquidation_probability(problem->problem); });
}

llq_status llq_liquidation_laplace(const llq_problem* problem, double z, double* out) {
    if (!problem || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::liquidation_laplace(problem->problem, z); });
}

llq_status llq_joint_cdf(const llq_problem* problem, double u, double z, double* out) {
    if (!problem || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::joint_cdf(problem->problem, u, z); });
}

llq_status llq_atom_at_a(const llq_problem* problem, double z, double* out) {
    if (!problem || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::atom_at_a(problem->problem, z); });
}

llq_status llq_joint_density(const llq_problem* problem, double u, double z, double h,
                             double* out) {
    if (!problem || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::joint_density_numeric(problem->problem, u, z, h); });
}

llq_status llq_exit_before_liquidation(const llq_problem* problem, double z, double* out) {
    if (!problem || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::exit_before_liquidation(problem->problem, z); });
}

llq_status llq_gerber_shiu(const llq_problem* problem, llq_penalty_fn f, void* ctx, double bound,
                           double z, double* out) {
    if (!problem || !f || !out) return bad_argument("null argument");
    return guarded([&] {
        levyliq::PenaltyFunction penalty;
        penalty.f = [f, ctx](double u) { return f(u, ctx); };
        penalty.bound = bound;
        *out = levyliq::gerber_shiu(problem->problem, penalty, z);
    });
}

llq_status llq_parisian_ruin_prob(const llq_model* model, double lambda, double x, double* out) {
    if (!model || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::parisian_ruin_prob(model->get(), lambda, x); });
}

llq_status llq_parisian_ruin_prob_barrier(const llq_model* model, double lambda, double a,
                                          double x, double* out) {
    if (!model || !out) return bad_argument("null argument");
    return guarded(
        [&] { *out = levyliq::parisian_ruin_prob_barrier(model->get(), lambda, a, x); });
}

llq_status llq_parisian_exit_laplace(const llq_model* model, double q, double lambda, double a,
                                     double x, double z, double* down, double* up) {
    if (!model || !down || !up) return bad_argument("null argument");
    return guarded([&] {
        levyliq::ParisianArgs args{model->get(), q, lambda, a, x, z};
        const auto [d, u_] = levyliq::parisian_exit_laplace(args);
        *down = d;
        *up = u_;
    });
}

llq_status llq_parisian_gs_density(const llq_model* model, double q, double lambda,
                                   const double* a, double x, double z, double u, double* out) {
    if (!model || !out) return bad_argument("null argument");
    return guarded([&] {
        levyliq::ParisianArgs args{model->get(), q, lambda,
                                   a ? std::optional<double>(*a) : std::nullopt, x, z};
        *out = levyliq::parisian_gs_density(args, u);
    });
}

llq_status llq_k_function(const llq_model* model, double q, double lambda, double a, double b,
                          double x, double z, double c, double* out) {
    if (!model || !out) return bad_argument("null argument");
    return guarded([&] { *out = levyliq::k_function(model->get(), q, lambda, a, b, x, z, c); });
}

llq_status llq_simulate(const llq_problem* problem, llq_functional functional, const double* z,
                        double u, const llq_sim_config* cfg, llq_sim_result* out) {
    if (!problem || !cfg || !out) return bad_argument("null argument");
    return guarded([&] {
        levyliq::FunctionalSpec spec;
        spec.u = u;
        switch (functional) {
            case LLQ_FUNC_LIQ_PROB: spec.kind = levyliq::Functional::LiqProb; break;
            case LLQ_FUNC_LAPLACE: spec.kind = levyliq::Functional::Laplace; break;
            case LLQ_FUNC_JOINT_CDF: spec.kind = levyliq::Functional::JointCdf; break;
            case LLQ_FUNC_EXIT_UP: spec.kind = levyliq::Functional::ExitUp; break;
            case LLQ_FUNC_CREEPING_MASS: spec.kind = levyliq::Functional::CreepingMass; break;
            default: throw levyliq::InvalidArgument("unknown functional");
        }
        const auto est = levyliq::estimate(problem->problem,
                                           z ? std::optional<double>(*z) : std::nullopt, spec,
                                           to_sim_config(*cfg));
        fill_result(est, out);
    });
}

llq_status llq_simulate_parisian(const llq_model* model, double lambda, const double* a, double x,
                                 const llq_sim_config* cfg, llq_sim_result* out) {
    if (!model || !cfg || !out) return bad_argument("null argument");
    return guarded([&] {
        const auto est = levyliq::simulate_parisian(model->get(), lambda,
                                                    a ? std::optional<double>(*a) : std::nullopt,
                                                    x, to_sim_config(*cfg));
        fill_result(est, out);
    });
}

} // extern "C"
