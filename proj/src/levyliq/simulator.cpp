#include "levyliq/simulator.hpp"
#include "levyliq/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace levyliq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct PathRng {
    std::mt19937_64 gen;
    std::normal_distribution<double> normal{0.0, 1.0};

    PathRng(std::uint64_t seed, long path_index)
        : gen(splitmix64(seed ^ splitmix64(0x5eedULL + static_cast<std::uint64_t>(path_index)))) {}

    double gauss() { return normal(gen); }
    double uniform() { return std::generate_canonical<double, 53>(gen); }
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }
};

double draw_jump(const LevyModel& model, PathRng& rng) {
    const auto& comps = model.components();
    double pick = rng.uniform() * model.jump_rate();
    size_t idx = 0;
    for (; idx + 1 < comps.size(); ++idx) {
        pick -= comps[idx].intensity;
        if (pick <= 0.0) break;
    }
    const auto& comp = comps[idx];
    if (comp.kind == JumpComponent::Kind::Exponential) return rng.exponential(comp.rate);
    return rng.exponential(comp.rate) + rng.exponential(comp.rate);
}

// Positive root of psi(-r) = 0: Lundberg-type bound P(inf X < -d) <= e^{-r d},
// used to retire paths that have drifted far into safety.
double adjustment_coefficient(const LevyModel& model) {
    const double beta_min = model.min_tail_rate();
    double hi; // in (0, beta_min): psi(-hi) > 0
    if (std::isfinite(beta_min)) {
        hi = beta_min * (1.0 - 1e-9);
        while (hi > 0.0 && laplace_exponent_ext(model, -hi) <= 0.0) hi = beta_min - 0.5 * (beta_min - hi);
    } else {
        hi = 1.0;
        while (laplace_exponent_ext(model, -hi) <= 0.0) hi *= 2.0;
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (laplace_exponent_ext(model, -mid) <= 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct StepResult {
    double u_end = 0.0;
    bool crossed_lower = false;
    bool crossed_upper = false;
    double t_cross = 0.0; // offset within the step
};

// One diffusion step of length dt with endpoint + Brownian-bridge checks
// against an optional lower and upper barrier.  When both flag a crossing the
// earlier estimated time wins.
StepResult diffusion_step(double u, double mu, double sigma, double dt, double lower, double upper,
                          bool bridge, PathRng& rng) {
    StepResult res;
    const double w = sigma > 0.0 ? sigma * std::sqrt(dt) * rng.gauss() : 0.0;
    const double u1 = u + mu * dt + w;
    res.u_end = u1;

    // Starting exactly on a barrier counts as not-yet-crossed; the endpoint
    // decides.  This breaks the tie at a shared recovery/entry level (b == c)
    // at grid resolution, matching the excursion clock's discrete reading.
    double t_low = kInf, t_up = kInf;
    if (lower > -kInf) {
        if (u1 < lower) {
            t_low = dt * std::clamp((u - lower) / std::max(u - u1, 1e-300), 0.0, 1.0);
        } else if (bridge && sigma > 0.0 && u > lower && u1 > lower) {
            const double p = std::exp(-2.0 * (u - lower) * (u1 - lower) / (sigma * sigma * dt));
            if (rng.uniform() < p) t_low = 0.5 * dt;
        }
    }
    if (upper < kInf) {
        if (u1 > upper) {
            t_up = dt * std::clamp((upper - u) / std::max(u1 - u, 1e-300), 0.0, 1.0);
        } else if (bridge && sigma > 0.0 && u < upper && u1 < upper) {
            const double p = std::exp(-2.0 * (upper - u) * (upper - u1) / (sigma * sigma * dt));
            if (rng.uniform() < p) t_up = 0.5 * dt;
        }
    }
    if (t_low < t_up) {
        res.crossed_lower = true;
        res.t_cross = t_low;
    } else if (t_up < kInf) {
        res.crossed_upper = true;
        res.t_cross = t_up;
    }
    return res;
}

// Largest dt whose adverse drift + 8 sigma sqrt(dt) envelope stays inside d.
double safe_dt(double d, double mu, double sigma) {
    if (d <= 0.0) return 0.0;
    const double a = std::abs(mu), b = 8.0 * sigma;
    if (a < 1e-14) return b > 0.0 ? (d / b) * (d / b) : kInf;
    const double sq = (-b + std::sqrt(b * b + 4.0 * a * d)) / (2.0 * a);
    return sq * sq;
}

// Generalized three-barrier engine; b == c gives the Parisian clock (spells
// below zero with recovery at zero).  `a` may be -inf, `z` may be +inf.
struct EngineParams {
    const LevyModel* solvent;
    const LevyModel* insolvent;
    double a, b, c;
    double lambda;
    double x;
    double z = kInf;
    double retire_level = kInf; // solvent u above this is a certified survivor
};

PathOutcome run_path(const EngineParams& ep, const SimConfig& cfg, long path_index) {
    PathRng rng(cfg.seed, path_index);
    const double max_dt = 1.0;

    double t = 0.0, u = ep.x;
    bool insolvent = false; // starts in the solvent regime (x > b required)
    double grace_end = kInf;
    PathOutcome out;
    out.running_max = u;

    if (u >= ep.z) { // upward-regular paths exit a level started at immediately
        out.cause = PathCause::ExitedZ;
        out.exit_time = 0.0;
        return out;
    }

    const LevyModel* model = ep.solvent;
    double next_jump = model->jump_rate() > 0.0 ? rng.exponential(model->jump_rate()) : kInf;

    const auto switch_regime = [&](bool to_insolvent, double now) {
        insolvent = to_insolvent;
        model = to_insolvent ? ep.insolvent : ep.solvent;
        grace_end = to_insolvent ? now + rng.exponential(ep.lambda) : kInf;
        next_jump = model->jump_rate() > 0.0 ? now + rng.exponential(model->jump_rate()) : kInf;
    };

    while (t < cfg.horizon) {
        if (!insolvent && u > ep.retire_level) {
            out.cause = PathCause::Survived;
            return out;
        }
        const double seg_end = std::min({cfg.horizon, next_jump, grace_end});
        if (seg_end > t) {
            const double mu = model->drift();
            const double sigma = model->gaussian_sigma();
            const double lower = insolvent ? ep.a : ep.b;
            const double upper = insolvent ? std::min(ep.c, ep.z) : ep.z;

            double dt = std::min(seg_end - t, max_dt);
            if (lower > -kInf) dt = std::min(dt, safe_dt(u - lower, mu, sigma));
            if (upper < kInf) dt = std::min(dt, safe_dt(upper - u, mu, sigma));
            if (dt < cfg.step) dt = std::min(cfg.step, seg_end - t);
            assert(dt > 0.0);

            const StepResult st = diffusion_step(u, mu, sigma, dt, lower, upper,
                                                 cfg.bridge_correction, rng);
            if (st.crossed_lower) {
                t += st.t_cross;
                if (insolvent) { // continuous hit of the liquidation barrier
                    out.liquidated = true;
                    out.liquidation_time = t;
                    out.surplus_at_T = ep.a;
                    out.creeped = true;
                    out.cause = PathCause::HitA;
                    return out;
                }
                u = ep.b;
                switch_regime(true, t);
                continue;
            }
            if (st.crossed_upper) {
                t += st.t_cross;
                u = insolvent ? std::min(ep.c, ep.z) : ep.z;
                out.running_max = std::max(out.running_max, u);
                if (!insolvent || ep.z <= ep.c) { // z was the binding level
                    out.exit_time = t;
                    out.cause = PathCause::ExitedZ;
                    return out;
                }
                switch_regime(false, t); // recovered through c
                continue;
            }
            t += dt;
            if (seg_end - t < 1e-9 * std::max(1.0, seg_end)) t = seg_end;
            u = st.u_end;
            out.running_max = std::max(out.running_max, u);
        }

        if (insolvent && t >= grace_end) {
            out.liquidated = true;
            out.liquidation_time = grace_end;
            out.surplus_at_T = u;
            out.cause = PathCause::GraceExpired;
            return out;
        }
        if (t >= next_jump && next_jump <= cfg.horizon) {
            u -= draw_jump(*model, rng);
            next_jump = t + rng.exponential(model->jump_rate());
            if (u < ep.a) { // overshoot straight through the liquidation barrier
                out.liquidated = true;
                out.liquidation_time = t;
                out.surplus_at_T = u;
                out.cause = PathCause::HitA;
                return out;
            }
            if (!insolvent && u < ep.b) switch_regime(true, t);
        }
    }
    out.cause = PathCause::Censored;
    return out;
}

int resolve_threads(const SimConfig& cfg) {
    int threads = cfg.threads;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LEVYLIQ_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) threads = std::min(threads, cap);
    }
    return std::max(threads, 1);
}

struct BlockSum {
    double s1 = 0.0, s2 = 0.0;
    long censored = 0;
};

// Runs `value(path_index)` over all paths in fixed blocks; block sums are
// combined in index order so the estimate is identical for any thread count.
template <typename ValueFn>
SimEstimate reduce_paths(long paths, const SimConfig& cfg, ValueFn&& value) {
    constexpr long kBlock = 4096;
    const long nblocks = (paths + kBlock - 1) / kBlock;
    std::vector<BlockSum> blocks(static_cast<size_t>(nblocks));

    const int threads = resolve_threads(cfg);
    std::atomic<long> next_block{0};
    auto worker = [&]() {
        for (;;) {
            const long blk = next_block.fetch_add(1);
            if (blk >= nblocks) return;
            BlockSum sum;
            const long lo = blk * kBlock;
            const long hi = std::min(paths, lo + kBlock);
            for (long i = lo; i < hi; ++i) {
                bool censored = false;
                const double v = value(i, censored);
                sum.s1 += v;
                sum.s2 += v * v;
                if (censored) ++sum.censored;
            }
            blocks[static_cast<size_t>(blk)] = sum;
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    BlockSum total;
    for (const BlockSum& b : blocks) {
        total.s1 += b.s1;
        total.s2 += b.s2;
        total.censored += b.censored;
    }
    SimEstimate est;
    est.n = paths;
    est.mean = total.s1 / static_cast<double>(paths);
    const double var =
        std::max(0.0, (total.s2 - static_cast<double>(paths) * est.mean * est.mean) /
                          static_cast<double>(paths - 1));
    est.std_err = std::sqrt(var / static_cast<double>(paths));
    est.ci_lo = est.mean - 1.96 * est.std_err;
    est.ci_hi = est.mean + 1.96 * est.std_err;
    est.censored_fraction = static_cast<double>(total.censored) / static_cast<double>(paths);
    return est;
}

EngineParams engine_params(const LiquidationProblem& problem, std::optional<double> z) {
    EngineParams ep;
    ep.solvent = &problem.solvent();
    ep.insolvent = &problem.insolvent();
    ep.a = problem.barriers().a;
    ep.b = problem.barriers().b;
    ep.c = problem.barriers().c;
    ep.lambda = problem.grace_rate();
    ep.x = problem.start();
    ep.z = z.value_or(kInf);
    if (!z.has_value()) {
        const double r = adjustment_coefficient(problem.solvent());
        ep.retire_level = ep.b + std::log(1e9) / r;
    }
    return ep;
}

} // namespace

PathOutcome simulate_path(const LiquidationProblem& problem, std::optional<double> z,
                          const SimConfig& cfg, long path_index) {
    require(cfg.paths > 0 && cfg.step > 0.0 && cfg.horizon > 0.0, "simulate_path: bad SimConfig");
    return run_path(engine_params(problem, z), cfg, path_index);
}

SimEstimate estimate(const LiquidationProblem& problem, std::optional<double> z,
                     const FunctionalSpec& functional, const SimConfig& cfg) {
    require(cfg.paths > 0 && cfg.step > 0.0 && cfg.horizon > 0.0, "estimate: bad SimConfig");
    if (functional.kind != Functional::LiqProb)
        require(z.has_value(), "estimate: this functional needs an upper level z");

    const EngineParams ep = engine_params(problem, z);
    const double q = problem.discount();
    return reduce_paths(cfg.paths, cfg, [&](long idx, bool& censored) {
        const PathOutcome out = run_path(ep, cfg, idx);
        censored = out.cause == PathCause::Censored;
        switch (functional.kind) {
            case Functional::LiqProb: return out.liquidated ? 1.0 : 0.0;
            case Functional::Laplace:
                return out.liquidated ? std::exp(-q * out.liquidation_time) : 0.0;
            case Functional::JointCdf:
                return out.liquidated && out.surplus_at_T <= functional.u
                           ? std::exp(-q * out.liquidation_time)
                           : 0.0;
            case Functional::ExitUp:
                return out.cause == PathCause::ExitedZ ? std::exp(-q * out.exit_time) : 0.0;
            case Functional::CreepingMass:
                return out.liquidated && out.creeped ? std::exp(-q * out.liquidation_time) : 0.0;
        }
        return 0.0;
    });
}

SimEstimate simulate_parisian(const LevyModel& model, double lambda, std::optional<double> a,
                              double x, const SimConfig& cfg) {
    require(x > 0.0, "simulate_parisian: need x > 0");
    require(lambda > 0.0, "simulate_parisian: need lambda > 0");
    require(cfg.paths > 0 && cfg.step > 0.0 && cfg.horizon > 0.0, "simulate_parisian: bad SimConfig");

    EngineParams ep;
    ep.solvent = &model;
    ep.insolvent = &model;
    ep.a = a.value_or(-kInf);
    ep.b = 0.0;
    ep.c = 0.0;
    ep.lambda = lambda;
    ep.x = x;
    const double r = adjustment_coefficient(model);
    ep.retire_level = std::log(1e9) / r;

    return reduce_paths(cfg.paths, cfg, [&](long idx, bool& censored) {
        const PathOutcome out = run_path(ep, cfg, idx);
        censored = out.cause == PathCause::Censored;
        return out.liquidated ? 1.0 : 0.0;
    });
}

} // namespace levyliq
