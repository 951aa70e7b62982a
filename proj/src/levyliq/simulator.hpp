#pragma once

#include "levyliq/liquidation.hpp"

#include <cstdint>
#include <optional>

namespace levyliq {

struct SimConfig {
    long paths = 100000;
    double step = 1e-3;     // fine time grid near barriers
    double horizon = 500.0; // censoring time
    std::uint64_t seed = 0;
    bool bridge_correction = true; // Brownian-bridge barrier test between grid points
    int threads = 0;               // 0 = hardware concurrency (capped by LEVYLIQ_THREADS)
};

enum class PathCause { HitA, GraceExpired, ExitedZ, Censored, Survived };

struct PathOutcome {
    bool liquidated = false;
    double liquidation_time = 0.0; // T, when liquidated
    double surplus_at_T = 0.0;     // U_T, when liquidated
    bool creeped = false;          // liquidated by continuous hit of a (U_T = a)
    double exit_time = 0.0;        // zeta_z^+, when cause == ExitedZ
    double running_max = 0.0;
    PathCause cause = PathCause::Censored;
};

struct SimEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    long n = 0;
    double censored_fraction = 0.0;
};

enum class Functional { LiqProb, Laplace, JointCdf, ExitUp, CreepingMass };

struct FunctionalSpec {
    Functional kind = Functional::LiqProb;
    double u = 0.0; // threshold for JointCdf
};

// One path of the regime-switching surplus: SOLVENT follows X until U < b
// (enter INSOLVENT with a fresh exponential grace clock) or U > z; INSOLVENT
// follows X~ and liquidates on U < a or grace expiry, recovering on U > c.
// Deterministic per (cfg.seed, path_index).
PathOutcome simulate_path(const LiquidationProblem& problem, std::optional<double> z,
                          const SimConfig& cfg, long path_index);

SimEstimate estimate(const LiquidationProblem& problem, std::optional<double> z,
                     const FunctionalSpec& functional, const SimConfig& cfg);

// P(T_lambda(a) < infinity) for the Parisian clock restarted at each
// excursion below zero; absent a means no lower barrier.
SimEstimate simulate_parisian(const LevyModel& model, double lambda, std::optional<double> a,
                              double x, const SimConfig& cfg);

} // namespace levyliq
