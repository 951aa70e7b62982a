#pragma once

#include "levyliq/levy_model.hpp"

// The worked example models shared across the test suites.
namespace testmodels {

// Jump-diffusion with Erlang-2 claims: drift 5, sigma 0.5, claim rate 2,
// Erlang-2(2) sizes.  psi'(0+) = 3.
inline levyliq::LevyModel single() {
    return levyliq::LevyModel(5.0, 0.5, 2.0, levyliq::JumpLaw::erlang2(2.0));
}

// Solvent book with dividends: net drift 8, sigma 2, claims Erlang-2(2) at
// rate 3 plus exponential(1) dividend jumps at rate 2.  psi'(0+) = 3.
inline levyliq::LevyModel solvent() {
    return levyliq::LevyModel::from_components(
        8.0, 2.0,
        {{levyliq::JumpComponent::Kind::Erlang2, 3.0, 2.0},
         {levyliq::JumpComponent::Kind::Exponential, 2.0, 1.0}});
}

// Insolvent book: drift 6, sigma 1.5, claims Erlang-2(2) at rate 3.
inline levyliq::LevyModel insolvent() {
    return levyliq::LevyModel(6.0, 1.5, 3.0, levyliq::JumpLaw::erlang2(2.0));
}

// Brownian motion with drift, no jumps: psi(theta) = theta + theta^2/2.
inline levyliq::LevyModel no_jumps() {
    return levyliq::LevyModel(1.0, 1.0, 0.0, levyliq::JumpLaw::exponential(1.0));
}

} // namespace testmodels
