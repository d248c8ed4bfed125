// Copyright 2026 The semicl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "semicl/spectral.hpp"
#include "semicl/splitting.hpp"
#include "semicl/states.hpp"

namespace semicl {

struct EvolutionSpec {
    SplittingScheme scheme;
    double dt = 0.0;
    std::size_t steps = 0;
    PotentialSpec potential;
    StageOrder order = StageOrder::right_to_left;
};

/// Throws std::invalid_argument for a non-finite or zero dt. A negative dt runs
/// the scheme backwards in time.
void validate(const EvolutionSpec &spec);

/// psi_j <- exp(-i tau V(x_j) / hbar) psi_j
WaveFunction apply_potential_phase(const WaveFunction &psi, const PotentialSpec &potential, double tau);

/// psi <- inverse_dft(exp(-i tau hbar mu_k^2 / 2) forward_dft(psi)), i.e. exp(i tau hbar Laplacian / 2).
WaveFunction apply_kinetic_phase(const WaveFunction &psi, double tau);

/// One step of `spec.scheme` of size `spec.dt` (spec.steps is ignored).
WaveFunction step(const WaveFunction &psi, const EvolutionSpec &spec);

struct EvolveOptions {
    /// Invoke the observer after every `observe_every` steps (0 disables it).
    /// The initial state is reported as step 0 when observing is enabled.
    std::size_t observe_every = 0;
    /// Fuse the trailing stage of a step with the leading stage of the next one.
    /// Observed steps are always materialized exactly.
    bool merge_boundaries = true;
};

using Observer = std::function<void(std::size_t step, double time, const WaveFunction &psi)>;

/// Raised when an observer throws. Carries the state after `completed_steps`.
class EvolutionAborted : public std::runtime_error {
  public:
    EvolutionAborted(const std::string &reason, std::size_t completed_steps, WaveFunction last_state)
        : std::runtime_error("evolution aborted after " + std::to_string(completed_steps) + " steps: " + reason),
          completed_steps_(completed_steps), last_state_(std::move(last_state)) {}

    std::size_t completed_steps() const { return completed_steps_; }
    const WaveFunction &last_state() const { return last_state_; }

  private:
    std::size_t completed_steps_;
    WaveFunction last_state_;
};

/// Runs `spec.steps` steps starting from `psi0`.
WaveFunction evolve(const WaveFunction &psi0, const EvolutionSpec &spec, const Observer &observer = {},
                    EvolveOptions options = {});

} // namespace semicl
