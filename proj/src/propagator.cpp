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

#include "semicl/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <utility>

namespace semicl {
namespace {

// Applies stages in place and caches one phase array per distinct (kind, tau).
class StageRunner {
  public:
    StageRunner(const Grid1D &grid, double hbar, const PotentialSpec &potential, double dt)
        : hbar_(hbar), dt_(dt), skip_potential_(potential.identically_zero) {
        const FrequencyTable table = frequency_table(grid);
        mu_ = table.mu;
        if (!skip_potential_) {
            v_.resize(grid.points());
            for (std::size_t j = 0; j < v_.size(); ++j) {
                v_[j] = potential(grid.node(j));
            }
        }
    }

    void apply(const Stage &stage, ComplexVector &psi) {
        if (stage.kind == StageKind::potential) {
            if (skip_potential_) {
                return;
            }
            const ComplexVector &phase = phases(stage);
            for (std::size_t j = 0; j < psi.size(); ++j) {
                psi[j] *= phase[j];
            }
            return;
        }
        const ComplexVector &phase = phases(stage);
        detail::dft_inplace(psi, scratch_, detail::DftDirection::forward);
        for (std::size_t k = 0; k < psi.size(); ++k) {
            psi[k] *= phase[k];
        }
        detail::dft_inplace(psi, scratch_, detail::DftDirection::inverse);
    }

  private:
    const ComplexVector &phases(const Stage &stage) {
        const auto key = std::make_pair(stage.kind, stage.fraction);
        if (auto it = cache_.find(key); it != cache_.end()) {
            return it->second;
        }
        const double tau = stage.fraction * dt_;
        ComplexVector phase;
        if (stage.kind == StageKind::potential) {
            phase.resize(v_.size());
            for (std::size_t j = 0; j < v_.size(); ++j) {
                const double theta = -(tau * v_[j]) / hbar_;
                phase[j] = {std::cos(theta), std::sin(theta)};
            }
        } else {
            phase.resize(mu_.size());
            for (std::size_t k = 0; k < mu_.size(); ++k) {
                const double theta = -0.5 * tau * hbar_ * mu_[k] * mu_[k];
                phase[k] = {std::cos(theta), std::sin(theta)};
            }
        }
        return cache_.emplace(key, std::move(phase)).first->second;
    }

    double hbar_;
    double dt_;
    bool skip_potential_;
    RealVector mu_;
    RealVector v_;
    ComplexVector scratch_;
    std::map<std::pair<StageKind, double>, ComplexVector> cache_;
};

} // namespace

void validate(const EvolutionSpec &spec) {
    if (!std::isfinite(spec.dt) || spec.dt == 0.0) {
        throw std::invalid_argument("time step must be finite and nonzero");
    }
    if (spec.scheme.c.empty() || spec.scheme.c.size() != spec.scheme.d.size()) {
        throw std::invalid_argument("evolution needs a valid splitting scheme");
    }
    if (!spec.potential.value) {
        throw std::invalid_argument("evolution needs a potential");
    }
}

WaveFunction apply_potential_phase(const WaveFunction &psi, const PotentialSpec &potential, double tau) {
    ComplexVector out(psi.values().begin(), psi.values().end());
    if (tau != 0.0 && !potential.identically_zero) {
        for (std::size_t j = 0; j < out.size(); ++j) {
            const double theta = -(tau * potential(psi.grid().node(j))) / psi.hbar();
            out[j] *= Complex(std::cos(theta), std::sin(theta));
        }
    }
    return psi.with_values(std::move(out));
}

WaveFunction apply_kinetic_phase(const WaveFunction &psi, double tau) {
    const double hbar = psi.hbar();
    return apply_multiplier(psi, [tau, hbar](double mu) {
        const double theta = -0.5 * tau * hbar * mu * mu;
        return Complex(std::cos(theta), std::sin(theta));
    });
}

WaveFunction step(const WaveFunction &psi, const EvolutionSpec &spec) {
    validate(spec);
    StageRunner runner(psi.grid(), psi.hbar(), spec.potential, spec.dt);
    ComplexVector values(psi.values().begin(), psi.values().end());
    for (const Stage &stage : stage_sequence(spec.scheme, spec.order)) {
        runner.apply(stage, values);
    }
    return psi.with_values(std::move(values));
}

WaveFunction evolve(const WaveFunction &psi0, const EvolutionSpec &spec, const Observer &observer,
                    EvolveOptions options) {
    validate(spec);
    StageRunner runner(psi0.grid(), psi0.hbar(), spec.potential, spec.dt);
    WaveFunction psi = psi0;
    const bool observing = observer && options.observe_every > 0;

    auto notify = [&](std::size_t n) {
        try {
            observer(n, static_cast<double>(n) * spec.dt, psi);
        } catch (const std::exception &e) {
            throw EvolutionAborted(e.what(), n, psi);
        } catch (...) {
            throw EvolutionAborted("unknown observer failure", n, psi);
        }
    };

    if (observing) {
        notify(0);
    }
    const std::size_t chunk = observing ? options.observe_every : std::max<std::size_t>(spec.steps, 1);
    std::size_t done = 0;
    while (done < spec.steps) {
        const std::size_t count = std::min(chunk, spec.steps - done);
        for (const Stage &stage : flatten_steps(spec.scheme, count, options.merge_boundaries, spec.order)) {
            runner.apply(stage, psi.data());
        }
        done += count;
        if (observing) {
            notify(done);
        }
    }
    return psi;
}

} // namespace semicl
