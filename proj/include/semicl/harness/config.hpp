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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semicl/splitting.hpp"
#include "semicl/states.hpp"

namespace semicl::harness {

/// Invalid configuration; the CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct ProblemConfig {
    /// test-wkb | gaussian | custom-wkb
    std::string state = "test-wkb";
    /// harmonic | zero | custom-polynomial
    std::string potential = "harmonic";
    std::vector<double> coefficients;
    double hbar = 0.01;
    double L = 4.0;
    double x0 = -2.0;
    // gaussian: exp(-(x - center)^2 / gamma - i k0 x / hbar)
    double center = 0.0;
    double gamma = 0.05;
    double k0 = 0.0;
    // custom-wkb: amplitude exp(-(x - center)^2 / gamma), phase sum_n phase[n] x^n
    std::vector<double> phase;
};

struct DiscretizationConfig {
    int m = 12;
    double dt = 0.01;
    std::optional<std::uint64_t> steps;
    std::optional<double> t_final;

    std::uint64_t resolved_steps() const;
    double final_time() const;
};

struct OutputConfig {
    std::filesystem::path directory = "semicl-out";
    std::uint64_t cadence = 0; ///< 0: initial and final state only
    bool csv = true;
    bool dump = false;
};

struct ReferencePolicy {
    std::string scheme = "yoshida4";
    double dt = 0.0; ///< 0: min(hbar / 10, 5e-4)
    int m = 0;       ///< 0: same grid as the runs

    double resolved_dt(double hbar) const;
};

struct ConvergenceConfig {
    std::vector<std::string> schemes{"lie", "strang_kvk", "yoshida4"};
    std::vector<double> dts{0.02, 0.01, 0.005, 0.0025};
    ReferencePolicy reference{"yoshida4", 2.5e-5, 0};
};

struct RobustnessConfig {
    std::vector<double> hbars{4e-3, 2e-3, 1e-3};
    double growth_factor = 2.0;
    double wave_threshold = 0.1;
    ReferencePolicy reference;
};

struct CircuitConfig {
    std::vector<std::uint64_t> shots{400, 4000, 40000};
    std::uint64_t repeats = 5;
    std::string cost_model = "full";
    double divergence_limit = 1e-10;
};

struct CommutatorConfig {
    std::vector<std::string> words{"AB", "BBA", "AAB"};
    std::vector<double> hbars{1e-2, 5e-3, 2.5e-3, 1.25e-3};
    int m = 0; ///< 0: per hbar, the smallest m with dx <= hbar / 2
};

struct RunConfig {
    ProblemConfig problem;
    DiscretizationConfig discretization;
    SplittingScheme scheme = builtin_scheme("strang_kvk");
    OutputConfig outputs;
    std::uint64_t seed = 0;
    ConvergenceConfig convergence;
    RobustnessConfig robustness;
    CircuitConfig circuit;
    CommutatorConfig commutators;
};

/// Parses a config document. Unknown keys, wrong types and violated invariants
/// raise ConfigError. Missing keys keep their defaults; when neither steps nor
/// t_final is present, steps defaults to 100.
RunConfig parse_config(const nlohmann::json &doc);
RunConfig load_config(const std::filesystem::path &path);

/// Checks cross-field invariants: exactly one of steps / t_final, t_final a
/// multiple of dt, cadence divides steps, known ids.
void validate(const RunConfig &config);

/// Canonical JSON echo of every parameter (used for manifests and cache keys).
nlohmann::json to_json(const RunConfig &config);
nlohmann::json to_json(const ProblemConfig &problem);

struct Problem {
    WaveFunction initial;
    PotentialSpec potential;
};

/// Builds the initial state and potential on a 2^m grid over the configured domain.
Problem build_problem(const ProblemConfig &problem, int m);

} // namespace semicl::harness
