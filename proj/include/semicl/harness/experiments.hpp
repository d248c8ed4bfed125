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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semicl/circuit.hpp"
#include "semicl/harness/cache.hpp"
#include "semicl/harness/config.hpp"
#include "semicl/harness/io.hpp"

namespace semicl::harness {

/// Reported in manifests.
std::string code_version();

struct SimulateResult {
    WaveFunction final_state;
    std::vector<std::filesystem::path> files;
};

/// Runs the configured evolution and writes observables.csv (t,x,n,J),
/// psi_<step>.scwf dumps and manifest.json into outputs.directory.
SimulateResult simulate(const RunConfig &config);

struct Errors {
    double wave = 0.0;    ///< l2 distance on the run grid
    double density = 0.0; ///< sup norm
    double current = 0.0; ///< sup norm
};

/// Compares a run against a reference on the same or a dyadically finer grid of
/// the same domain (the reference is sampled at the run nodes).
Errors compare_to_reference(const WaveFunction &run, const WaveFunction &reference);

/// Evolves the problem on 2^m points to time t with the reference policy. The
/// step is adjusted to t / round(t / dt). Results go through `cache`.
WaveFunction reference_solution(const ProblemConfig &problem, int m, double t, const ReferencePolicy &policy,
                                const ReferenceCache &cache);

struct ConvergenceRow {
    std::string scheme;
    double dt = 0.0;
    std::uint64_t steps = 0;
    Errors errors;
};

struct ConvergenceResult {
    double t_final = 0.0;
    std::vector<ConvergenceRow> rows;
    /// Least-squares order of the wavefunction error per scheme (absent for a single dt).
    std::map<std::string, double> fitted_order;
    CsvTable table() const;
};

/// Throws ConfigError when the reference is not finer than the runs.
ConvergenceResult run_convergence(const RunConfig &config, const ReferenceCache &cache);

struct RobustnessRow {
    double hbar = 0.0;
    Errors errors;
};

struct RobustnessResult {
    double dt = 0.0;
    double t_final = 0.0;
    std::vector<RobustnessRow> rows;
    /// max_k err_k / err_0 over the sweep (sweep sorted by decreasing hbar).
    double density_growth = 1.0;
    double current_growth = 1.0;
    bool degenerate = false; ///< single hbar
    bool observables_bounded = false;
    bool wave_exceeds_threshold = false;
    bool passed() const { return observables_bounded && wave_exceeds_threshold; }
    CsvTable table() const;
};

/// Uses discretization.dt, final time and m, the configured scheme, and
/// robustness.hbars. Throws ConfigError when the sweep is not strictly
/// decreasing or the grid does not resolve the smallest hbar (dx <= hbar / 4).
RobustnessResult run_observable_robustness(const RunConfig &config, const ReferenceCache &cache);

struct ShotRow {
    std::uint64_t shots = 0;
    double mean_sup_error = 0.0;
};

struct CircuitResult {
    std::uint64_t steps = 0;
    double max_divergence = 0.0;    ///< per-step comparison against propagator steps
    double merged_divergence = 0.0; ///< merged runs of both back ends
    GateLedger ledger;              ///< merged circuit run
    std::uint64_t expected_diagonals = 0;
    std::uint64_t expected_qft = 0;
    std::vector<ShotRow> shots;
    std::optional<double> shot_slope;
    ShotHistogram last_histogram;
    QubitState final_state{1};
    CsvTable shot_table() const;
};

/// Side-by-side propagator / circuit run on the configured problem.
CircuitResult run_circuit_verify(const RunConfig &config);

struct CommutatorRow {
    std::string word;
    std::optional<double> closed_form_error; ///< relative l2, words AB / BBA / AAB only
    double exponent = 0.0;
    std::vector<double> norms;
};

/// Smallest m with L / 2^m <= hbar / points_per_hbar.
int resolving_qubits(double length, double hbar, double points_per_hbar = 2.0);

/// Closed-form checks at problem.hbar and scaling probes over commutators.hbars
/// on the WKB test family with the configured potential.
std::vector<CommutatorRow> run_commutator_check(const RunConfig &config);

nlohmann::json manifest(const std::string &command, const RunConfig &config,
                        const std::vector<std::filesystem::path> &files);

} // namespace semicl::harness
