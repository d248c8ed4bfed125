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

#include "semicl/harness/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "semicl/commutators.hpp"
#include "semicl/fit.hpp"
#include "semicl/observables.hpp"
#include "semicl/propagator.hpp"

#ifndef SEMICL_VERSION
#define SEMICL_VERSION "unknown"
#endif

namespace semicl::harness {

std::string code_version() { return SEMICL_VERSION; }

nlohmann::json manifest(const std::string &command, const RunConfig &config,
                        const std::vector<std::filesystem::path> &files) {
    std::vector<std::string> names;
    for (const auto &f : files) {
        names.push_back(f.filename().string());
    }
    return {{"command", command}, {"version", code_version()}, {"config", to_json(config)}, {"outputs", names}};
}

namespace {

void append_observables(CsvTable &table, double t, const WaveFunction &psi) {
    const ObservableField n = density(psi);
    const ObservableField J = current(psi);
    for (std::size_t j = 0; j < psi.size(); ++j) {
        table.add_row(std::vector<double>{t, psi.grid().node(j), n.values[j], J.values[j]});
    }
}

std::string dump_name(std::uint64_t step) { return "psi_" + std::to_string(step) + ".scwf"; }

} // namespace

SimulateResult simulate(const RunConfig &config) {
    validate(config);
    const Problem problem = build_problem(config.problem, config.discretization.m);
    const std::uint64_t steps = config.discretization.resolved_steps();
    const EvolutionSpec spec{config.scheme, config.discretization.dt, steps, problem.potential};
    const auto &out = config.outputs;

    CsvTable table({"t", "x", "n", "J"});
    std::vector<std::filesystem::path> files;
    auto record = [&](std::uint64_t step, double t, const WaveFunction &psi) {
        if (out.csv) {
            append_observables(table, t, psi);
        }
        if (out.dump) {
            const auto path = out.directory / dump_name(step);
            write_dump(path, psi, t);
            files.push_back(path);
        }
    };

    WaveFunction final_state = problem.initial;
    if (out.cadence > 0) {
        final_state = evolve(problem.initial, spec, record, EvolveOptions{out.cadence, true});
    } else {
        record(0, 0.0, problem.initial);
        if (steps > 0) {
            final_state = evolve(problem.initial, spec);
            record(steps, static_cast<double>(steps) * spec.dt, final_state);
        }
    }
    if (out.csv) {
        const auto path = out.directory / "observables.csv";
        write_text(path, table.str());
        files.push_back(path);
    }
    const auto manifest_path = out.directory / "manifest.json";
    write_text(manifest_path, manifest("simulate", config, files).dump(2) + "\n");
    files.push_back(manifest_path);
    return {std::move(final_state), std::move(files)};
}

Errors compare_to_reference(const WaveFunction &run, const WaveFunction &reference) {
    const Grid1D &g = run.grid();
    const Grid1D &r = reference.grid();
    if (g.length() != r.length() || g.x0() != r.x0() || r.qubits() < g.qubits()) {
        throw std::invalid_argument("reference must live on the same domain with at least as many points");
    }
    const std::size_t stride = std::size_t{1} << (r.qubits() - g.qubits());
    ComplexVector sampled(g.points());
    for (std::size_t j = 0; j < sampled.size(); ++j) {
        sampled[j] = reference.values()[j * stride];
    }
    const ObservableField n_ref = density(reference), J_ref = current(reference);
    const ObservableField n_run = density(run), J_run = current(run);
    Errors e;
    e.wave = l2_distance(run.values(), sampled, g.dx());
    for (std::size_t j = 0; j < sampled.size(); ++j) {
        e.density = std::max(e.density, std::abs(n_run.values[j] - n_ref.values[j * stride]));
        e.current = std::max(e.current, std::abs(J_run.values[j] - J_ref.values[j * stride]));
    }
    return e;
}

WaveFunction reference_solution(const ProblemConfig &problem, int m, double t, const ReferencePolicy &policy,
                                const ReferenceCache &cache) {
    const double dt_target = policy.resolved_dt(problem.hbar);
    const auto steps = static_cast<std::uint64_t>(std::max<long long>(1, std::llround(t / dt_target)));
    const double dt = t / static_cast<double>(steps);
    const nlohmann::json key = {{"kind", "reference"},
                                {"problem", to_json(problem)},
                                {"m", m},
                                {"t", t},
                                {"policy", {{"scheme", policy.scheme}, {"dt", dt}, {"steps", steps}}},
                                {"version", 1}};
    return cache.get_or_compute(key, t, [&] {
        const Problem p = build_problem(problem, m);
        return evolve(p.initial, EvolutionSpec{builtin_scheme(policy.scheme), dt, steps, p.potential});
    });
}

namespace {

std::uint64_t steps_for(double t, double dt) {
    const double ratio = t / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("time step " + format_double(dt) + " does not divide the final time " + format_double(t));
    }
    return static_cast<std::uint64_t>(rounded);
}

} // namespace

CsvTable ConvergenceResult::table() const {
    CsvTable t({"scheme", "dt", "steps", "wave_error", "density_error", "current_error", "fitted_order"});
    for (const auto &r : rows) {
        const auto it = fitted_order.find(r.scheme);
        t.add_row({r.scheme, format_double(r.dt), std::to_string(r.steps), format_double(r.errors.wave),
                   format_double(r.errors.density), format_double(r.errors.current),
                   it == fitted_order.end() ? "" : format_double(it->second)});
    }
    return t;
}

ConvergenceResult run_convergence(const RunConfig &config, const ReferenceCache &cache) {
    validate(config);
    const auto &cc = config.convergence;
    if (cc.dts.empty() || cc.schemes.empty()) {
        throw ConfigError("convergence needs at least one scheme and one dt");
    }
    const int m = config.discretization.m;
    const int ref_m = cc.reference.m > 0 ? cc.reference.m : m;
    const double t = config.discretization.final_time();
    const double min_dt = *std::min_element(cc.dts.begin(), cc.dts.end());
    const double ref_dt = cc.reference.resolved_dt(config.problem.hbar);
    if (ref_m < m) {
        throw ConfigError("reference grid (m=" + std::to_string(ref_m) + ") is coarser than the runs (m=" +
                          std::to_string(m) + "); raise convergence.reference.m");
    }
    if (!(ref_dt * 10.0 <= min_dt)) {
        throw ConfigError("reference step " + format_double(ref_dt) +
                          " is not at least ten times smaller than the smallest run step " + format_double(min_dt) +
                          "; lower convergence.reference.dt");
    }
    if (builtin_scheme(cc.reference.scheme).order < 2) {
        throw ConfigError("the reference scheme must be at least second order; use yoshida4");
    }

    ConvergenceResult result;
    result.t_final = t;
    const WaveFunction reference = reference_solution(config.problem, ref_m, t, cc.reference, cache);
    const Problem problem = build_problem(config.problem, m);
    for (const auto &name : cc.schemes) {
        const SplittingScheme scheme = builtin_scheme(name);
        std::vector<double> dts, errs;
        for (double dt : cc.dts) {
            const std::uint64_t steps = steps_for(t, dt);
            const WaveFunction psi = evolve(problem.initial, EvolutionSpec{scheme, dt, steps, problem.potential});
            const Errors e = compare_to_reference(psi, reference);
            result.rows.push_back({name, dt, steps, e});
            dts.push_back(dt);
            errs.push_back(e.wave);
        }
        if (dts.size() >= 2) {
            result.fitted_order[name] = fit_loglog_slope(dts, errs);
        }
    }
    return result;
}

CsvTable RobustnessResult::table() const {
    CsvTable t({"hbar", "dt", "t_final", "wave_error", "density_error", "current_error"});
    for (const auto &r : rows) {
        t.add_row(std::vector<double>{r.hbar, dt, t_final, r.errors.wave, r.errors.density, r.errors.current});
    }
    return t;
}

RobustnessResult run_observable_robustness(const RunConfig &config, const ReferenceCache &cache) {
    validate(config);
    const auto &rc = config.robustness;
    if (rc.hbars.empty()) {
        throw ConfigError("robustness.hbars is empty");
    }
    for (std::size_t i = 1; i < rc.hbars.size(); ++i) {
        if (!(rc.hbars[i] < rc.hbars[i - 1])) {
            throw ConfigError("robustness.hbars must be sorted in strictly decreasing order");
        }
    }
    const int m = config.discretization.m;
    const Grid1D grid(config.problem.L, m, config.problem.x0);
    if (grid.dx() > rc.hbars.back() / 4.0) {
        throw ConfigError("grid spacing " + format_double(grid.dx()) + " does not resolve hbar = " +
                          format_double(rc.hbars.back()) + " (need dx <= hbar/4); raise discretization.m");
    }
    RobustnessResult result;
    result.dt = config.discretization.dt;
    result.t_final = config.discretization.final_time();
    const std::uint64_t steps = steps_for(result.t_final, result.dt);
    const int ref_m = rc.reference.m > 0 ? rc.reference.m : m;
    for (double hbar : rc.hbars) {
        ProblemConfig pc = config.problem;
        pc.hbar = hbar;
        const WaveFunction reference = reference_solution(pc, ref_m, result.t_final, rc.reference, cache);
        const Problem problem = build_problem(pc, m);
        const WaveFunction psi =
            evolve(problem.initial, EvolutionSpec{config.scheme, result.dt, steps, problem.potential});
        result.rows.push_back({hbar, compare_to_reference(psi, reference)});
    }
    result.degenerate = result.rows.size() < 2;
    const Errors &first = result.rows.front().errors;
    for (const auto &r : result.rows) {
        result.density_growth = std::max(result.density_growth, r.errors.density / first.density);
        result.current_growth = std::max(result.current_growth, r.errors.current / first.current);
    }
    result.observables_bounded =
        result.density_growth <= rc.growth_factor && result.current_growth <= rc.growth_factor;
    result.wave_exceeds_threshold = result.rows.back().errors.wave > rc.wave_threshold;
    return result;
}

CsvTable CircuitResult::shot_table() const {
    CsvTable t({"shots", "mean_sup_error"});
    for (const auto &r : shots) {
        t.add_row({std::to_string(r.shots), format_double(r.mean_sup_error)});
    }
    return t;
}

CircuitResult run_circuit_verify(const RunConfig &config) {
    validate(config);
    const Problem problem = build_problem(config.problem, config.discretization.m);
    const Grid1D &grid = problem.initial.grid();
    const double hbar = config.problem.hbar;
    const double dt = config.discretization.dt;
    const std::uint64_t steps = config.discretization.resolved_steps();
    const CostModel cost = CostModel::parse(config.circuit.cost_model);

    CircuitResult result;
    result.steps = steps;

    // Step by step, every state materialized on both sides.
    {
        CircuitEmulator circuit(QubitState::from_wavefunction(problem.initial), cost);
        const EvolutionSpec spec{config.scheme, dt, 1, problem.potential};
        WaveFunction psi = problem.initial;
        for (std::uint64_t n = 0; n < steps; ++n) {
            psi = step(psi, spec);
            circuit.trotter_step(config.scheme, dt, problem.potential, grid, hbar);
            const WaveFunction emulated = circuit.state().to_wavefunction(grid, hbar);
            result.max_divergence = std::max(result.max_divergence, l2_distance(psi.values(), emulated.values(), grid.dx()));
        }
    }
    // Merged runs and the ledger.
    {
        CircuitEmulator circuit(QubitState::from_wavefunction(problem.initial), cost);
        circuit.trotter_run(config.scheme, dt, steps, problem.potential, grid, hbar, true);
        const WaveFunction psi = evolve(problem.initial, EvolutionSpec{config.scheme, dt, steps, problem.potential});
        result.merged_divergence =
            l2_distance(psi.values(), circuit.state().to_wavefunction(grid, hbar).values(), grid.dx());
        result.ledger = circuit.ledger();
        result.final_state = circuit.state();
        std::uint64_t kinetic = 0, potential = 0;
        for (const Stage &s : circuit_stages(flatten_steps(config.scheme, steps, true), problem.potential)) {
            if (s.kind == StageKind::kinetic) {
                ++kinetic;
            } else {
                ++potential;
            }
        }
        result.expected_diagonals = kinetic + potential;
        result.expected_qft = 2 * kinetic;
    }
    std::vector<double> xs, ys;
    for (std::uint64_t shots : config.circuit.shots) {
        double acc = 0.0;
        for (std::uint64_t r = 0; r < config.circuit.repeats; ++r) {
            ShotHistogram h = measure_shots(result.final_state, shots, config.seed + r);
            acc += histogram_sup_error(h, result.final_state);
            if (r == 0) {
                result.last_histogram = std::move(h);
            }
        }
        const double mean = acc / static_cast<double>(config.circuit.repeats);
        result.shots.push_back({shots, mean});
        xs.push_back(static_cast<double>(shots));
        ys.push_back(mean);
    }
    if (xs.size() >= 2) {
        result.shot_slope = fit_loglog_slope(xs, ys);
    }
    return result;
}

int resolving_qubits(double length, double hbar, double points_per_hbar) {
    int m = 1;
    while (m < kMaxQubits && length / std::ldexp(1.0, m) > hbar / points_per_hbar) {
        ++m;
    }
    return m;
}

std::vector<CommutatorRow> run_commutator_check(const RunConfig &config) {
    validate(config);
    const ProblemConfig &pc = config.problem;
    const PotentialSpec potential = potential_by_name(pc.potential, pc.coefficients);
    const int fixed_m = config.commutators.m;
    auto family = [&pc, fixed_m](double hbar) {
        const Grid1D grid(pc.L, fixed_m > 0 ? fixed_m : resolving_qubits(pc.L, hbar), pc.x0);
        return wkb_state(test_wkb(hbar), grid);
    };
    const WaveFunction psi = family(pc.hbar);
    const double dx = psi.grid().dx();

    std::vector<CommutatorRow> rows;
    for (const auto &text : config.commutators.words) {
        const CommutatorWord word = CommutatorWord::parse(text);
        CommutatorRow row;
        row.word = word.str();
        if (row.word == "AB" || row.word == "BBA" || row.word == "AAB") {
            const ComplexVector direct = apply_commutator(word, psi, potential);
            const ComplexVector closed = closed_form(word, psi, potential);
            const double scale = l2_norm(closed, dx);
            const double diff = l2_distance(direct, closed, dx);
            row.closed_form_error = scale > 0.0 ? diff / scale : diff;
        }
        const ScalingProbe probe = scaling_probe(word, family, potential, config.commutators.hbars);
        row.exponent = probe.exponent;
        row.norms = probe.norms;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace semicl::harness
