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

// semicl command-line driver.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "semicl/estimator.hpp"
#include "semicl/harness/cache.hpp"
#include "semicl/harness/config.hpp"
#include "semicl/harness/experiments.hpp"
#include "semicl/harness/io.hpp"

namespace {

using namespace semicl;
using namespace semicl::harness;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfigError = 2;

struct Overrides {
    std::string config_path;
    std::optional<double> hbar;
    std::optional<int> m;
    std::optional<double> dt;
    std::optional<std::uint64_t> steps;
    std::optional<double> t_final;
    std::optional<std::string> scheme;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> cadence;
};

void add_run_flags(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--config", o.config_path, "JSON run configuration");
    cmd->add_option("--hbar", o.hbar, "semiclassical parameter");
    cmd->add_option("--m", o.m, "qubits (log2 of grid points)");
    cmd->add_option("--dt", o.dt, "time step");
    cmd->add_option("--steps", o.steps, "number of steps");
    cmd->add_option("--t-final", o.t_final, "final time (alternative to --steps)");
    cmd->add_option("--scheme", o.scheme, "builtin scheme id");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--seed", o.seed, "PRNG seed");
    cmd->add_option("--cadence", o.cadence, "output cadence in steps");
}

RunConfig resolve_config(const Overrides &o) {
    json doc = json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) {
            throw ConfigError("cannot open config file " + o.config_path);
        }
        try {
            doc = json::parse(in);
        } catch (const json::exception &e) {
            throw ConfigError("config " + o.config_path + " is not valid JSON: " + e.what());
        }
        if (!doc.is_object()) {
            throw ConfigError("config root must be an object");
        }
    }
    if (o.hbar) {
        doc["problem"]["hbar"] = *o.hbar;
    }
    if (o.m) {
        doc["discretization"]["m"] = *o.m;
    }
    if (o.dt) {
        doc["discretization"]["dt"] = *o.dt;
    }
    if (o.steps && o.t_final) {
        throw ConfigError("give only one of --steps and --t-final");
    }
    if (o.steps) {
        doc["discretization"]["steps"] = *o.steps;
        if (doc["discretization"].contains("t_final")) {
            doc["discretization"].erase("t_final");
        }
    }
    if (o.t_final) {
        doc["discretization"]["t_final"] = *o.t_final;
        if (doc["discretization"].contains("steps")) {
            doc["discretization"].erase("steps");
        }
    }
    if (o.scheme) {
        doc["scheme"] = *o.scheme;
    }
    if (o.out) {
        doc["outputs"]["directory"] = *o.out;
    }
    if (o.seed) {
        doc["seed"] = *o.seed;
    }
    if (o.cadence) {
        doc["outputs"]["cadence"] = *o.cadence;
    }
    return parse_config(doc);
}

void emit(const RunConfig &cfg, const std::string &command, const std::string &name, const CsvTable &table,
          std::vector<std::filesystem::path> files = {}) {
    const auto path = cfg.outputs.directory / name;
    write_text(path, table.str());
    files.push_back(path);
    write_text(cfg.outputs.directory / "manifest.json", manifest(command, cfg, files).dump(2) + "\n");
    std::cout << table.str();
}

int cmd_simulate(const RunConfig &cfg) {
    const SimulateResult r = simulate(cfg);
    for (const auto &f : r.files) {
        std::cout << f.string() << "\n";
    }
    return kOk;
}

int cmd_convergence(const RunConfig &cfg) {
    const ConvergenceResult r = run_convergence(cfg, ReferenceCache::from_environment());
    emit(cfg, "convergence", "convergence.csv", r.table());
    return kOk;
}

int cmd_robustness(const RunConfig &cfg) {
    const RobustnessResult r = run_observable_robustness(cfg, ReferenceCache::from_environment());
    emit(cfg, "observable-robustness", "robustness.csv", r.table());
    if (r.degenerate) {
        std::cerr << "degenerate sweep: a single hbar gives no growth information\n";
        return kOk;
    }
    std::cerr << "density growth " << format_double(r.density_growth) << ", current growth "
              << format_double(r.current_growth) << ", smallest-hbar wave error "
              << format_double(r.rows.back().errors.wave) << "\n";
    if (!r.passed()) {
        std::cerr << "FAIL: observable errors grew or the wavefunction error stayed below the threshold\n";
        return kFailure;
    }
    return kOk;
}

int cmd_circuit(const RunConfig &cfg) {
    const CircuitResult r = run_circuit_verify(cfg);
    const Grid1D grid(cfg.problem.L, cfg.discretization.m, cfg.problem.x0);
    const auto ledger_path = cfg.outputs.directory / "ledger.csv";
    const auto hist_path = cfg.outputs.directory / "histogram.csv";
    write_text(ledger_path, ledger_table(r.ledger).str());
    write_text(hist_path, histogram_table(r.last_histogram, grid).str());
    emit(cfg, "circuit-verify", "shots.csv", r.shot_table(), {ledger_path, hist_path});
    std::cerr << "steps " << r.steps << ", max divergence " << format_double(r.max_divergence)
              << ", merged divergence " << format_double(r.merged_divergence) << ", diagonals "
              << r.ledger.diagonal_invocations << " (expected " << r.expected_diagonals << "), qft "
              << r.ledger.qft_invocations << " (expected " << r.expected_qft << ")";
    if (r.shot_slope) {
        std::cerr << ", shot slope " << format_double(*r.shot_slope);
    }
    std::cerr << "\n";
    const double worst = std::max(r.max_divergence, r.merged_divergence);
    if (worst > cfg.circuit.divergence_limit) {
        std::cerr << "FAIL: circuit and spectral propagators diverged\n";
        return kFailure;
    }
    if (r.ledger.diagonal_invocations != r.expected_diagonals || r.ledger.qft_invocations != r.expected_qft) {
        std::cerr << "FAIL: gate ledger does not match the closed-form counts\n";
        return kFailure;
    }
    return kOk;
}

int cmd_commutators(const RunConfig &cfg) {
    CsvTable table({"word", "closed_form_error", "exponent"});
    for (const auto &row : run_commutator_check(cfg)) {
        table.add_row({row.word, row.closed_form_error ? format_double(*row.closed_form_error) : "",
                       format_double(row.exponent)});
    }
    emit(cfg, "commutator-check", "commutators.csv", table);
    return kOk;
}

struct EstimateFlags {
    std::optional<double> eps, hbar, L, t, m_obs, delta, v_max;
    std::optional<int> d, p;
    std::optional<double> ell;
    std::string target = "wavefunction";
    std::string cost_model = "linear";
    std::string sweep;
    std::string preset;
    std::string out;
};

std::vector<double> parse_values(const std::string &list) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw ConfigError("--sweep: cannot parse value '" + item + "'");
        }
    }
    if (values.empty()) {
        throw ConfigError("--sweep needs at least one value");
    }
    return values;
}

int cmd_estimate(const EstimateFlags &f) {
    EstimateRequest req;
    if (f.preset == "scattering") {
        req = scattering_preset();
    } else if (!f.preset.empty()) {
        throw ConfigError("unknown preset '" + f.preset + "' (scattering)");
    }
    std::optional<SweepAxis> axis;
    std::vector<double> values;
    if (!f.sweep.empty()) {
        const auto eq = f.sweep.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--sweep expects axis=v1,v2,...");
        }
        try {
            axis = parse_sweep_axis(f.sweep.substr(0, eq));
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
        values = parse_values(f.sweep.substr(eq + 1));
    }
    if (!f.hbar && axis != SweepAxis::hbar) {
        throw ConfigError("--hbar is required");
    }
    if (!f.eps && axis != SweepAxis::eps) {
        throw ConfigError("--eps is required");
    }
    if (f.eps) req.eps = *f.eps;
    if (f.hbar) req.hbar = *f.hbar;
    if (f.L) req.L = *f.L;
    if (f.t) req.t = *f.t;
    if (f.d) req.d = *f.d;
    if (f.p) req.p = *f.p;
    if (f.ell) req.ell = *f.ell;
    req.m_obs = f.m_obs;
    req.delta = f.delta;
    req.v_max = f.v_max;
    if (f.target == "wavefunction") {
        req.target = Target::wavefunction;
    } else if (f.target == "observable") {
        req.target = Target::observable;
    } else {
        throw ConfigError("--target must be wavefunction or observable");
    }
    std::vector<SweepRow> rows;
    try {
        req.cost_model = CostModel::parse(f.cost_model);
        if (!axis) {
            axis = SweepAxis::eps;
            values = {req.eps};
        }
        rows = sweep(req, *axis, values);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    const bool with_measurement = req.m_obs.has_value() || req.delta.has_value();
    std::vector<std::string> header{to_string(*axis), "dt", "dx", "n", "m", "J", "gates", "queries"};
    if (with_measurement) {
        header.emplace_back("gates_with_measurement");
    }
    CsvTable table(header);
    for (const auto &row : rows) {
        std::vector<std::string> cells{format_double(row.value),
                                       format_double(row.report.dt),
                                       format_double(row.report.dx),
                                       std::to_string(row.report.n_steps),
                                       std::to_string(row.report.m_qubits),
                                       format_double(row.report.J_of_m),
                                       format_double(row.report.n_gates),
                                       format_double(row.report.n_queries)};
        if (with_measurement) {
            EstimateRequest r = req;
            switch (*axis) {
            case SweepAxis::eps: r.eps = row.value; break;
            case SweepAxis::hbar: r.hbar = row.value; break;
            case SweepAxis::t: r.t = row.value; break;
            case SweepAxis::d: r.d = static_cast<int>(row.value); break;
            case SweepAxis::p: r.p = static_cast<int>(row.value); break;
            case SweepAxis::ell: r.ell = row.value; break;
            }
            try {
                cells.push_back(format_double(measurement_overhead(r)));
            } catch (const std::invalid_argument &e) {
                throw ConfigError(e.what());
            }
        }
        table.add_row(std::move(cells));
        for (const auto &note : row.report.notes) {
            std::cerr << to_string(*axis) << "=" << format_double(row.value) << ": " << note << "\n";
        }
    }
    if (!f.out.empty()) {
        write_text(f.out, table.str());
    }
    std::cout << table.str();
    return kOk;
}

void report_config_error(const std::string &message) {
    std::cerr << json{{"error", "config"}, {"message", message}}.dump() << "\n";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"semiclassical Schroedinger workbench"};
    app.set_version_flag("--version", code_version());
    app.require_subcommand(1);

    Overrides run;
    auto *simulate_cmd = app.add_subcommand("simulate", "run an evolution and write observables, dumps, manifest");
    auto *convergence_cmd = app.add_subcommand("convergence", "temporal convergence study against a reference");
    auto *robust_cmd = app.add_subcommand("observable-robustness", "observable vs wavefunction errors over hbar");
    auto *circuit_cmd = app.add_subcommand("circuit-verify", "gate-level emulation vs spectral propagator");
    auto *comm_cmd = app.add_subcommand("commutator-check", "closed forms and hbar scaling of commutators");
    for (auto *cmd : {simulate_cmd, convergence_cmd, robust_cmd, circuit_cmd, comm_cmd}) {
        add_run_flags(cmd, run);
    }

    EstimateFlags est;
    auto *estimate_cmd = app.add_subcommand("estimate", "qubit, gate and query estimates");
    estimate_cmd->add_option("--eps", est.eps, "tolerance");
    estimate_cmd->add_option("--hbar", est.hbar, "semiclassical parameter");
    estimate_cmd->add_option("--L", est.L, "domain edge length");
    estimate_cmd->add_option("--t", est.t, "final time");
    estimate_cmd->add_option("--d", est.d, "dimension");
    estimate_cmd->add_option("--p", est.p, "splitting order");
    estimate_cmd->add_option("--ell", est.ell, "smoothness");
    estimate_cmd->add_option("--target", est.target, "wavefunction | observable");
    estimate_cmd->add_option("--cost-model", est.cost_model, "full | linear | poly:a | oracle");
    estimate_cmd->add_option("--M-obs", est.m_obs, "number of observables");
    estimate_cmd->add_option("--delta", est.delta, "failure probability");
    estimate_cmd->add_option("--vmax", est.v_max, "smoothness prefactor (eps -> eps / vmax)");
    estimate_cmd->add_option("--sweep", est.sweep, "axis=v1,v2,... with axis in eps, hbar, t, d, p, ell");
    estimate_cmd->add_option("--preset", est.preset, "scattering");
    estimate_cmd->add_option("--out", est.out, "also write the CSV to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        report_config_error(e.what());
        return kConfigError;
    }

    try {
        if (estimate_cmd->parsed()) {
            return cmd_estimate(est);
        }
        const RunConfig cfg = resolve_config(run);
        if (simulate_cmd->parsed()) return cmd_simulate(cfg);
        if (convergence_cmd->parsed()) return cmd_convergence(cfg);
        if (robust_cmd->parsed()) return cmd_robustness(cfg);
        if (circuit_cmd->parsed()) return cmd_circuit(cfg);
        if (comm_cmd->parsed()) return cmd_commutators(cfg);
    } catch (const ConfigError &e) {
        report_config_error(e.what());
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
