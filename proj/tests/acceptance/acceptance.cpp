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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "semicl/commutators.hpp"
#include "semicl/estimator.hpp"
#include "semicl/harness/cache.hpp"
#include "semicl/harness/config.hpp"
#include "semicl/harness/experiments.hpp"
#include "semicl/harness/io.hpp"
#include "semicl/observables.hpp"
#include "semicl/propagator.hpp"

using namespace semicl;
using namespace semicl::harness;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
        }
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += what + (ok ? "" : " [x]");
    }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ComplexVector random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    ComplexVector v(n);
    for (auto &z : v) {
        z = {g(rng), g(rng)};
    }
    return v;
}

// 1. DFT round trip and Parseval for m <= 16, dense-oracle agreement, plane waves.
Outcome spectral() {
    Outcome o;
    double round_trip = 0.0, parseval = 0.0, oracle_err = 0.0;
    for (int m = 1; m <= 16; ++m) {
        const ComplexVector v = random_vector(std::size_t{1} << m, static_cast<std::uint64_t>(m));
        const ComplexVector hat = forward_dft(v);
        const ComplexVector back = inverse_dft(hat);
        const double n0 = l2_norm(v, 1.0);
        round_trip = std::max(round_trip, l2_distance(v, back, 1.0) / n0);
        parseval = std::max(parseval, std::abs(l2_norm(hat, 1.0) - n0) / n0);
        if (m <= 10) {
            const ComplexVector ref = oracle::dense_dft(v, -1);
            oracle_err = std::max(oracle_err, l2_distance(hat, ref, 1.0) / n0);
        }
    }
    o.require(round_trip < 1e-13, "round trip " + sci(round_trip));
    o.require(parseval < 1e-13, "Parseval " + sci(parseval));
    o.require(oracle_err < 1e-13, "dense DFT " + sci(oracle_err));

    const Grid1D g(4.0, 10, -2.0);
    double deriv = 0.0, kinetic = 0.0;
    for (int n : {1, 7, -40, 200, -511}) {
        const double mu = 2 * std::numbers::pi * n / g.length();
        ComplexVector v(g.points());
        for (std::size_t j = 0; j < v.size(); ++j) {
            v[j] = std::polar(1.0, mu * g.node(j));
        }
        const ComplexVector d = spatial_derivative(v, g, 1);
        const double hbar = 0.01, tau = 0.3;
        const WaveFunction k = apply_kinetic_phase(WaveFunction(g, hbar, v), tau);
        const Complex phase = std::polar(1.0, -0.5 * tau * hbar * mu * mu);
        for (std::size_t j = 0; j < v.size(); ++j) {
            deriv = std::max(deriv, std::abs(d[j] - Complex(0.0, mu) * v[j]) / std::abs(mu));
            kinetic = std::max(kinetic, std::abs(k.values()[j] - phase * v[j]));
        }
    }
    o.require(deriv < 1e-12, "plane-wave derivative " + sci(deriv));
    o.require(kinetic < 1e-12, "plane-wave kinetic phase " + sci(kinetic));
    return o;
}

// 2. Norm drift over 1000 Strang steps on the test problem.
Outcome unitarity() {
    Outcome o;
    const Grid1D g = test_problem_grid(12);
    const TestProblem p = test_problem(0.01, g);
    double drift = 0.0;
    EvolveOptions opts;
    opts.observe_every = 1;
    evolve(
        p.state, EvolutionSpec{builtin_scheme("strang_kvk"), 0.01, 1000, p.potential},
        [&](std::size_t, double, const WaveFunction &psi) { drift = std::max(drift, std::abs(psi.norm() - 1.0)); },
        opts);
    o.require(drift < 1e-12, "max |norm - 1| " + sci(drift));
    return o;
}

// 3. Free Gaussian against the closed-form dispersive packet.
Outcome free_evolution() {
    Outcome o;
    const Grid1D g(4.0, 12, -2.0);
    const double hbar = 0.01, gamma = 0.05, k0 = 0.2, center = 0.0, t = 1.0;
    const WaveFunction psi0 = gaussian_packet(center, gamma, k0, hbar, g);
    ComplexVector exact0(g.points()), exact(g.points());
    for (std::size_t j = 0; j < g.points(); ++j) {
        exact0[j] = oracle::free_gaussian(g.node(j), 0.0, center, gamma, k0, hbar);
        exact[j] = oracle::free_gaussian(g.node(j), t, center, gamma, k0, hbar);
    }
    const double scale = 1.0 / oracle::l2(exact0, g.dx());
    for (auto &z : exact) {
        z *= scale;
    }
    for (auto &z : exact0) {
        z *= scale;
    }
    const double initial = oracle::l2_diff(ComplexVector(psi0.values().begin(), psi0.values().end()), exact0, g.dx());
    const WaveFunction out = evolve(psi0, EvolutionSpec{builtin_scheme("strang_kvk"), 0.1, 10, zero_potential()});
    const double err = oracle::l2_diff(ComplexVector(out.values().begin(), out.values().end()), exact, g.dx());
    o.require(initial < 1e-12, "initial mismatch " + sci(initial));
    o.require(err < 1e-8, "l2 error at t=1 " + sci(err));
    return o;
}

// 4. Fitted temporal orders against a resolved reference.
Outcome temporal_order(const ReferenceCache &cache) {
    Outcome o;
    RunConfig cfg = parse_config(json{{"problem", {{"hbar", 0.01}}},
                                      {"discretization", {{"m", 11}, {"dt", 0.0025}, {"t_final", 1.0}}}});
    cfg.convergence.schemes = {"lie", "strang_kvk", "yoshida4"};
    cfg.convergence.dts = {0.02, 0.01, 0.005, 0.0025};
    cfg.convergence.reference = ReferencePolicy{"yoshida4", 2.5e-5, 0};
    const double dx = 4.0 / 2048.0;
    o.require(dx <= 0.01 / 4.0, "dx " + sci(dx) + " <= hbar/4");
    const ConvergenceResult r = run_convergence(cfg, cache);
    const std::vector<std::pair<std::string, double>> expected{{"lie", 1.0}, {"strang_kvk", 2.0}, {"yoshida4", 4.0}};
    for (const auto &[name, order] : expected) {
        const double fitted = r.fitted_order.at(name);
        o.require(std::abs(fitted - order) <= 0.3, name + " order " + sci(fitted));
    }
    return o;
}

// 5. Density and current errors stay bounded as hbar shrinks at fixed dt.
Outcome observable_robustness(const ReferenceCache &cache) {
    Outcome o;
    RunConfig cfg = parse_config(json{{"discretization", {{"m", 14}, {"dt", 0.05}, {"t_final", 5.0}}}});
    cfg.robustness.hbars = {4e-3, 2e-3, 1e-3};
    cfg.robustness.growth_factor = 2.0;
    cfg.robustness.wave_threshold = 0.1;
    const RobustnessResult r = run_observable_robustness(cfg, cache);
    for (const auto &row : r.rows) {
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("hbar ") + sci(row.hbar) + ": wave " +
                    sci(row.errors.wave) + " n " + sci(row.errors.density) + " J " + sci(row.errors.current);
    }
    const double n_growth = r.rows.back().errors.density / r.rows.front().errors.density;
    o.require(r.density_growth <= 2.0, "density growth " + sci(r.density_growth) + " (end to end " + sci(n_growth) + ")");
    o.require(r.current_growth <= 2.0, "current growth " + sci(r.current_growth));
    o.require(r.rows.back().errors.wave > 0.1, "smallest-hbar wave error " + sci(r.rows.back().errors.wave));
    return o;
}

// Independent closed forms on a uniform grid, built from the dense derivative oracle.
struct ClosedForms {
    oracle::CV ab, bba, aab;
};

ClosedForms dense_closed_forms(const WaveFunction &psi, const PotentialSpec &V) {
    const oracle::CV v(psi.values().begin(), psi.values().end());
    const double L = psi.grid().length(), hbar = psi.hbar();
    const oracle::CV d1 = oracle::dense_derivative(v, L, 1);
    const oracle::CV d2 = oracle::dense_derivative(v, L, 2);
    ClosedForms c;
    c.ab.resize(v.size());
    c.bba.resize(v.size());
    c.aab.resize(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = psi.grid().node(j);
        c.ab[j] = -(0.5 * V.d2(x) * v[j] + V.d1(x) * d1[j]);
        c.bba[j] = -V.d1(x) * V.d1(x) * v[j] / hbar;
        c.aab[j] = hbar * (0.25 * V.derivative(4, x) * v[j] + V.derivative(3, x) * d1[j] + V.d2(x) * d2[j]);
    }
    return c;
}

// 6. Matrix-free commutators against closed forms; harmonic vanishing.
Outcome commutator_closed_forms() {
    Outcome o;
    const double hbar = 0.01;
    const Grid1D g(4.0, resolving_qubits(4.0, hbar), -2.0);
    const WaveFunction psi = wkb_state(test_wkb(hbar), g);
    const double dx = g.dx();
    // A potential with nonzero third and fourth derivatives, besides the harmonic one.
    const PotentialSpec quartic = polynomial_potential({0.0, 0.3, 0.5, -0.2, 0.25});
    for (const PotentialSpec &V : {harmonic_potential(), quartic}) {
        const ClosedForms c = dense_closed_forms(psi, V);
        const std::vector<std::pair<std::string, const oracle::CV *>> words{{"AB", &c.ab}, {"BBA", &c.bba}, {"AAB", &c.aab}};
        for (const auto &[w, expected] : words) {
            const ComplexVector direct = apply_commutator(CommutatorWord::parse(w), psi, V);
            const double err = oracle::l2_diff(direct, *expected, dx) / oracle::l2(*expected, dx);
            o.require(err < 1e-8, V.name + " " + w + " " + sci(err));
        }
    }
    // Harmonic V: the residual of the nested difference, relative to the largest word it cancels.
    const PotentialSpec V = harmonic_potential();
    const Grid1D g8(4.0, 8, -2.0);
    const WaveFunction coarse = wkb_state(test_wkb(hbar), g8);
    const auto word = [&](const std::string &letters) {
        ComplexVector w(coarse.values().begin(), coarse.values().end());
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            w = *it == 'A' ? apply_A(w, g8, hbar) : apply_B(w, g8, hbar, V);
        }
        return w;
    };
    for (const char *w : {"BBBA", "AAAB"}) {
        const ComplexVector r = apply_commutator(CommutatorWord::parse(w), coarse, V);
        const double residual = l2_norm(r, g8.dx()) / l2_norm(word(w), g8.dx());
        o.require(residual < 1e-10, std::string(w) + " residual " + sci(residual));
    }
    return o;
}

// 7. hbar scaling exponents on the WKB family.
Outcome commutator_scaling() {
    Outcome o;
    RunConfig cfg = parse_config(json::object());
    cfg.commutators.words = {"AB", "BBA", "AAB"};
    cfg.commutators.hbars = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    cfg.commutators.m = 0;
    for (const auto &row : run_commutator_check(cfg)) {
        o.require(std::abs(row.exponent + 1.0) <= 0.2, row.word + " exponent " + sci(row.exponent));
    }
    return o;
}

RunConfig circuit_config() {
    return parse_config(json{{"problem", {{"hbar", 0.003}}},
                             {"discretization", {{"m", 10}, {"dt", 0.05}, {"steps", 72}}},
                             {"scheme", "strang_kvk"},
                             {"seed", 7},
                             {"circuit", {{"shots", {400, 4000, 40000}}, {"repeats", 5}, {"cost_model", "full"}}}});
}

// 8. Gate-level Trotter steps against the spectral propagator, and the ledger.
Outcome circuit_equivalence(const CircuitResult &r) {
    Outcome o;
    const int m = 10;
    const std::uint64_t n = 72;
    const std::uint64_t qft = static_cast<std::uint64_t>(m * (m + 1) / 2 + m / 2);
    const std::uint64_t diag = (std::uint64_t{1} << (m + 1)) - 3;
    o.require(r.max_divergence < 1e-12, "per-step divergence " + sci(r.max_divergence));
    o.require(r.merged_divergence < 1e-12, "merged divergence " + sci(r.merged_divergence));
    o.require(r.ledger.diagonal_invocations == 2 * n + 1,
              "diagonal blocks " + std::to_string(r.ledger.diagonal_invocations) + " = 2n+1");
    o.require(r.ledger.qft_invocations == 2 * (n + 1), "QFT invocations " + std::to_string(r.ledger.qft_invocations));
    o.require(r.ledger.diagonal_gates == (2 * n + 1) * diag, "diagonal gates " + std::to_string(r.ledger.diagonal_gates));
    o.require(r.ledger.single_qubit + r.ledger.two_qubit == r.ledger.qft_invocations * qft,
              "QFT gates " + std::to_string(r.ledger.single_qubit + r.ledger.two_qubit));
    return o;
}

// 9. Histogram error slope over shot counts, and reproducibility.
Outcome shot_statistics(const CircuitResult &r, const CircuitResult &again) {
    Outcome o;
    std::vector<double> x, y;
    for (const auto &row : r.shots) {
        x.push_back(std::log(static_cast<double>(row.shots)));
        y.push_back(std::log(row.mean_sup_error));
    }
    // Least-squares slope computed here, independent of the library fit.
    const double mx = (x[0] + x[1] + x[2]) / 3.0, my = (y[0] + y[1] + y[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxy / sxx;
    o.require(std::abs(slope + 0.5) <= 0.15, "slope " + sci(slope));
    o.require(r.shot_slope && std::abs(*r.shot_slope - slope) < 1e-12, "library slope agrees");
    o.require(r.last_histogram.counts == again.last_histogram.counts, "same seed, same histogram");
    return o;
}

// 10. Estimator formulas evaluated independently.
Outcome estimator_fidelity() {
    Outcome o;
    double worst = 0.0;
    for (int p : {1, 2, 4}) {
        for (Target target : {Target::wavefunction, Target::observable}) {
            EstimateRequest r;
            r.eps = 0.003;
            r.hbar = 0.02;
            r.L = 2.0;
            r.t = 3.0;
            r.d = 2;
            r.p = p;
            r.ell = 2.0;
            r.target = target;
            r.cost_model = CostModel{CostModelKind::full};
            const double Ld = std::pow(r.L, r.d / 2.0);
            const double dt = target == Target::wavefunction ? std::pow(r.hbar * r.eps / (Ld * r.t), 1.0 / p)
                                                             : std::sqrt(r.eps / (Ld * r.t));
            const double dx = r.hbar * r.L * std::pow(r.eps * dt / (Ld * r.t), 1.0 / r.ell);
            const int m = r.d * static_cast<int>(std::ceil(std::log2(r.L / dx)));
            const double J = std::ldexp(1.0, m + 1) - 3.0;
            const double kappa = (target == Target::observable || p <= 2) ? 1.0 : p;
            const double gates = 2.0 * kappa * J * r.t / dt;
            const EstimateReport e = estimate(r);
            worst = std::max({worst, rel(e.dt, dt), rel(e.dx, dx), rel(e.n_gates, gates), rel(e.n_queries, gates / (2 * J))});
            if (e.m_qubits != m || e.n_steps != static_cast<std::uint64_t>(std::ceil(r.t / dt))) {
                o.require(false, "qubits/steps mismatch at p=" + std::to_string(p));
            }
            if (target == Target::observable) {
                r.m_obs = 2.0;
                r.delta = 0.05;
                const double meas = 2.0 * J * std::sqrt(2.0) * std::pow(r.L, r.d / 4.0) * std::pow(r.t, 1.5) *
                                    std::pow(r.eps, -1.5) * std::log(1.0 / 0.05);
                worst = std::max(worst, rel(measurement_overhead(r), meas));
            }
        }
    }
    o.require(worst < 1e-12, "formula instances " + sci(worst));

    // Exponents from central differences in log space (oracle model keeps J fixed).
    const auto slope = [](EstimateRequest r) {
        r.cost_model = CostModel{CostModelKind::oracle};
        const double h = 1e-4, e0 = r.eps;
        r.eps = e0 * std::exp(h);
        const double up = std::log(estimate(r).n_gates);
        r.eps = e0 * std::exp(-h);
        const double down = std::log(estimate(r).n_gates);
        return (up - down) / (2 * h);
    };
    double exp_err = 0.0;
    for (int p : {1, 2, 4}) {
        EstimateRequest r;
        r.eps = 0.01;
        r.hbar = 0.01;
        r.p = p;
        exp_err = std::max(exp_err, std::abs(slope(r) + 1.0 / p));
    }
    EstimateRequest obs;
    obs.eps = 0.01;
    obs.hbar = 0.001;
    obs.target = Target::observable;
    exp_err = std::max(exp_err, std::abs(slope(obs) + 0.5));
    o.require(exp_err < 1e-9, "eps exponents " + sci(exp_err));

    EstimateRequest q;
    q.eps = 0.01;
    q.hbar = 0.001;
    q.target = Target::observable;
    bool linear = true;
    const int m1 = qubit_count(q).m;
    for (int d = 2; d <= 6; ++d) {
        q.d = d;
        linear = linear && qubit_count(q).m == d * m1;
    }
    o.require(linear, "qubits linear in d");
    return o;
}

// 11. Byte-identical reruns and lossless dumps.
Outcome determinism() {
    Outcome o;
    const auto root = std::filesystem::temp_directory_path() / "semicl_acceptance_determinism";
    std::filesystem::remove_all(root);
    const auto run = [&](const std::string &name) {
        json doc{{"problem", {{"hbar", 0.01}}},
                 {"discretization", {{"m", 10}, {"dt", 0.01}, {"steps", 40}}},
                 {"seed", 11},
                 {"outputs", {{"directory", (root / name).string()}, {"cadence", 10}, {"formats", {"csv", "dump"}}}}};
        return simulate(parse_config(doc));
    };
    const SimulateResult a = run("a");
    run("b");
    bool same = true;
    for (const auto &entry : std::filesystem::directory_iterator(root / "a")) {
        const auto name = entry.path().filename();
        if (name == "manifest.json") {
            continue;
        }
        same = same && read_text(root / "a" / name) == read_text(root / "b" / name);
    }
    o.require(same, "CSV and dumps byte-identical");
    const WaveDump d = read_dump(root / "a" / "psi_40.scwf");
    bool lossless = d.values.size() == a.final_state.size();
    for (std::size_t j = 0; lossless && j < d.values.size(); ++j) {
        lossless = d.values[j] == a.final_state.values()[j];
    }
    o.require(lossless, "dump round trip bit-exact");
    return o;
}

} // namespace

int main() {
    const ReferenceCache cache = ReferenceCache::from_environment();
    int failures = 0;
    const auto report = [&](int id, const char *name, double limit_s, const std::function<Outcome()> &body) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (limit_s > 0.0 && seconds > limit_s) {
            o.require(false, "runtime limit " + sci(limit_s) + " s");
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %d (%s) [%.1f s]: %s\n", o.pass ? "PASS" : "FAIL", id, name, seconds,
                    o.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "spectral correctness", 10.0, spectral);
    report(2, "unitarity", 30.0, unitarity);
    report(3, "free evolution", 0.0, free_evolution);
    report(4, "temporal order", 600.0, [&] { return temporal_order(cache); });
    report(5, "observable robustness", 1200.0, [&] { return observable_robustness(cache); });
    report(6, "commutator closed forms", 30.0, commutator_closed_forms);
    report(7, "hbar scaling", 0.0, commutator_scaling);
    CircuitResult circuit, again;
    report(8, "circuit equivalence", 0.0, [&] {
        circuit = run_circuit_verify(circuit_config());
        return circuit_equivalence(circuit);
    });
    report(9, "shot statistics", 0.0, [&] {
        again = run_circuit_verify(circuit_config());
        return shot_statistics(circuit, again);
    });
    report(10, "estimator fidelity", 1.0, estimator_fidelity);
    report(11, "determinism and formats", 0.0, determinism);

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
